//! Exact and numeric computations around area-preserving mapping classes of
//! a closed oriented surface of genus `g >= 2`.
//!
//! The crate has three layers:
//!
//! * exact integer/rational algebra: the symplectic intersection form on
//!   first homology, exterior powers, Poincaré duality, Dehn-twist
//!   transvections and relation checks ([`homology`], [`mapping_class`]),
//!   Johnson homomorphism values on point-push words and crossed-homomorphism
//!   bookkeeping ([`johnson`]);
//! * a symbolic calculus of cycles modulo zero-area boundaries, with
//!   integer-lattice reduction that certifies Hamiltonian words or reports
//!   flux residuals ([`sh1`]);
//! * floating-point engines: swept-area flux of shear maps on flat annuli
//!   ([`annulus`]) and upper-half-plane angle/area primitives
//!   ([`hyperbolic`]).
//!
//! All exact types use arbitrary-precision integers and rationals, so long
//! twist words never overflow and identities are checked with equality
//! rather than tolerances.

pub mod annulus;
pub mod homology;
pub mod hyperbolic;
pub mod johnson;
pub mod mapping_class;
pub mod quadrature;
pub mod sh1;

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Shorthand for building an arbitrary-precision integer.
pub fn int(v: i64) -> BigInt {
    BigInt::from(v)
}

/// Shorthand for building an exact rational.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}
