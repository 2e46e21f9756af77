//! Integer symplectic linear algebra for the first homology of a closed
//! oriented surface, its second and third exterior powers, Poincaré duality
//! and the symplectic contraction.
//!
//! Coordinates are fixed once and for all: `H_1` is `Z^{2g}` with ordered
//! basis `x_1, ..., x_g, y_1, ..., y_g` and intersection pairing
//! `i(x_k, y_k) = 1`, all other basis pairings zero.  Cohomology
//! functionals are written in the evaluation-dual basis
//! `alpha_1, ..., alpha_g, beta_1, ..., beta_g`, so evaluation is the dot
//! product of coefficient vectors.
//!
//! Duality sign convention: `D^{-1}(x_j) = beta_j` and
//! `D^{-1}(y_j) = -alpha_j`, equivalently `D^{-1}(a)(b) = i(a, b)`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::int;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(usize),
    #[error("genus mismatch: {0} vs {1}")]
    GenusMismatch(usize, usize),
    #[error("coefficient vector has length {found}, expected {expected}")]
    BadLength { expected: usize, found: usize },
}

/// Genus of the surface; at least 2 everywhere in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Genus(usize);

impl Genus {
    pub fn new(g: usize) -> Result<Self, HomologyError> {
        if g < 2 {
            return Err(HomologyError::GenusTooSmall(g));
        }
        Ok(Genus(g))
    }

    pub fn get(self) -> usize {
        self.0
    }

    /// Rank of first homology, `2g`.
    pub fn dim(self) -> usize {
        2 * self.0
    }
}

impl fmt::Display for Genus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Intersection number of two basis vectors, indexed `0..2g`.
fn basis_pairing(g: usize, a: usize, b: usize) -> i64 {
    if b == a + g {
        1
    } else if a == b + g {
        -1
    } else {
        0
    }
}

/// Integer homology class in the fixed symplectic basis.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct HomologyClass {
    genus: Genus,
    coeffs: Vec<BigInt>,
}

impl fmt::Debug for HomologyClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H1{:?}", self.coeffs)
    }
}

impl HomologyClass {
    pub fn zero(genus: Genus) -> Self {
        HomologyClass {
            genus,
            coeffs: vec![BigInt::zero(); genus.dim()],
        }
    }

    /// Basis vector `x_i`, `1 <= i <= g`.
    pub fn x(i: usize, genus: Genus) -> Self {
        assert!(i >= 1 && i <= genus.get(), "x index out of range");
        Self::basis(i - 1, genus)
    }

    /// Basis vector `y_i`, `1 <= i <= g`.
    pub fn y(i: usize, genus: Genus) -> Self {
        assert!(i >= 1 && i <= genus.get(), "y index out of range");
        Self::basis(genus.get() + i - 1, genus)
    }

    /// Basis vector by flat index `0..2g`.
    pub fn basis(k: usize, genus: Genus) -> Self {
        assert!(k < genus.dim(), "basis index out of range");
        let mut coeffs = vec![BigInt::zero(); genus.dim()];
        coeffs[k] = BigInt::one();
        HomologyClass { genus, coeffs }
    }

    pub fn from_coeffs(genus: Genus, coeffs: Vec<BigInt>) -> Result<Self, HomologyError> {
        if coeffs.len() != genus.dim() {
            return Err(HomologyError::BadLength {
                expected: genus.dim(),
                found: coeffs.len(),
            });
        }
        Ok(HomologyClass { genus, coeffs })
    }

    pub fn from_i64(genus: Genus, coeffs: &[i64]) -> Result<Self, HomologyError> {
        Self::from_coeffs(genus, coeffs.iter().map(|&v| int(v)).collect())
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigInt {
        &self.coeffs[k]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    /// A class is primitive when the gcd of its coefficients is 0 or 1.
    pub fn is_primitive(&self) -> bool {
        let mut d = BigInt::zero();
        for c in &self.coeffs {
            d = d.gcd(c);
        }
        d.is_zero() || d.is_one()
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        HomologyClass {
            genus: self.genus,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }

    /// Algebraic intersection number `i(self, other)`.
    ///
    /// ```
    /// use fluxhom::homology::{Genus, HomologyClass};
    ///
    /// let g = Genus::new(2).unwrap();
    /// let x1 = HomologyClass::x(1, g);
    /// let y1 = HomologyClass::y(1, g);
    /// assert_eq!(x1.intersection(&y1).unwrap(), 1.into());
    /// ```
    pub fn intersection(&self, other: &Self) -> Result<BigInt, HomologyError> {
        if self.genus != other.genus {
            return Err(HomologyError::GenusMismatch(
                self.genus.get(),
                other.genus.get(),
            ));
        }
        let g = self.genus.get();
        let mut acc = BigInt::zero();
        for k in 0..g {
            acc += &self.coeffs[k] * &other.coeffs[g + k];
            acc -= &self.coeffs[g + k] * &other.coeffs[k];
        }
        Ok(acc)
    }
}

impl Add for &HomologyClass {
    type Output = HomologyClass;
    fn add(self, rhs: &HomologyClass) -> HomologyClass {
        assert_eq!(self.genus, rhs.genus, "genus mismatch");
        HomologyClass {
            genus: self.genus,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &HomologyClass {
    type Output = HomologyClass;
    fn sub(self, rhs: &HomologyClass) -> HomologyClass {
        assert_eq!(self.genus, rhs.genus, "genus mismatch");
        HomologyClass {
            genus: self.genus,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &HomologyClass {
    type Output = HomologyClass;
    fn neg(self) -> HomologyClass {
        HomologyClass {
            genus: self.genus,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// Homology class with rational coefficients; image of Poincaré duality
/// applied to an arbitrary functional.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalClass {
    genus: Genus,
    coeffs: Vec<BigRational>,
}

impl RationalClass {
    pub fn from_coeffs(genus: Genus, coeffs: Vec<BigRational>) -> Result<Self, HomologyError> {
        if coeffs.len() != genus.dim() {
            return Err(HomologyError::BadLength {
                expected: genus.dim(),
                found: coeffs.len(),
            });
        }
        Ok(RationalClass { genus, coeffs })
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn scaled(&self, k: &BigRational) -> Self {
        RationalClass {
            genus: self.genus,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }
}

impl From<&HomologyClass> for RationalClass {
    fn from(c: &HomologyClass) -> Self {
        RationalClass {
            genus: c.genus,
            coeffs: c
                .coeffs
                .iter()
                .map(|v| BigRational::from(v.clone()))
                .collect(),
        }
    }
}

/// Element of `Hom(H_1, Q)` in the evaluation-dual basis `alpha_i, beta_i`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CohomologyFunctional {
    genus: Genus,
    coeffs: Vec<BigRational>,
}

impl CohomologyFunctional {
    pub fn zero(genus: Genus) -> Self {
        CohomologyFunctional {
            genus,
            coeffs: vec![BigRational::zero(); genus.dim()],
        }
    }

    /// Dual basis vector `alpha_i` (evaluates to 1 on `x_i`), `1 <= i <= g`.
    pub fn alpha(i: usize, genus: Genus) -> Self {
        assert!(i >= 1 && i <= genus.get(), "alpha index out of range");
        let mut f = Self::zero(genus);
        f.coeffs[i - 1] = BigRational::one();
        f
    }

    /// Dual basis vector `beta_i` (evaluates to 1 on `y_i`), `1 <= i <= g`.
    pub fn beta(i: usize, genus: Genus) -> Self {
        assert!(i >= 1 && i <= genus.get(), "beta index out of range");
        let mut f = Self::zero(genus);
        f.coeffs[genus.get() + i - 1] = BigRational::one();
        f
    }

    pub fn from_coeffs(genus: Genus, coeffs: Vec<BigRational>) -> Result<Self, HomologyError> {
        if coeffs.len() != genus.dim() {
            return Err(HomologyError::BadLength {
                expected: genus.dim(),
                found: coeffs.len(),
            });
        }
        Ok(CohomologyFunctional { genus, coeffs })
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn evaluate(&self, c: &HomologyClass) -> BigRational {
        assert_eq!(self.genus, c.genus, "genus mismatch");
        self.coeffs
            .iter()
            .zip(&c.coeffs)
            .map(|(a, b)| a * BigRational::from(b.clone()))
            .sum()
    }

    pub fn evaluate_rational(&self, c: &RationalClass) -> BigRational {
        assert_eq!(self.genus, c.genus, "genus mismatch");
        self.coeffs.iter().zip(&c.coeffs).map(|(a, b)| a * b).sum()
    }

    pub fn scaled(&self, k: &BigRational) -> Self {
        CohomologyFunctional {
            genus: self.genus,
            coeffs: self.coeffs.iter().map(|c| c * k).collect(),
        }
    }
}

impl Add for &CohomologyFunctional {
    type Output = CohomologyFunctional;
    fn add(self, rhs: &CohomologyFunctional) -> CohomologyFunctional {
        assert_eq!(self.genus, rhs.genus, "genus mismatch");
        CohomologyFunctional {
            genus: self.genus,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }
}

impl Sub for &CohomologyFunctional {
    type Output = CohomologyFunctional;
    fn sub(self, rhs: &CohomologyFunctional) -> CohomologyFunctional {
        assert_eq!(self.genus, rhs.genus, "genus mismatch");
        CohomologyFunctional {
            genus: self.genus,
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }
}

impl Neg for &CohomologyFunctional {
    type Output = CohomologyFunctional;
    fn neg(self) -> CohomologyFunctional {
        CohomologyFunctional {
            genus: self.genus,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

/// `D^{-1}(c)`, the functional `b -> i(c, b)`.
pub fn poincare_dual_inv(c: &HomologyClass) -> CohomologyFunctional {
    let g = c.genus.get();
    let mut coeffs = vec![BigRational::zero(); 2 * g];
    for k in 0..g {
        // i(c, x_k) = -c_{y_k}, i(c, y_k) = c_{x_k}
        coeffs[k] = BigRational::from(-&c.coeffs[g + k]);
        coeffs[g + k] = BigRational::from(c.coeffs[k].clone());
    }
    CohomologyFunctional {
        genus: c.genus,
        coeffs,
    }
}

/// `D(f)`, the two-sided inverse of [`poincare_dual_inv`]:
/// `D(beta_j) = x_j`, `D(alpha_j) = -y_j`.
pub fn poincare_dual(f: &CohomologyFunctional) -> RationalClass {
    let g = f.genus.get();
    let mut coeffs = vec![BigRational::zero(); 2 * g];
    for k in 0..g {
        coeffs[k] = f.coeffs[g + k].clone();
        coeffs[g + k] = -&f.coeffs[k];
    }
    RationalClass {
        genus: f.genus,
        coeffs,
    }
}

/// Sort a triple of distinct indices, returning the permutation sign.
/// `None` when two indices coincide.
fn sort3(a: usize, b: usize, c: usize) -> Option<((usize, usize, usize), i64)> {
    if a == b || b == c || a == c {
        return None;
    }
    let mut v = [a, b, c];
    let mut sign = 1i64;
    // three comparisons sort a triple
    if v[0] > v[1] {
        v.swap(0, 1);
        sign = -sign;
    }
    if v[1] > v[2] {
        v.swap(1, 2);
        sign = -sign;
    }
    if v[0] > v[1] {
        v.swap(0, 1);
        sign = -sign;
    }
    Some(((v[0], v[1], v[2]), sign))
}

/// Element of the second exterior power, stored sparsely on pairs `i < j`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SecondWedge {
    genus: Genus,
    terms: BTreeMap<(usize, usize), BigInt>,
}

impl SecondWedge {
    pub fn zero(genus: Genus) -> Self {
        SecondWedge {
            genus,
            terms: BTreeMap::new(),
        }
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize), BigInt> {
        &self.terms
    }

    fn insert(&mut self, i: usize, j: usize, v: BigInt) {
        if v.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(BigInt::zero);
        *entry += v;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn wedge2(a: &HomologyClass, b: &HomologyClass) -> Self {
        assert_eq!(a.genus, b.genus, "genus mismatch");
        let n = a.genus.dim();
        let mut out = SecondWedge::zero(a.genus);
        for i in 0..n {
            for j in (i + 1)..n {
                out.insert(
                    i,
                    j,
                    &a.coeffs[i] * &b.coeffs[j] - &a.coeffs[j] * &b.coeffs[i],
                );
            }
        }
        out
    }

    /// The class of the intersection form, `sum_i x_i /\ y_i`.
    pub fn omega(genus: Genus) -> Self {
        let g = genus.get();
        let mut out = SecondWedge::zero(genus);
        for i in 0..g {
            out.insert(i, g + i, BigInt::one());
        }
        out
    }

    /// Evaluate as an alternating form on a pair of classes (coefficients
    /// read against the dual basis).
    pub fn pair(&self, a: &HomologyClass, b: &HomologyClass) -> BigInt {
        assert_eq!(self.genus, a.genus, "genus mismatch");
        assert_eq!(self.genus, b.genus, "genus mismatch");
        let mut acc = BigInt::zero();
        for (&(i, j), v) in &self.terms {
            acc += v * (&a.coeffs[i] * &b.coeffs[j] - &a.coeffs[j] * &b.coeffs[i]);
        }
        acc
    }

    /// Push forward along a linear map given by the images of the `2g`
    /// basis vectors (diagonal action on wedges).
    pub fn transform_basis(&self, images: &[HomologyClass]) -> Self {
        assert_eq!(
            images.len(),
            self.genus.dim(),
            "need one image per basis vector"
        );
        let n = self.genus.dim();
        let mut out = SecondWedge::zero(self.genus);
        for (&(i, j), v) in &self.terms {
            let a = &images[i];
            let b = &images[j];
            for p in 0..n {
                for q in (p + 1)..n {
                    out.insert(
                        p,
                        q,
                        v * (&a.coeffs[p] * &b.coeffs[q] - &a.coeffs[q] * &b.coeffs[p]),
                    );
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

/// Element of the third exterior power, stored sparsely on strictly
/// increasing triples.  Zero coefficients are dropped so equality is
/// syntactic.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ThirdWedge {
    genus: Genus,
    terms: BTreeMap<(usize, usize, usize), BigInt>,
}

impl ThirdWedge {
    pub fn zero(genus: Genus) -> Self {
        ThirdWedge {
            genus,
            terms: BTreeMap::new(),
        }
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn terms(&self) -> &BTreeMap<(usize, usize, usize), BigInt> {
        &self.terms
    }

    pub fn coeff(&self, t: (usize, usize, usize)) -> BigInt {
        self.terms.get(&t).cloned().unwrap_or_else(BigInt::zero)
    }

    fn insert(&mut self, t: (usize, usize, usize), v: BigInt) {
        if v.is_zero() {
            return;
        }
        let entry = self.terms.entry(t).or_insert_with(BigInt::zero);
        *entry += v;
        if entry.is_zero() {
            self.terms.remove(&t);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Fully antisymmetric trilinear expansion of `a /\ b /\ c`.
    pub fn wedge3(a: &HomologyClass, b: &HomologyClass, c: &HomologyClass) -> Self {
        assert_eq!(a.genus, b.genus, "genus mismatch");
        assert_eq!(a.genus, c.genus, "genus mismatch");
        let n = a.genus.dim();
        let mut out = ThirdWedge::zero(a.genus);
        for i in 0..n {
            for j in (i + 1)..n {
                for k in (j + 1)..n {
                    // 3x3 determinant of the (i, j, k) rows of (a | b | c)
                    let det = &a.coeffs[i]
                        * (&b.coeffs[j] * &c.coeffs[k] - &b.coeffs[k] * &c.coeffs[j])
                        - &b.coeffs[i]
                            * (&a.coeffs[j] * &c.coeffs[k] - &a.coeffs[k] * &c.coeffs[j])
                        + &c.coeffs[i]
                            * (&a.coeffs[j] * &b.coeffs[k] - &a.coeffs[k] * &b.coeffs[j]);
                    out.insert((i, j, k), det);
                }
            }
        }
        out
    }

    /// `w /\ c` for a second-wedge `w`.
    pub fn wedge2_with(w: &SecondWedge, c: &HomologyClass) -> Self {
        assert_eq!(w.genus, c.genus, "genus mismatch");
        let n = w.genus.dim();
        let mut out = ThirdWedge::zero(w.genus);
        for (&(i, j), v) in &w.terms {
            for k in 0..n {
                if let Some((t, sign)) = sort3(i, j, k) {
                    out.insert(t, v * &c.coeffs[k] * int(sign));
                }
            }
        }
        out
    }

    /// The symplectic contraction
    /// `a /\ b /\ c -> i(a,b) c + i(b,c) a + i(c,a) b`, extended linearly.
    pub fn contract(&self) -> HomologyClass {
        let g = self.genus.get();
        let mut out = HomologyClass::zero(self.genus);
        for (&(i, j, k), v) in &self.terms {
            let contributions = [
                (basis_pairing(g, i, j), k),
                (basis_pairing(g, j, k), i),
                (basis_pairing(g, k, i), j),
            ];
            for (pairing, idx) in contributions {
                if pairing != 0 {
                    out.coeffs[idx] += v * int(pairing);
                }
            }
        }
        out
    }

    /// Push forward along a linear map given by basis-vector images.
    pub fn transform_basis(&self, images: &[HomologyClass]) -> Self {
        assert_eq!(
            images.len(),
            self.genus.dim(),
            "need one image per basis vector"
        );
        let mut out = ThirdWedge::zero(self.genus);
        for (&(i, j, k), v) in &self.terms {
            let w = Self::wedge3(&images[i], &images[j], &images[k]);
            for (t, c) in w.terms {
                out.insert(t, c * v);
            }
        }
        out
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        let mut out = ThirdWedge::zero(self.genus);
        for (&t, v) in &self.terms {
            out.insert(t, v * k);
        }
        out
    }
}

impl Add for &ThirdWedge {
    type Output = ThirdWedge;
    fn add(self, rhs: &ThirdWedge) -> ThirdWedge {
        assert_eq!(self.genus, rhs.genus, "genus mismatch");
        let mut out = self.clone();
        for (&t, v) in &rhs.terms {
            out.insert(t, v.clone());
        }
        out
    }
}

impl Sub for &ThirdWedge {
    type Output = ThirdWedge;
    fn sub(self, rhs: &ThirdWedge) -> ThirdWedge {
        assert_eq!(self.genus, rhs.genus, "genus mismatch");
        let mut out = self.clone();
        for (&t, v) in &rhs.terms {
            out.insert(t, -v);
        }
        out
    }
}

impl Neg for &ThirdWedge {
    type Output = ThirdWedge;
    fn neg(self) -> ThirdWedge {
        let mut out = ThirdWedge::zero(self.genus);
        for (&t, v) in &self.terms {
            out.insert(t, -v);
        }
        out
    }
}

/// Both sides of the adjunction between the contraction and wedging with
/// the intersection form: returns `(<alpha, contract(w)>, <omega /\ alpha, w>)`.
/// The two components agree for every `alpha` and `w`.
pub fn adjoint_pair(alpha: &CohomologyFunctional, w: &ThirdWedge) -> (BigRational, BigRational) {
    assert_eq!(alpha.genus, w.genus, "genus mismatch");
    let g = alpha.genus.get();
    let left = alpha.evaluate(&w.contract());

    // Expand (sum_p alpha_p /\ beta_p) /\ alpha against sorted dual triples
    // and pair coefficient-wise with w.
    let mut right = BigRational::zero();
    for p in 0..g {
        let (i, j) = (p, g + p);
        for k in 0..2 * g {
            if let Some((t, sign)) = sort3(i, j, k) {
                let c = w.coeff(t);
                if !c.is_zero() {
                    right += &alpha.coeffs[k] * BigRational::from(c * int(sign));
                }
            }
        }
    }
    (left, right)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat;
    use num_traits::Signed;

    fn g(v: usize) -> Genus {
        Genus::new(v).unwrap()
    }

    /// Bilinear expansion of the intersection form over basis pairs; used
    /// as an independent oracle.
    fn intersection_bruteforce(a: &HomologyClass, b: &HomologyClass) -> BigInt {
        let n = a.genus().dim();
        let gg = a.genus().get();
        let mut acc = BigInt::zero();
        for i in 0..n {
            for j in 0..n {
                let p = basis_pairing(gg, i, j);
                if p != 0 {
                    acc += a.coeff(i) * b.coeff(j) * int(p);
                }
            }
        }
        acc
    }

    #[test]
    fn intersection_basis_values() {
        let g2 = g(2);
        let x1 = HomologyClass::x(1, g2);
        let y1 = HomologyClass::y(1, g2);
        assert_eq!(x1.intersection(&y1).unwrap(), int(1));
        assert_eq!(y1.intersection(&x1).unwrap(), int(-1));
        assert_eq!(x1.intersection(&x1).unwrap(), int(0));
    }

    #[test]
    fn intersection_expansion_example() {
        // i(x1 + 2 y2, y1 - x2) at genus 2
        let g2 = g(2);
        let a = HomologyClass::from_i64(g2, &[1, 0, 0, 2]).unwrap();
        let b = HomologyClass::from_i64(g2, &[0, -1, 1, 0]).unwrap();
        assert_eq!(a.intersection(&b).unwrap(), int(3));
        assert_eq!(intersection_bruteforce(&a, &b), int(3));
    }

    #[test]
    fn intersection_genus_mismatch() {
        let a = HomologyClass::x(1, g(2));
        let b = HomologyClass::x(1, g(3));
        assert!(matches!(
            a.intersection(&b),
            Err(HomologyError::GenusMismatch(2, 3))
        ));
    }

    #[test]
    fn nondegenerate_on_basis() {
        for gv in 2..=4 {
            let gg = g(gv);
            for k in 0..gg.dim() {
                let e = HomologyClass::basis(k, gg);
                let found = (0..gg.dim()).any(|l| {
                    let f = HomologyClass::basis(l, gg);
                    e.intersection(&f).unwrap().abs().is_one()
                });
                assert!(found, "basis vector {k} pairs trivially with everything");
            }
        }
    }

    #[test]
    fn dual_inv_basis_images() {
        let g3 = g(3);
        let x3 = HomologyClass::x(3, g3);
        let y1 = HomologyClass::y(1, g3);
        assert_eq!(poincare_dual_inv(&x3), CohomologyFunctional::beta(3, g3));
        assert_eq!(poincare_dual_inv(&y1), -&CohomologyFunctional::alpha(1, g3));
    }

    #[test]
    fn dual_inv_is_intersection() {
        let g3 = g(3);
        for k in 0..g3.dim() {
            let a = HomologyClass::basis(k, g3);
            let f = poincare_dual_inv(&a);
            for l in 0..g3.dim() {
                let b = HomologyClass::basis(l, g3);
                assert_eq!(
                    f.evaluate(&b),
                    BigRational::from(a.intersection(&b).unwrap())
                );
            }
        }
    }

    /// Solve for the matrix inverse of `poincare_dual_inv` by rational
    /// Gaussian elimination; independent route to `poincare_dual`.
    fn dual_by_inversion(f: &CohomologyFunctional) -> Vec<BigRational> {
        let n = f.genus().dim();
        // columns of D^{-1} on the homology basis
        let m: Vec<Vec<BigRational>> = (0..n)
            .map(|j| {
                poincare_dual_inv(&HomologyClass::basis(j, f.genus()))
                    .coeffs()
                    .to_vec()
            })
            .collect();
        // transpose into row-major matrix equations M * c = f
        let mut rows: Vec<Vec<BigRational>> = (0..n)
            .map(|i| (0..n).map(|j| m[j][i].clone()).collect())
            .collect();
        let mut rhs = f.coeffs().to_vec();
        for col in 0..n {
            let pivot = (col..n).find(|&r| !rows[r][col].is_zero()).unwrap();
            rows.swap(col, pivot);
            rhs.swap(col, pivot);
            let p = rows[col][col].clone();
            for r in 0..n {
                if r != col && !rows[r][col].is_zero() {
                    let factor = &rows[r][col] / &p;
                    for c in 0..n {
                        let sub = &rows[col][c] * &factor;
                        rows[r][c] -= sub;
                    }
                    let sub = &rhs[col] * &factor;
                    rhs[r] -= sub;
                }
            }
        }
        (0..n).map(|i| &rhs[i] / &rows[i][i]).collect()
    }

    #[test]
    fn dual_matches_inversion_oracle() {
        let g2 = g(2);
        let b1 = CohomologyFunctional::beta(1, g2);
        let a1 = CohomologyFunctional::alpha(1, g2);
        assert_eq!(
            poincare_dual(&b1).coeffs(),
            dual_by_inversion(&b1).as_slice()
        );
        assert_eq!(
            poincare_dual(&a1).coeffs(),
            dual_by_inversion(&a1).as_slice()
        );
        // frozen values
        assert_eq!(
            poincare_dual(&b1),
            RationalClass::from(&HomologyClass::x(1, g2))
        );
        assert_eq!(
            poincare_dual(&a1),
            RationalClass::from(&HomologyClass::y(1, g2)).scaled(&rat(-1, 1))
        );
    }

    #[test]
    fn dual_roundtrip() {
        let g3 = g(3);
        let c = HomologyClass::from_i64(g3, &[3, -1, 4, 1, -5, 9]).unwrap();
        let back = poincare_dual(&poincare_dual_inv(&c));
        assert_eq!(back, RationalClass::from(&c));
    }

    #[test]
    fn wedge3_examples() {
        let g2 = g(2);
        let x1 = HomologyClass::x(1, g2);
        let x2 = HomologyClass::x(2, g2);
        let y1 = HomologyClass::y(1, g2);
        let y2 = HomologyClass::y(2, g2);

        let w = ThirdWedge::wedge3(&x1, &y1, &x2);
        assert_eq!(w.coeff((0, 1, 2)), int(-1)); // x1 /\ y1 /\ x2 = -(x1 /\ x2 /\ y1)
        assert_eq!(w.terms().len(), 1);

        assert!(ThirdWedge::wedge3(&x1, &x1, &y2).is_zero());

        let swapped = ThirdWedge::wedge3(&y1, &x1, &x2);
        assert_eq!(&swapped + &w, ThirdWedge::zero(g2));
    }

    #[test]
    fn omega_definition_and_pairing() {
        let g2 = g(2);
        let om = SecondWedge::omega(g2);
        assert_eq!(om.terms().len(), 2);
        assert_eq!(om.terms()[&(0, 2)], int(1));
        assert_eq!(om.terms()[&(1, 3)], int(1));
        for i in 1..=2 {
            let xi = HomologyClass::x(i, g2);
            let yi = HomologyClass::y(i, g2);
            assert_eq!(om.pair(&xi, &yi), int(1));
        }
    }

    #[test]
    fn contract_single_triple() {
        let g2 = g(2);
        let w = ThirdWedge::wedge3(
            &HomologyClass::x(1, g2),
            &HomologyClass::y(1, g2),
            &HomologyClass::x(2, g2),
        );
        assert_eq!(w.contract(), HomologyClass::x(2, g2));
    }

    #[test]
    fn contract_omega_wedge_is_scaling() {
        // contract(omega /\ c) = (g - 1) c, tested against a brute-force
        // triple expansion of omega /\ c.
        for gv in 2..=5 {
            let gg = g(gv);
            let mut coeffs: Vec<i64> = Vec::new();
            for k in 0..gg.dim() {
                coeffs.push((k as i64 % 5) - 2 + k as i64);
            }
            let c = HomologyClass::from_i64(gg, &coeffs).unwrap();
            // oracle route: sum of wedge3(x_i, y_i, c)
            let mut oracle = ThirdWedge::zero(gg);
            for i in 1..=gv {
                oracle = &oracle
                    + &ThirdWedge::wedge3(&HomologyClass::x(i, gg), &HomologyClass::y(i, gg), &c);
            }
            let fast = ThirdWedge::wedge2_with(&SecondWedge::omega(gg), &c);
            assert_eq!(oracle, fast);
            let expected = c.scaled(&int(gv as i64 - 1));
            assert_eq!(fast.contract(), expected);

            // basis vectors too
            for k in 0..gg.dim() {
                let e = HomologyClass::basis(k, gg);
                let w = ThirdWedge::wedge2_with(&SecondWedge::omega(gg), &e);
                assert_eq!(w.contract(), e.scaled(&int(gv as i64 - 1)));
            }
        }
    }

    #[test]
    fn contract_corollary_value() {
        // contract((sum_{i<g} x_i /\ y_i) /\ x_g) = (g-1) x_g
        for gv in 2..=5 {
            let gg = g(gv);
            let xg = HomologyClass::x(gv, gg);
            let mut w = ThirdWedge::zero(gg);
            for i in 1..gv {
                w = &w
                    + &ThirdWedge::wedge3(&HomologyClass::x(i, gg), &HomologyClass::y(i, gg), &xg);
            }
            assert_eq!(w.contract(), xg.scaled(&int(gv as i64 - 1)));
        }
    }

    #[test]
    fn adjoint_pair_examples() {
        let g2 = g(2);
        let w = ThirdWedge::wedge3(
            &HomologyClass::x(1, g2),
            &HomologyClass::y(1, g2),
            &HomologyClass::x(2, g2),
        );
        let (l, r) = adjoint_pair(&CohomologyFunctional::alpha(2, g2), &w);
        assert_eq!(l, rat(1, 1));
        assert_eq!(r, rat(1, 1));

        // beta_2 pairs trivially with this triple on both sides
        let (l, r) = adjoint_pair(&CohomologyFunctional::beta(2, g2), &w);
        assert_eq!(l, rat(0, 1));
        assert_eq!(r, rat(0, 1));

        let (l, r) = adjoint_pair(&CohomologyFunctional::zero(g2), &w);
        assert!(l.is_zero() && r.is_zero());
    }

    #[test]
    fn adjoint_random_small() {
        for gv in 2..=4 {
            let gg = g(gv);
            let n = gg.dim();
            for seed in 0..20u64 {
                let mut state = seed
                    .wrapping_mul(6364136223846793005)
                    .wrapping_add(gv as u64);
                let mut next = || {
                    state = state
                        .wrapping_mul(6364136223846793005)
                        .wrapping_add(1442695040888963407);
                    ((state >> 33) % 7) as i64 - 3
                };
                let alpha =
                    CohomologyFunctional::from_coeffs(gg, (0..n).map(|_| rat(next(), 1)).collect())
                        .unwrap();
                let a = HomologyClass::from_i64(gg, &(0..n).map(|_| next()).collect::<Vec<_>>())
                    .unwrap();
                let b = HomologyClass::from_i64(gg, &(0..n).map(|_| next()).collect::<Vec<_>>())
                    .unwrap();
                let c = HomologyClass::from_i64(gg, &(0..n).map(|_| next()).collect::<Vec<_>>())
                    .unwrap();
                let w = ThirdWedge::wedge3(&a, &b, &c);
                let (l, r) = adjoint_pair(&alpha, &w);
                assert_eq!(l, r);
            }
        }
    }

    #[test]
    fn primitivity() {
        let g2 = g(2);
        assert!(HomologyClass::from_i64(g2, &[2, 1, 0, 0])
            .unwrap()
            .is_primitive());
        assert!(!HomologyClass::from_i64(g2, &[2, 4, 0, 6])
            .unwrap()
            .is_primitive());
        assert!(HomologyClass::zero(g2).is_primitive());
    }
}
