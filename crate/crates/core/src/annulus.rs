//! Numeric flux engine on flat annuli.
//!
//! The model annulus is `[-r, r] x (R mod ell)` with the product area form.
//! A shear `(x, y) -> (x, y + ell t f(x))` models a Hamiltonian point-push
//! (profile `f` with zero mean, vanishing to all orders at the boundary)
//! or a symmetric twist (`f` monotone from 0 to 1 with `f(-x) = 1 - f(x)`).
//! Swept areas are computed by adaptive quadrature of dragged chains, and
//! the section flux of a push across a transverse arc is reassembled from
//! the two wrap directions plus the area of the complement of the annulus
//! in a surface of total area `g`.

use thiserror::Error;

use crate::homology::Genus;
use crate::quadrature::{integrate, DEFAULT_TOL};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AnnulusError {
    #[error("annulus dimensions must be positive, got r = {0}, ell = {1}")]
    BadGeometry(f64, f64),
    #[error("need at least 8 profile samples, got {0}")]
    InfeasibleSampleCount(usize),
    #[error("profile invariant violated: {0}")]
    ProfileInvariant(String),
    #[error("operation requires a {expected} profile")]
    WrongProfileKind { expected: &'static str },
    #[error("arc is not transverse: {0}")]
    NonTransverseArc(String),
    #[error("annulus area {area} does not fit in a surface of area {total}")]
    AnnulusTooLarge { area: f64, total: f64 },
}

/// Flat annulus `[-r, r] x (R mod ell)` with unit area density.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FlatAnnulus {
    r: f64,
    ell: f64,
}

impl FlatAnnulus {
    pub fn new(r: f64, ell: f64) -> Result<Self, AnnulusError> {
        if !(r > 0.0 && ell > 0.0 && r.is_finite() && ell.is_finite()) {
            return Err(AnnulusError::BadGeometry(r, ell));
        }
        Ok(FlatAnnulus { r, ell })
    }

    pub fn half_width(&self) -> f64 {
        self.r
    }

    pub fn circumference(&self) -> f64 {
        self.ell
    }

    pub fn area(&self) -> f64 {
        2.0 * self.r * self.ell
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ProfileKind {
    /// Zero-mean bump: `f(+-r) = 0` to all orders, `f(0) = 1`,
    /// `int f = 0`.
    Push,
    /// Monotone step: `f(-r) = 0`, `f(r) = 1`, `f(-x) = 1 - f(x)`.
    Twist,
}

/// Smooth bump `exp(1 - 1/(1 - u^2))` on `(-1, 1)`; value 1 at 0, all
/// derivatives vanish at the endpoints.
fn bump(u: f64) -> f64 {
    if u.abs() < 1.0 {
        (1.0 - 1.0 / (1.0 - u * u)).exp()
    } else {
        0.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum ProfileShape {
    Push,
    Twist,
    SkewedTwist,
}

/// Shear profile on `[-r, r]`, built analytically from bump functions and
/// sampled for invariant checks.
#[derive(Clone, Debug)]
pub struct ShearProfile {
    kind: ProfileKind,
    shape: ProfileShape,
    r: f64,
    samples: Vec<(f64, f64)>,
}

const PROFILE_CHECK_TOL: f64 = 1e-12;

impl ShearProfile {
    pub fn kind(&self) -> ProfileKind {
        self.kind
    }

    pub fn half_width(&self) -> f64 {
        self.r
    }

    pub fn samples(&self) -> &[(f64, f64)] {
        &self.samples
    }

    pub fn eval(&self, x: f64) -> f64 {
        let r = self.r;
        match self.shape {
            ProfileShape::Push => {
                // central bump on [-r/2, r/2] minus side bumps on
                // [-r, -r/2] and [r/2, r]; widths chosen so the exact
                // integral cancels.
                bump(2.0 * x / r) - bump((x - 0.75 * r) * 4.0 / r) - bump((x + 0.75 * r) * 4.0 / r)
            }
            ProfileShape::Twist => {
                if x <= -r {
                    0.0
                } else if x >= r {
                    1.0
                } else {
                    let num = integrate(|t| bump(t / r), -r, x, 1e-13);
                    let den = integrate(|t| bump(t / r), -r, r, 1e-13);
                    num / den
                }
            }
            ProfileShape::SkewedTwist => {
                // deliberately breaks f(-x) = 1 - f(x); negative control
                let w = |t: f64| bump(t / r) * (1.0 + 0.8 * t / r);
                if x <= -r {
                    0.0
                } else if x >= r {
                    1.0
                } else {
                    let num = integrate(w, -r, x, 1e-13);
                    let den = integrate(w, -r, r, 1e-13);
                    num / den
                }
            }
        }
    }

    /// Twist-shaped profile violating the symmetry invariant; useful only
    /// as a negative control in equal-area checks.
    pub fn skewed_twist(r: f64, num_samples: usize) -> Result<Self, AnnulusError> {
        if !(r > 0.0 && r.is_finite()) {
            return Err(AnnulusError::BadGeometry(r, 1.0));
        }
        if num_samples < 8 {
            return Err(AnnulusError::InfeasibleSampleCount(num_samples));
        }
        let mut profile = ShearProfile {
            kind: ProfileKind::Twist,
            shape: ProfileShape::SkewedTwist,
            r,
            samples: Vec::new(),
        };
        profile.samples = profile.take_samples(num_samples);
        Ok(profile)
    }

    fn take_samples(&self, n: usize) -> Vec<(f64, f64)> {
        (0..n)
            .map(|k| {
                let x = -self.r + 2.0 * self.r * k as f64 / (n - 1) as f64;
                (x, self.eval(x))
            })
            .collect()
    }
}

/// Build a validated profile of the given kind.
pub fn make_profile(
    kind: ProfileKind,
    r: f64,
    num_samples: usize,
) -> Result<ShearProfile, AnnulusError> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(AnnulusError::BadGeometry(r, 1.0));
    }
    if num_samples < 8 {
        return Err(AnnulusError::InfeasibleSampleCount(num_samples));
    }
    let shape = match kind {
        ProfileKind::Push => ProfileShape::Push,
        ProfileKind::Twist => ProfileShape::Twist,
    };
    let mut profile = ShearProfile {
        kind,
        shape,
        r,
        samples: Vec::new(),
    };
    profile.samples = profile.take_samples(num_samples);

    match kind {
        ProfileKind::Push => {
            let mean = integrate(|x| profile.eval(x), -r, r, 1e-13);
            if mean.abs() > PROFILE_CHECK_TOL {
                return Err(AnnulusError::ProfileInvariant(format!(
                    "push profile has mean {mean:e}"
                )));
            }
            if (profile.eval(0.0) - 1.0).abs() > PROFILE_CHECK_TOL
                || profile.eval(-r).abs() > PROFILE_CHECK_TOL
                || profile.eval(r).abs() > PROFILE_CHECK_TOL
            {
                return Err(AnnulusError::ProfileInvariant(
                    "push profile endpoint or center value off".into(),
                ));
            }
        }
        ProfileKind::Twist => {
            for &(x, v) in &profile.samples {
                let mirrored = profile.eval(-x);
                if (mirrored + v - 1.0).abs() > PROFILE_CHECK_TOL {
                    return Err(AnnulusError::ProfileInvariant(format!(
                        "twist profile not symmetric at x = {x}"
                    )));
                }
            }
            if profile.eval(-r).abs() > PROFILE_CHECK_TOL
                || (profile.eval(r) - 1.0).abs() > PROFILE_CHECK_TOL
            {
                return Err(AnnulusError::ProfileInvariant(
                    "twist profile endpoints off".into(),
                ));
            }
            let monotone = profile
                .samples
                .windows(2)
                .all(|w| w[1].1 >= w[0].1 - PROFILE_CHECK_TOL);
            if !monotone {
                return Err(AnnulusError::ProfileInvariant(
                    "twist profile not monotone".into(),
                ));
            }
        }
    }
    Ok(profile)
}

/// Arc crossing the annulus as a polynomial graph `y = c(x)`, with a
/// crossing orientation.
#[derive(Clone, Debug, PartialEq)]
pub struct TransverseArc {
    coeffs: Vec<f64>,
    sign: i8,
}

impl TransverseArc {
    pub fn new(coeffs: Vec<f64>, sign: i8) -> Result<Self, AnnulusError> {
        if coeffs.is_empty() || coeffs.iter().any(|c| !c.is_finite()) {
            return Err(AnnulusError::NonTransverseArc(
                "graph coefficients must be finite and nonempty".into(),
            ));
        }
        if sign != 1 && sign != -1 {
            return Err(AnnulusError::NonTransverseArc(
                "crossing sign must be +1 or -1".into(),
            ));
        }
        Ok(TransverseArc { coeffs, sign })
    }

    pub fn line(y0: f64, slope: f64, sign: i8) -> Result<Self, AnnulusError> {
        Self::new(vec![y0, slope], sign)
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }

    pub fn is_straight(&self) -> bool {
        self.coeffs.len() <= 2
    }

    pub fn eval(&self, x: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }
}

/// The time-`t` shear of a profile: `(x, y) -> (x, y + ell t f(x))`,
/// written on the universal cover (the `y` output is not reduced mod
/// `ell`).
#[derive(Clone, Debug)]
pub struct ShearMap<'a> {
    annulus: FlatAnnulus,
    profile: &'a ShearProfile,
    t: f64,
}

impl<'a> ShearMap<'a> {
    pub fn new(annulus: FlatAnnulus, profile: &'a ShearProfile, t: f64) -> Self {
        ShearMap {
            annulus,
            profile,
            t,
        }
    }

    pub fn apply(&self, p: (f64, f64)) -> (f64, f64) {
        let (x, y) = p;
        (
            x,
            y + self.annulus.circumference() * self.t * self.profile.eval(x),
        )
    }

    /// Jacobian determinant by central differences; identically 1 for a
    /// shear, up to differencing error.
    pub fn jacobian_det(&self, p: (f64, f64), h: f64) -> f64 {
        let (x, y) = p;
        let fxp = self.apply((x + h, y));
        let fxm = self.apply((x - h, y));
        let fyp = self.apply((x, y + h));
        let fym = self.apply((x, y - h));
        let dxdx = (fxp.0 - fxm.0) / (2.0 * h);
        let dydx = (fxp.1 - fxm.1) / (2.0 * h);
        let dxdy = (fyp.0 - fym.0) / (2.0 * h);
        let dydy = (fyp.1 - fym.1) / (2.0 * h);
        dxdx * dydy - dydx * dxdy
    }
}

/// Signed area swept by the arc while the shear runs from time 0 to `t`:
/// quadrature of the fiberwise displacement of the dragged chain.
pub fn swept_flux(
    annulus: &FlatAnnulus,
    profile: &ShearProfile,
    arc: &TransverseArc,
    t: f64,
) -> f64 {
    if t == 0.0 {
        return 0.0;
    }
    let map = ShearMap::new(*annulus, profile, t);
    let r = annulus.half_width();
    let sweep = integrate(
        |x| {
            let start = arc.eval(x);
            let end = map.apply((x, start)).1;
            end - start
        },
        -r,
        r,
        DEFAULT_TOL,
    );
    arc.sign() as f64 * sweep
}

/// Section flux of a Hamiltonian point-push across a transverse arc,
/// assembled as `area(D1) - area(D0) + area(complement)`:
///
/// * `D0` drags the arc along the isotopy (zero area for a push profile);
/// * `D1` wraps the arc the other way around the annulus, with fiber
///   displacement `ell (1 - f)`;
/// * the complement contributes `g -` the annulus area.
///
/// The expected value is `g` times the crossing sign.
pub fn flsec_push_numeric(
    genus: Genus,
    annulus: &FlatAnnulus,
    arc: &TransverseArc,
) -> Result<f64, AnnulusError> {
    let total = genus.get() as f64;
    if annulus.area() >= total {
        return Err(AnnulusError::AnnulusTooLarge {
            area: annulus.area(),
            total,
        });
    }
    let profile = make_profile(ProfileKind::Push, annulus.half_width(), 64)?;
    let ell = annulus.circumference();
    let r = annulus.half_width();
    let map = ShearMap::new(*annulus, &profile, 1.0);

    let d0 = integrate(
        |x| {
            let start = arc.eval(x);
            map.apply((x, start)).1 - start
        },
        -r,
        r,
        DEFAULT_TOL,
    );
    // reverse wrap: from the pushed arc shifted down one period, back to
    // the arc; fiber length ell (1 - f)
    let d1 = integrate(
        |x| {
            let start = map.apply((x, arc.eval(x))).1 - ell;
            arc.eval(x) - start
        },
        -r,
        r,
        DEFAULT_TOL,
    );
    let complement = total - annulus.area();
    Ok(arc.sign() as f64 * (d1 - d0 + complement))
}

/// Signed areas of the two regions cut out by a straight transverse arc,
/// its full-twist image, and the core circle.  For a symmetric twist
/// profile the half-turn symmetry of the annulus swaps the regions, so
/// the areas agree and the certifying chain has zero signed area.
pub fn twist_triangle_areas(
    annulus: &FlatAnnulus,
    profile: &ShearProfile,
    arc: &TransverseArc,
) -> Result<(f64, f64), AnnulusError> {
    if profile.kind() != ProfileKind::Twist {
        return Err(AnnulusError::WrongProfileKind { expected: "twist" });
    }
    if !arc.is_straight() {
        return Err(AnnulusError::NonTransverseArc(
            "equal-area regions need a straight arc".into(),
        ));
    }
    let r = annulus.half_width();
    let ell = annulus.circumference();
    let map = ShearMap::new(*annulus, profile, 1.0);
    // right of the core: between the arc and its image
    let a1 = integrate(
        |x| {
            let lower = arc.eval(x);
            let upper = map.apply((x, lower)).1;
            upper - lower
        },
        0.0,
        r,
        DEFAULT_TOL,
    );
    // left of the core: between the image shifted down a period and the arc
    let a2 = integrate(
        |x| {
            let upper = arc.eval(x);
            let lower = map.apply((x, upper)).1 - ell;
            upper - lower
        },
        -r,
        0.0,
        DEFAULT_TOL,
    );
    Ok((a1, a2))
}
