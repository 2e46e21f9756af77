//! Upper-half-plane primitives: geodesics, intersection angles, angle-deficit
//! triangle areas, and Euler-characteristic areas of subsurfaces.
//!
//! The model is conformal, so hyperbolic angles are Euclidean angles between
//! tangent directions.  Geodesics are vertical lines or semicircles centered
//! on the real axis.

use std::f64::consts::PI;

use thiserror::Error;

pub const ON_GEODESIC_TOL: f64 = 1e-12;
pub const DEGENERACY_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum HyperbolicError {
    #[error("point must lie in the open upper half-plane, got y = {0}")]
    NotInHalfPlane(f64),
    #[error("the two points coincide")]
    CoincidentPoints,
    #[error("point ({0}, {1}) does not lie on the geodesic")]
    PointOffGeodesic(f64, f64),
    #[error("the two geodesics coincide")]
    SameGeodesic,
    #[error("triangle is degenerate: {0}")]
    Degenerate(String),
    #[error("no hyperbolic structure: Euler characteristic {0} is not negative")]
    NonNegativeEuler(i64),
    #[error("angle multisets differ by {0:e}, refusing the area comparison")]
    AngleMismatch(f64),
}

/// Point of the upper half-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HPoint {
    pub x: f64,
    pub y: f64,
}

impl HPoint {
    pub fn new(x: f64, y: f64) -> Result<Self, HyperbolicError> {
        if !(y > 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(HyperbolicError::NotInHalfPlane(y));
        }
        Ok(HPoint { x, y })
    }
}

/// Geodesic of the upper half-plane in canonical form.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Geodesic {
    Vertical { x: f64 },
    Semicircle { center: f64, radius: f64 },
}

impl Geodesic {
    /// Unique geodesic through two distinct points; vertical exactly when
    /// the points share an abscissa.
    pub fn through(p: HPoint, q: HPoint) -> Result<Self, HyperbolicError> {
        let dx = q.x - p.x;
        if dx == 0.0 && p.y == q.y {
            return Err(HyperbolicError::CoincidentPoints);
        }
        if dx == 0.0 {
            return Ok(Geodesic::Vertical { x: p.x });
        }
        // center c on the real axis equidistant from p and q
        let center = (q.x * q.x + q.y * q.y - p.x * p.x - p.y * p.y) / (2.0 * dx);
        let radius = ((p.x - center) * (p.x - center) + p.y * p.y).sqrt();
        Ok(Geodesic::Semicircle { center, radius })
    }

    pub fn contains(&self, p: HPoint, tol: f64) -> bool {
        match *self {
            Geodesic::Vertical { x } => (p.x - x).abs() <= tol,
            Geodesic::Semicircle { center, radius } => {
                let d = ((p.x - center) * (p.x - center) + p.y * p.y).sqrt();
                (d - radius).abs() <= tol * radius.max(1.0)
            }
        }
    }

    /// Canonical unit tangent at a point of the geodesic.
    pub fn tangent_at(&self, p: HPoint) -> (f64, f64) {
        match *self {
            Geodesic::Vertical { .. } => (0.0, 1.0),
            Geodesic::Semicircle { center, radius } => ((-p.y) / radius, (p.x - center) / radius),
        }
    }

    /// Unit tangent at `p` pointing along the geodesic toward `q`.
    fn tangent_toward(&self, p: HPoint, q: HPoint) -> (f64, f64) {
        let (tx, ty) = self.tangent_at(p);
        let toward = match *self {
            Geodesic::Vertical { .. } => q.y > p.y,
            Geodesic::Semicircle { center, .. } => {
                // parameter angle decreases left to right; compare polar
                // angles about the center
                let ang_p = p.y.atan2(p.x - center);
                let ang_q = q.y.atan2(q.x - center);
                ang_q > ang_p
            }
        };
        if toward {
            (tx, ty)
        } else {
            (-tx, -ty)
        }
    }

    /// Crossing points with another geodesic (zero, one in the open upper
    /// half-plane).
    pub fn intersections(&self, other: &Geodesic) -> Vec<HPoint> {
        match (*self, *other) {
            (Geodesic::Vertical { .. }, Geodesic::Vertical { .. }) => Vec::new(),
            (Geodesic::Vertical { x }, Geodesic::Semicircle { center, radius })
            | (Geodesic::Semicircle { center, radius }, Geodesic::Vertical { x }) => {
                let d2 = radius * radius - (x - center) * (x - center);
                if d2 > 0.0 {
                    vec![HPoint { x, y: d2.sqrt() }]
                } else {
                    Vec::new()
                }
            }
            (
                Geodesic::Semicircle {
                    center: c1,
                    radius: r1,
                },
                Geodesic::Semicircle {
                    center: c2,
                    radius: r2,
                },
            ) => {
                if c1 == c2 {
                    return Vec::new();
                }
                // radical line of the two circles
                let x = (r1 * r1 - r2 * r2 + c2 * c2 - c1 * c1) / (2.0 * (c2 - c1));
                let y2 = r1 * r1 - (x - c1) * (x - c1);
                if y2 > 0.0 {
                    vec![HPoint { x, y: y2.sqrt() }]
                } else {
                    Vec::new()
                }
            }
        }
    }
}

/// Angle in `(0, pi)` between the canonical tangent directions of two
/// distinct geodesics at a common point.
pub fn angle_at(g1: &Geodesic, g2: &Geodesic, p: HPoint) -> Result<f64, HyperbolicError> {
    if g1 == g2 {
        return Err(HyperbolicError::SameGeodesic);
    }
    if !g1.contains(p, ON_GEODESIC_TOL) || !g2.contains(p, ON_GEODESIC_TOL) {
        return Err(HyperbolicError::PointOffGeodesic(p.x, p.y));
    }
    let (ax, ay) = g1.tangent_at(p);
    let (bx, by) = g2.tangent_at(p);
    let dot = (ax * bx + ay * by).clamp(-1.0, 1.0);
    Ok(dot.acos())
}

/// Geodesic triangle: three geodesics and a selected vertex triple, where
/// vertex `k` lies on geodesics `k` and `k + 1 (mod 3)`.
#[derive(Clone, Debug)]
pub struct HTriangle {
    geodesics: [Geodesic; 3],
    vertices: [HPoint; 3],
}

impl HTriangle {
    pub fn new(geodesics: [Geodesic; 3], vertices: [HPoint; 3]) -> Result<Self, HyperbolicError> {
        for k in 0..3 {
            let p = vertices[k];
            let ga = &geodesics[k];
            let gb = &geodesics[(k + 1) % 3];
            if !ga.contains(p, ON_GEODESIC_TOL) || !gb.contains(p, ON_GEODESIC_TOL) {
                return Err(HyperbolicError::PointOffGeodesic(p.x, p.y));
            }
        }
        for i in 0..3 {
            for j in (i + 1)..3 {
                let (p, q) = (vertices[i], vertices[j]);
                if (p.x - q.x).hypot(p.y - q.y) <= DEGENERACY_TOL {
                    return Err(HyperbolicError::Degenerate(
                        "two vertices coincide (triple intersection)".into(),
                    ));
                }
            }
        }
        Ok(HTriangle {
            geodesics,
            vertices,
        })
    }

    /// Build the triangle cut out by three pairwise-crossing geodesics,
    /// taking the unique crossing of each pair.  A triple intersection
    /// collapses the vertices and is reported as degenerate.
    pub fn from_geodesics(geodesics: [Geodesic; 3]) -> Result<Self, HyperbolicError> {
        let mut vertices = [HPoint { x: 0.0, y: 1.0 }; 3];
        for k in 0..3 {
            let pts = geodesics[k].intersections(&geodesics[(k + 1) % 3]);
            match pts.first() {
                Some(&p) => vertices[k] = p,
                None => {
                    return Err(HyperbolicError::Degenerate(
                        "a pair of the geodesics does not cross".into(),
                    ))
                }
            }
        }
        Self::new(geodesics, vertices)
    }

    pub fn vertices(&self) -> &[HPoint; 3] {
        &self.vertices
    }

    /// Interior angles, measured between tangent rays toward the adjacent
    /// vertices.
    pub fn interior_angles(&self) -> [f64; 3] {
        let mut out = [0.0; 3];
        for k in 0..3 {
            let p = self.vertices[k];
            let ga = &self.geodesics[k];
            let gb = &self.geodesics[(k + 1) % 3];
            // the other two vertices, each on one of the geodesics at p
            let qa = self.vertices[(k + 2) % 3]; // shares geodesic k
            let qb = self.vertices[(k + 1) % 3]; // shares geodesic k+1
            let (ax, ay) = ga.tangent_toward(p, qa);
            let (bx, by) = gb.tangent_toward(p, qb);
            let dot = (ax * bx + ay * by).clamp(-1.0, 1.0);
            out[k] = dot.acos();
        }
        out
    }
}

/// Angle-deficit area `pi - alpha - beta - gamma`; always in `(0, pi)` for
/// an honest geodesic triangle, and degenerate configurations (angle sum
/// within tolerance of `pi` or more) are rejected.
pub fn triangle_area(t: &HTriangle) -> Result<f64, HyperbolicError> {
    let [a, b, c] = t.interior_angles();
    let deficit = PI - a - b - c;
    if deficit <= DEGENERACY_TOL {
        return Err(HyperbolicError::Degenerate(format!(
            "angle sum {:.12} leaves no area",
            a + b + c
        )));
    }
    Ok(deficit)
}

/// Area of a hyperbolic surface of the given genus and boundary count:
/// `-2 pi chi`.
pub fn subsurface_area(genus: usize, boundary: usize) -> Result<f64, HyperbolicError> {
    let chi = 2i64 - 2 * genus as i64 - boundary as i64;
    if chi >= 0 {
        return Err(HyperbolicError::NonNegativeEuler(chi));
    }
    Ok(-2.0 * PI * chi as f64)
}

/// Two triangles whose angle multisets match (within `1e-9`) have equal
/// deficit areas; refuses when the angle lists do not pair up.
pub fn opposite_angle_area_check(t1: &HTriangle, t2: &HTriangle) -> Result<bool, HyperbolicError> {
    let mut a1 = t1.interior_angles();
    let mut a2 = t2.interior_angles();
    a1.sort_by(|p, q| p.partial_cmp(q).unwrap());
    a2.sort_by(|p, q| p.partial_cmp(q).unwrap());
    let worst = a1
        .iter()
        .zip(a2.iter())
        .map(|(p, q)| (p - q).abs())
        .fold(0.0f64, f64::max);
    if worst > DEGENERACY_TOL {
        return Err(HyperbolicError::AngleMismatch(worst));
    }
    let area1 = triangle_area(t1)?;
    let area2 = triangle_area(t2)?;
    Ok((area1 - area2).abs() <= DEGENERACY_TOL)
}

/// Horizontal translation `z -> z + t`, an isometry of the model.
pub fn translate_point(p: HPoint, t: f64) -> HPoint {
    HPoint { x: p.x + t, y: p.y }
}

pub fn translate_geodesic(g: &Geodesic, t: f64) -> Geodesic {
    match *g {
        Geodesic::Vertical { x } => Geodesic::Vertical { x: x + t },
        Geodesic::Semicircle { center, radius } => Geodesic::Semicircle {
            center: center + t,
            radius,
        },
    }
}

/// Dilation `z -> lambda z` for `lambda > 0`, an isometry of the model.
pub fn dilate_point(p: HPoint, lambda: f64) -> HPoint {
    HPoint {
        x: lambda * p.x,
        y: lambda * p.y,
    }
}

pub fn dilate_geodesic(g: &Geodesic, lambda: f64) -> Geodesic {
    match *g {
        Geodesic::Vertical { x } => Geodesic::Vertical { x: lambda * x },
        Geodesic::Semicircle { center, radius } => Geodesic::Semicircle {
            center: lambda * center,
            radius: lambda * radius,
        },
    }
}
