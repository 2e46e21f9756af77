//! Dehn-twist words acting on first homology as symplectic transvections,
//! together with matrix-level checks of the mapping-class-group relations
//! (commuting, braid, star, chain).
//!
//! Everything here is homology-level: a twist word is identified with its
//! integer symplectic matrix, and "curves" are primitive homology classes
//! with names.  Geometric intersection patterns are approximated by the
//! algebraic pairing, and the star/chain preconditions encode the homology
//! constraints of the bounding subsurfaces.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::homology::{Genus, HomologyClass, HomologyError};
use crate::int;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MappingClassError {
    #[error("curve `{0}` must be a primitive (or zero) homology class")]
    NotPrimitive(String),
    #[error("twist exponent must be +1 or -1, got {0}")]
    BadExponent(i64),
    #[error("braid check requires |i(a,b)| = 1, got {0}")]
    BraidIntersection(BigInt),
    #[error("commuting check requires i(a,b) = 0, got {0}")]
    CommutingIntersection(BigInt),
    #[error("configuration violated: {0}")]
    Configuration(String),
    #[error(transparent)]
    Homology(#[from] HomologyError),
}

/// A named simple-closed-curve class.  Distinct names may share a homology
/// class (parallel curves); the zero class is allowed for separating curves.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurveClass {
    name: String,
    class: HomologyClass,
}

impl CurveClass {
    pub fn new(name: impl Into<String>, class: HomologyClass) -> Result<Self, MappingClassError> {
        let name = name.into();
        if !class.is_primitive() {
            return Err(MappingClassError::NotPrimitive(name));
        }
        Ok(CurveClass { name, class })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn class(&self) -> &HomologyClass {
        &self.class
    }

    pub fn genus(&self) -> Genus {
        self.class.genus()
    }
}

/// One letter of a twist word: a Dehn twist or its inverse.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TwistLetter {
    pub curve: CurveClass,
    pub exp: i8,
}

impl TwistLetter {
    pub fn new(curve: CurveClass, exp: i8) -> Result<Self, MappingClassError> {
        if exp != 1 && exp != -1 {
            return Err(MappingClassError::BadExponent(exp as i64));
        }
        Ok(TwistLetter { curve, exp })
    }

    pub fn twist(curve: CurveClass) -> Self {
        TwistLetter { curve, exp: 1 }
    }

    pub fn inverse_twist(curve: CurveClass) -> Self {
        TwistLetter { curve, exp: -1 }
    }
}

/// A finite sequence of twist letters, written in composition order: the
/// first letter acts last, as in the usual operator notation
/// `T_1 T_2 ... T_k`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TwistWord {
    letters: Vec<TwistLetter>,
}

impl TwistWord {
    pub fn empty() -> Self {
        TwistWord::default()
    }

    pub fn new(letters: Vec<TwistLetter>) -> Self {
        TwistWord { letters }
    }

    pub fn letters(&self) -> &[TwistLetter] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn push(&mut self, letter: TwistLetter) {
        self.letters.push(letter);
    }

    pub fn concat(&self, other: &TwistWord) -> TwistWord {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        TwistWord { letters }
    }

    /// Formal inverse: reverse the letters and flip every exponent.
    pub fn inverse(&self) -> TwistWord {
        TwistWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| TwistLetter {
                    curve: l.curve.clone(),
                    exp: -l.exp,
                })
                .collect(),
        }
    }

    /// `self * inner * self^{-1}`.
    pub fn conjugate(&self, inner: &TwistWord) -> TwistWord {
        self.concat(inner).concat(&self.inverse())
    }
}

/// Integer `2g x 2g` matrix acting on homology, stored row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct SpMatrix {
    genus: Genus,
    rows: Vec<Vec<BigInt>>,
}

impl fmt::Debug for SpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SpMatrix(g={})", self.genus)?;
        for row in &self.rows {
            writeln!(f, "  {row:?}")?;
        }
        Ok(())
    }
}

impl SpMatrix {
    pub fn identity(genus: Genus) -> Self {
        let n = genus.dim();
        let mut rows = vec![vec![BigInt::zero(); n]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            row[i] = BigInt::one();
        }
        SpMatrix { genus, rows }
    }

    pub fn from_rows(genus: Genus, rows: Vec<Vec<BigInt>>) -> Result<Self, MappingClassError> {
        let n = genus.dim();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(MappingClassError::Homology(HomologyError::BadLength {
                expected: n,
                found: rows.len(),
            }));
        }
        Ok(SpMatrix { genus, rows })
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<BigInt>] {
        &self.rows
    }

    /// Gram matrix of the intersection form in the fixed basis.
    pub fn gram(genus: Genus) -> Self {
        let g = genus.get();
        let n = genus.dim();
        let mut rows = vec![vec![BigInt::zero(); n]; n];
        for k in 0..g {
            rows[k][g + k] = BigInt::one();
            rows[g + k][k] = -BigInt::one();
        }
        SpMatrix { genus, rows }
    }

    pub fn mul(&self, rhs: &SpMatrix) -> SpMatrix {
        assert_eq!(self.genus, rhs.genus, "genus mismatch");
        let n = self.genus.dim();
        let mut rows = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                if self.rows[i][k].is_zero() {
                    continue;
                }
                for j in 0..n {
                    rows[i][j] += &self.rows[i][k] * &rhs.rows[k][j];
                }
            }
        }
        SpMatrix {
            genus: self.genus,
            rows,
        }
    }

    pub fn transpose(&self) -> SpMatrix {
        let n = self.genus.dim();
        let mut rows = vec![vec![BigInt::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                rows[j][i] = self.rows[i][j].clone();
            }
        }
        SpMatrix {
            genus: self.genus,
            rows,
        }
    }

    /// Exact inverse of a symplectic matrix, `M^{-1} = J^{-1} M^T J`.
    pub fn inverse(&self) -> SpMatrix {
        debug_assert!(self.is_symplectic(), "inverse formula needs M symplectic");
        let j = Self::gram(self.genus);
        let j_inv = j.neg_matrix();
        j_inv.mul(&self.transpose()).mul(&j)
    }

    fn neg_matrix(&self) -> SpMatrix {
        SpMatrix {
            genus: self.genus,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|v| -v).collect())
                .collect(),
        }
    }

    pub fn apply(&self, v: &HomologyClass) -> HomologyClass {
        assert_eq!(self.genus, v.genus(), "genus mismatch");
        let n = self.genus.dim();
        let mut coeffs = vec![BigInt::zero(); n];
        for (i, row) in self.rows.iter().enumerate() {
            for j in 0..n {
                if !row[j].is_zero() {
                    coeffs[i] += &row[j] * v.coeff(j);
                }
            }
        }
        HomologyClass::from_coeffs(self.genus, coeffs).expect("length preserved")
    }

    /// Images of the `2g` basis vectors (the matrix columns).
    pub fn basis_images(&self) -> Vec<HomologyClass> {
        let n = self.genus.dim();
        (0..n)
            .map(|j| {
                let coeffs = (0..n).map(|i| self.rows[i][j].clone()).collect();
                HomologyClass::from_coeffs(self.genus, coeffs).expect("square matrix")
            })
            .collect()
    }

    /// `M^T J M = J`, checked exactly.
    pub fn is_symplectic(&self) -> bool {
        let j = Self::gram(self.genus);
        self.transpose().mul(&j).mul(self) == j
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.genus)
    }
}

/// Matrix of the transvection `b -> b + i(b, a) a` induced by a Dehn twist
/// about a curve of class `a`.  The zero class gives the identity.
pub fn transvection(a: &CurveClass, genus: Genus) -> SpMatrix {
    transvection_signed(a, 1, genus)
}

/// Transvection or its inverse (`b -> b - i(b, a) a` for `exp = -1`).
pub fn transvection_signed(a: &CurveClass, exp: i8, genus: Genus) -> SpMatrix {
    assert_eq!(a.genus(), genus, "genus mismatch");
    assert!(exp == 1 || exp == -1, "exponent must be +1 or -1");
    let n = genus.dim();
    let cls = a.class();
    let mut m = SpMatrix::identity(genus);
    for j in 0..n {
        let e = HomologyClass::basis(j, genus);
        let pairing = e.intersection(cls).expect("same genus") * int(exp as i64);
        if pairing.is_zero() {
            continue;
        }
        for i in 0..n {
            let add = &pairing * cls.coeff(i);
            m.rows[i][j] += add;
        }
    }
    m
}

/// Ordered product of the transvections of a twist word (first letter is
/// the leftmost factor and therefore acts last).
pub fn word_matrix(word: &TwistWord, genus: Genus) -> SpMatrix {
    let mut acc = SpMatrix::identity(genus);
    for letter in word.letters() {
        let m = transvection_signed(&letter.curve, letter.exp, genus);
        acc = acc.mul(&m);
    }
    acc
}

/// A word is Torelli at the homology level when its matrix is the identity.
pub fn is_torelli(word: &TwistWord, genus: Genus) -> bool {
    word_matrix(word, genus).is_identity()
}

/// Commuting relation: disjoint curves (proxy `i(a,b) = 0`) have commuting
/// twists.
pub fn check_commuting(a: &CurveClass, b: &CurveClass) -> Result<bool, MappingClassError> {
    let genus = a.genus();
    let pairing = a.class().intersection(b.class())?;
    if !pairing.is_zero() {
        return Err(MappingClassError::CommutingIntersection(pairing));
    }
    let ta = transvection(a, genus);
    let tb = transvection(b, genus);
    Ok(ta.mul(&tb) == tb.mul(&ta))
}

/// Braid relation `T_c = T_a T_b T_a^{-1}` with `c = (T_a)_* b`, for curves
/// meeting once (proxy `|i(a,b)| = 1`).
pub fn check_braid(a: &CurveClass, b: &CurveClass) -> Result<bool, MappingClassError> {
    let genus = a.genus();
    let pairing = a.class().intersection(b.class())?;
    if !pairing.abs().is_one() {
        return Err(MappingClassError::BraidIntersection(pairing));
    }
    let ta = transvection(a, genus);
    let tb = transvection(b, genus);
    let ta_inv = transvection_signed(a, -1, genus);
    // class of T_a(b)
    let c_class = b.class() + &a.class().scaled(&b.class().intersection(a.class())?);
    let c = CurveClass::new("braid-image", c_class)?;
    let tc = transvection(&c, genus);
    Ok(tc == ta.mul(&tb).mul(&ta_inv))
}

fn matches_up_to_sign(d: &HomologyClass, expected: &HomologyClass) -> bool {
    d == expected || *d == -expected
}

fn star_preconditions(
    a: &[&CurveClass; 3],
    b: &CurveClass,
    allow_equal_a13: bool,
) -> Result<(), MappingClassError> {
    for (idx, ai) in a.iter().enumerate() {
        let p = ai.class().intersection(b.class())?;
        if !p.is_one() {
            return Err(MappingClassError::Configuration(format!(
                "i(a{}, b) must be 1, got {p}",
                idx + 1
            )));
        }
    }
    for i in 0..3 {
        for j in (i + 1)..3 {
            if allow_equal_a13 && i == 0 && j == 2 {
                continue;
            }
            let p = a[i].class().intersection(a[j].class())?;
            if !p.is_zero() {
                return Err(MappingClassError::Configuration(format!(
                    "i(a{}, a{}) must be 0, got {p}",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

/// Star relation `(T_{a1} T_{a2} T_{a3} T_b)^3 = T_{d1} T_{d2} T_{d3}`.
///
/// The boundary classes are pinned by the bounding chains of the
/// configuration: `[d3] = [a1] - [a2]`, `[d1] = [a2] - [a3]`,
/// `[d2] = [a3] - [a1]`, each up to orientation (transvections do not see
/// the orientation of the twisting curve).
pub fn check_star(
    a: [&CurveClass; 3],
    b: &CurveClass,
    d: [&CurveClass; 3],
) -> Result<bool, MappingClassError> {
    let genus = b.genus();
    star_preconditions(&a, b, false)?;
    let expected = [
        (1usize, a[1].class() - a[2].class()), // d1 = a2 - a3
        (2usize, a[2].class() - a[0].class()), // d2 = a3 - a1
        (3usize, a[0].class() - a[1].class()), // d3 = a1 - a2
    ];
    for ((idx, exp), di) in expected.iter().zip([&d[0], &d[1], &d[2]]) {
        if !matches_up_to_sign(di.class(), exp) {
            return Err(MappingClassError::Configuration(format!(
                "class of d{idx} must be +/-({exp:?})",
            )));
        }
    }
    let pass = transvection(a[0], genus)
        .mul(&transvection(a[1], genus))
        .mul(&transvection(a[2], genus))
        .mul(&transvection(b, genus));
    let lhs = pass.mul(&pass).mul(&pass);
    let rhs = transvection(d[0], genus)
        .mul(&transvection(d[1], genus))
        .mul(&transvection(d[2], genus));
    Ok(lhs == rhs)
}

/// Chain relation `(T_{a1} T_{a2} T_{a1} T_b)^3 = T_{d1} T_{d3}`: the star
/// with `a3 = a1` and `[d2] = 0`.
pub fn check_chain(
    a1: &CurveClass,
    a2: &CurveClass,
    b: &CurveClass,
    d1: &CurveClass,
    d3: &CurveClass,
) -> Result<bool, MappingClassError> {
    let genus = b.genus();
    star_preconditions(&[a1, a2, a1], b, true)?;
    let exp_d1 = a2.class() - a1.class();
    let exp_d3 = a1.class() - a2.class();
    if !matches_up_to_sign(d1.class(), &exp_d1) {
        return Err(MappingClassError::Configuration(
            "class of d1 must be +/-([a2] - [a1])".into(),
        ));
    }
    if !matches_up_to_sign(d3.class(), &exp_d3) {
        return Err(MappingClassError::Configuration(
            "class of d3 must be +/-([a1] - [a2])".into(),
        ));
    }
    let pass = transvection(a1, genus)
        .mul(&transvection(a2, genus))
        .mul(&transvection(a1, genus))
        .mul(&transvection(b, genus));
    let lhs = pass.mul(&pass).mul(&pass);
    let rhs = transvection(d1, genus).mul(&transvection(d3, genus));
    Ok(lhs == rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::Genus;

    fn g(v: usize) -> Genus {
        Genus::new(v).unwrap()
    }

    fn curve(name: &str, genus: Genus, coeffs: &[i64]) -> CurveClass {
        CurveClass::new(name, HomologyClass::from_i64(genus, coeffs).unwrap()).unwrap()
    }

    fn xc(i: usize, genus: Genus) -> CurveClass {
        CurveClass::new(format!("x{i}"), HomologyClass::x(i, genus)).unwrap()
    }

    fn yc(i: usize, genus: Genus) -> CurveClass {
        CurveClass::new(format!("y{i}"), HomologyClass::y(i, genus)).unwrap()
    }

    #[test]
    fn transvection_on_basis() {
        let g2 = g(2);
        let t = transvection(&xc(1, g2), g2);
        // y1 -> y1 - x1, everything else fixed
        assert_eq!(
            t.apply(&HomologyClass::y(1, g2)),
            &HomologyClass::y(1, g2) - &HomologyClass::x(1, g2)
        );
        assert_eq!(t.apply(&HomologyClass::x(1, g2)), HomologyClass::x(1, g2));
        assert_eq!(t.apply(&HomologyClass::x(2, g2)), HomologyClass::x(2, g2));
        assert_eq!(t.apply(&HomologyClass::y(2, g2)), HomologyClass::y(2, g2));
    }

    #[test]
    fn transvection_zero_class_is_identity() {
        let g2 = g(2);
        let zero = CurveClass::new("sep", HomologyClass::zero(g2)).unwrap();
        assert!(transvection(&zero, g2).is_identity());
    }

    #[test]
    fn transvection_mixed_class_matrix() {
        // a = x1 + y2 at genus 2; expansion of the twist rule on each
        // basis vector, frozen
        let g2 = g(2);
        let a = curve("a", g2, &[1, 0, 0, 1]);
        let t = transvection(&a, g2);
        let expected = [[1i64, 1, -1, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 1, -1, 1]];
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(*t.entry(i, j), crate::int(expected[i][j]), "entry {i},{j}");
            }
        }
        assert!(t.is_symplectic());
    }

    #[test]
    fn word_matrix_basics() {
        let g2 = g(2);
        assert!(word_matrix(&TwistWord::empty(), g2).is_identity());

        let a = xc(1, g2);
        let w = TwistWord::new(vec![
            TwistLetter::twist(a.clone()),
            TwistLetter::inverse_twist(a),
        ]);
        assert!(word_matrix(&w, g2).is_identity());
    }

    #[test]
    fn braid_words_agree() {
        let g2 = g(2);
        let a = xc(1, g2);
        let b = yc(1, g2);
        let aba = TwistWord::new(vec![
            TwistLetter::twist(a.clone()),
            TwistLetter::twist(b.clone()),
            TwistLetter::twist(a.clone()),
        ]);
        let bab = TwistWord::new(vec![
            TwistLetter::twist(b.clone()),
            TwistLetter::twist(a),
            TwistLetter::twist(b),
        ]);
        assert_eq!(word_matrix(&aba, g2), word_matrix(&bab, g2));
    }

    #[test]
    fn symplectic_checks() {
        let g2 = g(2);
        assert!(SpMatrix::identity(g2).is_symplectic());
        let mut bad = SpMatrix::identity(g2);
        bad.rows[0][0] = crate::int(2);
        assert!(!bad.is_symplectic());
    }

    #[test]
    fn inverse_formula() {
        let g2 = g(2);
        let a = curve("a", g2, &[2, 1, 1, 0]);
        let b = curve("b", g2, &[0, 1, -1, 1]);
        let w = TwistWord::new(vec![TwistLetter::twist(a), TwistLetter::inverse_twist(b)]);
        let m = word_matrix(&w, g2);
        assert!(m.mul(&m.inverse()).is_identity());
        assert_eq!(m.inverse(), word_matrix(&w.inverse(), g2));
    }

    #[test]
    fn torelli_detection() {
        let g3 = g(3);
        // parallel copies of x3: same class, different names
        let xg = xc(3, g3);
        let xg_prime = CurveClass::new("x3'", HomologyClass::x(3, g3)).unwrap();
        let push = TwistWord::new(vec![
            TwistLetter::twist(xg.clone()),
            TwistLetter::inverse_twist(xg_prime),
        ]);
        assert!(is_torelli(&push, g3));

        let single = TwistWord::new(vec![TwistLetter::twist(xg)]);
        assert!(!is_torelli(&single, g3));

        // commutator of twists about disjoint classes
        let a = xc(1, g3);
        let b = xc(2, g3);
        let comm = TwistWord::new(vec![
            TwistLetter::twist(a.clone()),
            TwistLetter::twist(b.clone()),
            TwistLetter::inverse_twist(a),
            TwistLetter::inverse_twist(b),
        ]);
        assert!(is_torelli(&comm, g3));
    }

    #[test]
    fn commuting_relation() {
        let g2 = g(2);
        assert!(check_commuting(&xc(1, g2), &xc(2, g2)).unwrap());
        assert!(matches!(
            check_commuting(&xc(1, g2), &yc(1, g2)),
            Err(MappingClassError::CommutingIntersection(_))
        ));
    }

    #[test]
    fn braid_relation_cases() {
        let g2 = g(2);
        assert!(check_braid(&xc(1, g2), &yc(1, g2)).unwrap());
        // i(x1, y1 + x2) = 1 at genus >= 2
        let b = curve("b", g2, &[0, 1, 1, 0]);
        assert!(check_braid(&xc(1, g2), &b).unwrap());
        assert!(matches!(
            check_braid(&xc(1, g2), &xc(2, g2)),
            Err(MappingClassError::BraidIntersection(_))
        ));
    }

    fn star_config(genus: Genus) -> ([CurveClass; 3], CurveClass, [CurveClass; 3]) {
        let a1 = xc(1, genus);
        let a2 = xc(2, genus);
        let a3 = xc(3, genus);
        let b = curve("b", genus, &[0, 0, 0, 1, 1, 1]);
        let d1 = curve("d1", genus, &[0, 1, -1, 0, 0, 0]); // a2 - a3
        let d2 = curve("d2", genus, &[-1, 0, 1, 0, 0, 0]); // a3 - a1
        let d3 = curve("d3", genus, &[1, -1, 0, 0, 0, 0]); // a1 - a2
        ([a1, a2, a3], b, [d1, d2, d3])
    }

    #[test]
    fn star_relation_holds() {
        let g3 = g(3);
        let (a, b, d) = star_config(g3);
        assert!(check_star([&a[0], &a[1], &a[2]], &b, [&d[0], &d[1], &d[2]]).unwrap());
    }

    #[test]
    fn star_relation_cyclic_permutation() {
        let g3 = g(3);
        let (a, b, _) = star_config(g3);
        // relabel (a1, a2, a3) -> (a2, a3, a1) with matching d classes
        let d1 = curve("d1", g3, &[-1, 0, 1, 0, 0, 0]); // a3 - a1
        let d2 = curve("d2", g3, &[1, -1, 0, 0, 0, 0]); // a1 - a2
        let d3 = curve("d3", g3, &[0, 1, -1, 0, 0, 0]); // a2 - a3
        assert!(check_star([&a[1], &a[2], &a[0]], &b, [&d1, &d2, &d3]).unwrap());
    }

    #[test]
    fn star_relation_bad_d_class() {
        let g3 = g(3);
        let (a, b, d) = star_config(g3);
        let bad_d2 = xc(1, g3);
        assert!(matches!(
            check_star([&a[0], &a[1], &a[2]], &b, [&d[0], &bad_d2, &d[2]]),
            Err(MappingClassError::Configuration(_))
        ));
    }

    #[test]
    fn chain_relation_holds() {
        let g3 = g(3);
        let a1 = xc(1, g3);
        let a2 = xc(2, g3);
        let b = curve("b", g3, &[0, 0, 0, 1, 1, 0]);
        let d1 = curve("d1", g3, &[-1, 1, 0, 0, 0, 0]); // a2 - a1
        let d3 = curve("d3", g3, &[1, -1, 0, 0, 0, 0]); // a1 - a2
        assert!(check_chain(&a1, &a2, &b, &d1, &d3).unwrap());
    }

    #[test]
    fn chain_relation_degenerate() {
        // d1 = d3 = 0 forces [a1] = [a2]; both sides become the identity
        let g3 = g(3);
        let a1 = xc(1, g3);
        let a2 = CurveClass::new("a2", HomologyClass::x(1, g3)).unwrap();
        let b = yc(1, g3);
        let zero1 = CurveClass::new("d1", HomologyClass::zero(g3)).unwrap();
        let zero3 = CurveClass::new("d3", HomologyClass::zero(g3)).unwrap();
        assert!(check_chain(&a1, &a2, &b, &zero1, &zero3).unwrap());
    }

    #[test]
    fn chain_relation_bad_d() {
        let g3 = g(3);
        let a1 = xc(1, g3);
        let a2 = xc(2, g3);
        let b = curve("b", g3, &[0, 0, 0, 1, 1, 0]);
        let d1 = curve("d1", g3, &[-1, 1, 0, 0, 0, 0]);
        let bad_d3 = yc(3, g3);
        assert!(matches!(
            check_chain(&a1, &a2, &b, &d1, &bad_d3),
            Err(MappingClassError::Configuration(_))
        ));
    }

    #[test]
    fn conjugation_covariance() {
        // psi T_a psi^{-1} = T_{psi_* a} at the matrix level
        let g2 = g(2);
        let psi = TwistWord::new(vec![
            TwistLetter::twist(yc(1, g2)),
            TwistLetter::inverse_twist(xc(2, g2)),
            TwistLetter::twist(curve("c", g2, &[1, 1, 0, 0])),
        ]);
        let a = curve("a", g2, &[0, 1, 1, 0]);
        let m_psi = word_matrix(&psi, g2);
        let lhs = m_psi.mul(&transvection(&a, g2)).mul(&m_psi.inverse());
        let moved = CurveClass::new("psi_a", m_psi.apply(a.class())).unwrap();
        assert_eq!(lhs, transvection(&moved, g2));
    }

    #[test]
    fn rejects_imprimitive_curve() {
        let g2 = g(2);
        assert!(matches!(
            CurveClass::new("bad", HomologyClass::from_i64(g2, &[2, 0, 2, 0]).unwrap()),
            Err(MappingClassError::NotPrimitive(_))
        ));
    }
}
