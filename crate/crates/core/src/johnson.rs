//! Johnson homomorphism values on words of conjugated point-pushes, the
//! contracted Johnson map, crossed-homomorphism bookkeeping (cocycles and
//! coboundaries), and the two flux-difference identities as checkable
//! statements.
//!
//! Conventions.  A point-push along a simple closed curve of class `c`
//! has Johnson value `omega /\ c`: for `c = x_g` this is
//! `(sum_{i<g} x_i /\ y_i) /\ x_g` because the omitted term has a repeated
//! factor, and the general form follows from equivariance — conjugating a
//! push by `psi` pushes the value forward along the diagonal action, the
//! integral symplectic group carries any primitive class to `x_g`, and
//! `omega` itself is invariant.  Words multiply additively (the map is a
//! homomorphism and pushes act trivially on homology).
//!
//! The two identities checked here, on a word `w` of Hamiltonian pushes:
//!
//! * section flux: `Flsec(w) = (g/(g-1)) D^{-1}(contract(tau(w)))`, where
//!   the left side is the closed form `b -> g i(a, b)` summed over letters;
//! * Jacobian flux prediction: `Flsec(w) - Fljac(w) = D^{-1}(contract(tau(w)))`,
//!   consumed as the definition of the predicted `Fljac`, which therefore
//!   equals `(1/(g-1)) D^{-1}(contract(tau(w)))`.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::homology::{
    poincare_dual_inv, CohomologyFunctional, Genus, HomologyClass, HomologyError, SecondWedge,
    ThirdWedge,
};
use crate::mapping_class::{word_matrix, CurveClass, MappingClassError, SpMatrix, TwistWord};
use crate::{int, rat};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum JohnsonError {
    #[error("point-push requires a nonzero curve class, got `{0}`")]
    ZeroClass(String),
    #[error("crossed homomorphism has no value for generator `{0}`")]
    MissingGenerator(String),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    MappingClass(#[from] MappingClassError),
}

/// One letter of a Torelli word: `psi P_c^{e} psi^{-1}` for a twist word
/// `psi`, a push curve `c` and `e = +/-1`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ConjugatedPush {
    pub conjugator: TwistWord,
    pub curve: CurveClass,
    pub exp: i8,
}

impl ConjugatedPush {
    pub fn push(curve: CurveClass) -> Self {
        ConjugatedPush {
            conjugator: TwistWord::empty(),
            curve,
            exp: 1,
        }
    }

    pub fn new(conjugator: TwistWord, curve: CurveClass, exp: i8) -> Self {
        assert!(exp == 1 || exp == -1, "exponent must be +1 or -1");
        ConjugatedPush {
            conjugator,
            curve,
            exp,
        }
    }

    /// Homology class of the pushed-around curve, `psi_* [c]`.
    pub fn pushed_class(&self, genus: Genus) -> HomologyClass {
        word_matrix(&self.conjugator, genus).apply(self.curve.class())
    }
}

/// Product of conjugated point-pushes.  Pushes act trivially on homology,
/// so the induced symplectic matrix of any such word is the identity.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct TorelliWord {
    letters: Vec<ConjugatedPush>,
}

impl TorelliWord {
    pub fn empty() -> Self {
        TorelliWord::default()
    }

    pub fn new(letters: Vec<ConjugatedPush>) -> Self {
        TorelliWord { letters }
    }

    pub fn letters(&self) -> &[ConjugatedPush] {
        &self.letters
    }

    pub fn concat(&self, other: &TorelliWord) -> TorelliWord {
        let mut letters = self.letters.clone();
        letters.extend(other.letters.iter().cloned());
        TorelliWord { letters }
    }

    pub fn inverse(&self) -> TorelliWord {
        TorelliWord {
            letters: self
                .letters
                .iter()
                .rev()
                .map(|l| ConjugatedPush {
                    conjugator: l.conjugator.clone(),
                    curve: l.curve.clone(),
                    exp: -l.exp,
                })
                .collect(),
        }
    }

    /// `psi w psi^{-1}`, obtained by prefixing every conjugator.
    pub fn conjugated_by(&self, psi: &TwistWord) -> TorelliWord {
        TorelliWord {
            letters: self
                .letters
                .iter()
                .map(|l| ConjugatedPush {
                    conjugator: psi.concat(&l.conjugator),
                    curve: l.curve.clone(),
                    exp: l.exp,
                })
                .collect(),
        }
    }
}

/// Johnson value of a Torelli word: every letter contributes the diagonal
/// push-forward of `omega /\ c` along its conjugator, with sign.
pub fn johnson(word: &TorelliWord, genus: Genus) -> ThirdWedge {
    let omega = SecondWedge::omega(genus);
    let mut acc = ThirdWedge::zero(genus);
    for letter in word.letters() {
        let base = ThirdWedge::wedge2_with(&omega, letter.curve.class());
        let m = word_matrix(&letter.conjugator, genus);
        let moved = base.transform_basis(&m.basis_images());
        let signed = moved.scaled(&int(letter.exp as i64));
        acc = &acc + &signed;
    }
    acc
}

/// `contract(johnson(word))`; a single push along class `a` yields
/// `(g - 1) a`.
pub fn contracted_johnson(word: &TorelliWord, genus: Genus) -> HomologyClass {
    johnson(word, genus).contract()
}

/// Closed-form section flux of a Hamiltonian point-push along `a`:
/// the functional `b -> g * i(a, b)`.
pub fn flsec_push(a: &CurveClass, genus: Genus) -> Result<CohomologyFunctional, JohnsonError> {
    if a.class().is_zero() {
        return Err(JohnsonError::ZeroClass(a.name().to_string()));
    }
    let dual = poincare_dual_inv(a.class());
    Ok(dual.scaled(&rat(genus.get() as i64, 1)))
}

/// Section flux of a word of Hamiltonian pushes.  The module action of a
/// Torelli element is trivial, so the crossed-homomorphism rule reduces to
/// a sum over letters; a conjugated push is the push along the image curve.
/// Letters with nullhomologous push curves contribute zero.
pub fn flsec_torelli(word: &TorelliWord, genus: Genus) -> CohomologyFunctional {
    let mut acc = CohomologyFunctional::zero(genus);
    for letter in word.letters() {
        let moved = letter.pushed_class(genus);
        if moved.is_zero() {
            continue;
        }
        let value =
            poincare_dual_inv(&moved).scaled(&rat(genus.get() as i64 * letter.exp as i64, 1));
        acc = &acc + &value;
    }
    acc
}

/// Verifies the section-flux identity on a push word:
/// `flsec_torelli(w) = (g/(g-1)) D^{-1}(contract(johnson(w)))`, exactly.
pub fn theorem_a_check(word: &TorelliWord, genus: Genus) -> bool {
    let lhs = flsec_torelli(word, genus);
    let g = genus.get() as i64;
    let rhs = poincare_dual_inv(&contracted_johnson(word, genus)).scaled(&rat(g, g - 1));
    lhs == rhs
}

/// Predicted Jacobian flux of a push word:
/// `Fljac(w) = flsec_torelli(w) - D^{-1}(contract(johnson(w)))`.
pub fn theorem_b_predict_fljac(word: &TorelliWord, genus: Genus) -> CohomologyFunctional {
    let lhs = flsec_torelli(word, genus);
    let corr = poincare_dual_inv(&contracted_johnson(word, genus));
    &lhs - &corr
}

/// Coefficient consistency of the two correction terms: the predicted
/// `Fljac` equals `(1/(g-1)) D^{-1}(contract(johnson(w)))` and differs from
/// `flsec_torelli` by the full dual correction.
pub fn correction_coefficients_check(word: &TorelliWord, genus: Genus) -> bool {
    let g = genus.get() as i64;
    let dual = poincare_dual_inv(&contracted_johnson(word, genus));
    let pred = theorem_b_predict_fljac(word, genus);
    let flsec = flsec_torelli(word, genus);
    pred == dual.scaled(&rat(1, g - 1)) && &flsec - &pred == dual
}

/// Left module action `(phi . f)(c) = f(phi^{-1}_* c)` on functionals.
pub fn act_on_functional(m: &SpMatrix, f: &CohomologyFunctional) -> CohomologyFunctional {
    let mt = m.inverse().transpose();
    let n = m.genus().dim();
    let mut coeffs = vec![BigRational::zero(); n];
    for (i, coeff) in coeffs.iter_mut().enumerate() {
        for j in 0..n {
            let e = mt.entry(i, j);
            if !e.is_zero() {
                *coeff += BigRational::from(e.clone()) * &f.coeffs()[j];
            }
        }
    }
    CohomologyFunctional::from_coeffs(m.genus(), coeffs).expect("dimension preserved")
}

/// Direct coboundary value `delta kappa(w) = w . kappa - kappa`; vanishes
/// whenever the word acts trivially on homology.
pub fn coboundary_value(
    kappa: &CohomologyFunctional,
    word: &TwistWord,
    genus: Genus,
) -> CohomologyFunctional {
    let m = word_matrix(word, genus);
    &act_on_functional(&m, kappa) - kappa
}

/// A crossed homomorphism presented by its values on signed twist letters
/// and extended to words by the cocycle rule `f(ab) = a . f(b) + f(a)`.
///
/// The object is partial: it is defined on exactly the words whose letters
/// carry stored values (a missing inverse-letter value is derived from the
/// forced relation `f(a^{-1}) = -(a^{-1} . f(a))`).  Words are freely
/// reduced before expansion, which is what makes the cocycle identity a
/// real constraint: letter values that disagree with the forced relation
/// fail it on pairs whose concatenation cancels.
#[derive(Clone, Debug)]
pub struct CrossedHom {
    genus: Genus,
    values: BTreeMap<(String, i8), (CurveClass, CohomologyFunctional)>,
}

impl CrossedHom {
    pub fn new(genus: Genus) -> Self {
        CrossedHom {
            genus,
            values: BTreeMap::new(),
        }
    }

    pub fn genus(&self) -> Genus {
        self.genus
    }

    /// Store the value on one signed letter.
    pub fn set_letter_value(&mut self, curve: CurveClass, exp: i8, value: CohomologyFunctional) {
        assert!(exp == 1 || exp == -1, "exponent must be +1 or -1");
        self.values
            .insert((curve.name().to_string(), exp), (curve, value));
    }

    /// Store the value on a twist and the forced value on its inverse.
    pub fn set_value(&mut self, curve: CurveClass, value: CohomologyFunctional) {
        let m_inv = crate::mapping_class::transvection_signed(&curve, -1, self.genus);
        let inv_value = -&act_on_functional(&m_inv, &value);
        self.set_letter_value(curve.clone(), 1, value);
        self.set_letter_value(curve, -1, inv_value);
    }

    pub fn value_of(&self, name: &str, exp: i8) -> Option<&CohomologyFunctional> {
        self.values.get(&(name.to_string(), exp)).map(|(_, v)| v)
    }

    /// The coboundary of `kappa` restricted to the given generating twists:
    /// `delta kappa(T_a^e) = T_a^e . kappa - kappa` on both exponents.
    pub fn coboundary(kappa: &CohomologyFunctional, curves: &[CurveClass], genus: Genus) -> Self {
        let mut out = CrossedHom::new(genus);
        for c in curves {
            for exp in [1i8, -1] {
                let m = crate::mapping_class::transvection_signed(c, exp, genus);
                let val = &act_on_functional(&m, kappa) - kappa;
                out.set_letter_value(c.clone(), exp, val);
            }
        }
        out
    }

    fn letter_value(
        &self,
        letter: &crate::mapping_class::TwistLetter,
    ) -> Result<(CurveClass, CohomologyFunctional), JohnsonError> {
        let key = (letter.curve.name().to_string(), letter.exp);
        if let Some((curve, v)) = self.values.get(&key) {
            return Ok((curve.clone(), v.clone()));
        }
        // derive from the opposite exponent when available
        let opp = (letter.curve.name().to_string(), -letter.exp);
        if let Some((curve, v)) = self.values.get(&opp) {
            let m = crate::mapping_class::transvection_signed(curve, letter.exp, self.genus);
            return Ok((curve.clone(), -&act_on_functional(&m, v)));
        }
        Err(JohnsonError::MissingGenerator(
            letter.curve.name().to_string(),
        ))
    }

    /// Evaluate on a word by the cocycle rule, after free reduction of
    /// adjacent mutually inverse letters of the same curve.
    pub fn eval(&self, word: &TwistWord) -> Result<CohomologyFunctional, JohnsonError> {
        let mut reduced: Vec<&crate::mapping_class::TwistLetter> = Vec::new();
        for letter in word.letters() {
            match reduced.last() {
                Some(top) if top.curve.name() == letter.curve.name() && top.exp == -letter.exp => {
                    reduced.pop();
                }
                _ => reduced.push(letter),
            }
        }
        let mut acc = CohomologyFunctional::zero(self.genus);
        let mut prefix = SpMatrix::identity(self.genus);
        for letter in reduced {
            let (curve, letter_value) = self.letter_value(letter)?;
            let m = crate::mapping_class::transvection_signed(&curve, letter.exp, self.genus);
            acc = &acc + &act_on_functional(&prefix, &letter_value);
            prefix = prefix.mul(&m);
        }
        Ok(acc)
    }

    /// Check `f(ab) = a . f(b) + f(a)` on each supplied pair of words,
    /// expanding both sides with the generator rule.
    pub fn cocycle_check(&self, pairs: &[(TwistWord, TwistWord)]) -> Result<bool, JohnsonError> {
        for (a, b) in pairs {
            let lhs = self.eval(&a.concat(b))?;
            let ma = word_matrix(a, self.genus);
            let rhs = &act_on_functional(&ma, &self.eval(b)?) + &self.eval(a)?;
            if lhs != rhs {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::poincare_dual;
    use crate::mapping_class::{is_torelli, transvection, TwistLetter};

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

    /// Triple expansion of (sum_{i<g} x_i /\ y_i) /\ x_g, built term by term.
    fn theorem_value(genus: Genus) -> ThirdWedge {
        let gv = genus.get();
        let xg = HomologyClass::x(gv, genus);
        let mut acc = ThirdWedge::zero(genus);
        for i in 1..gv {
            acc = &acc
                + &ThirdWedge::wedge3(
                    &HomologyClass::x(i, genus),
                    &HomologyClass::y(i, genus),
                    &xg,
                );
        }
        acc
    }

    #[test]
    fn push_value_matches_display() {
        for gv in 2..=4 {
            let gg = g(gv);
            let w = TorelliWord::new(vec![ConjugatedPush::push(xc(gv, gg))]);
            assert_eq!(johnson(&w, gg), theorem_value(gg));
        }
    }

    #[test]
    fn push_inverse_cancels() {
        let g2 = g(2);
        let c = curve("c", g2, &[1, 2, 0, 1]);
        let w = TorelliWord::new(vec![
            ConjugatedPush::new(TwistWord::empty(), c.clone(), 1),
            ConjugatedPush::new(TwistWord::empty(), c, -1),
        ]);
        assert!(johnson(&w, g2).is_zero());
    }

    #[test]
    fn conjugated_push_is_push_along_image() {
        // psi P_{x1} psi^{-1} with psi = T_{y1}: value omega /\ psi_* x1
        let g2 = g(2);
        let psi = TwistWord::new(vec![TwistLetter::twist(yc(1, g2))]);
        let w = TorelliWord::new(vec![ConjugatedPush::new(psi.clone(), xc(1, g2), 1)]);
        let m = word_matrix(&psi, g2);
        let moved = m.apply(&HomologyClass::x(1, g2));
        assert_eq!(moved, &HomologyClass::x(1, g2) + &HomologyClass::y(1, g2));
        let direct = ThirdWedge::wedge2_with(&SecondWedge::omega(g2), &moved);
        assert_eq!(johnson(&w, g2), direct);
    }

    #[test]
    fn omega_invariance_under_twist_words() {
        let g3 = g(3);
        let psi = TwistWord::new(vec![
            TwistLetter::twist(curve("u", g3, &[1, 0, 1, 0, 0, 1])),
            TwistLetter::inverse_twist(yc(2, g3)),
            TwistLetter::twist(xc(3, g3)),
        ]);
        let m = word_matrix(&psi, g3);
        let om = SecondWedge::omega(g3);
        assert_eq!(om.transform_basis(&m.basis_images()), om);
    }

    #[test]
    fn contracted_values() {
        let g3 = g(3);
        let w3 = TorelliWord::new(vec![ConjugatedPush::push(xc(3, g3))]);
        assert_eq!(
            contracted_johnson(&w3, g3),
            HomologyClass::x(3, g3).scaled(&int(2))
        );

        let g2 = g(2);
        let w2 = TorelliWord::new(vec![ConjugatedPush::push(xc(2, g2))]);
        assert_eq!(contracted_johnson(&w2, g2), HomologyClass::x(2, g2));
    }

    #[test]
    fn contracted_sum_word() {
        let g3 = g(3);
        let a = curve("a", g3, &[1, 0, 0, 0, 1, 0]);
        let b = curve("b", g3, &[0, 1, 0, 1, 0, 0]);
        let w = TorelliWord::new(vec![
            ConjugatedPush::push(a.clone()),
            ConjugatedPush::push(b.clone()),
        ]);
        let expected = (a.class() + b.class()).scaled(&int(2));
        assert_eq!(contracted_johnson(&w, g3), expected);
    }

    #[test]
    fn flsec_push_values() {
        let g3 = g(3);
        let f = flsec_push(&xc(3, g3), g3).unwrap();
        assert_eq!(f.evaluate(&HomologyClass::y(3, g3)), rat(3, 1));
        assert_eq!(f.evaluate(&HomologyClass::x(3, g3)), rat(0, 1));

        let g2 = g(2);
        let f = flsec_push(&xc(1, g2), g2).unwrap();
        let target = &HomologyClass::y(1, g2) + &HomologyClass::x(2, g2);
        assert_eq!(f.evaluate(&target), rat(2, 1));

        let zero = CurveClass::new("sep", HomologyClass::zero(g2)).unwrap();
        assert!(matches!(
            flsec_push(&zero, g2),
            Err(JohnsonError::ZeroClass(_))
        ));
    }

    #[test]
    fn theorem_a_on_simple_words() {
        for gv in 2..=4 {
            let gg = g(gv);
            let w = TorelliWord::new(vec![ConjugatedPush::push(xc(gv, gg))]);
            assert!(theorem_a_check(&w, gg));
        }
        assert!(theorem_a_check(&TorelliWord::empty(), g(2)));
    }

    #[test]
    fn theorem_a_with_conjugators() {
        let g3 = g(3);
        let psi = TwistWord::new(vec![
            TwistLetter::twist(yc(1, g3)),
            TwistLetter::twist(curve("v", g3, &[0, 1, 1, 0, 0, 0])),
        ]);
        let w = TorelliWord::new(vec![
            ConjugatedPush::new(psi, xc(1, g3), -1),
            ConjugatedPush::push(yc(2, g3)),
        ]);
        assert!(theorem_a_check(&w, g3));
        assert!(correction_coefficients_check(&w, g3));
    }

    #[test]
    fn theorem_b_prediction_for_push() {
        // prediction for P_{x_g} is b -> i(x_g, b), the dual beta_g
        for gv in 2..=4 {
            let gg = g(gv);
            let w = TorelliWord::new(vec![ConjugatedPush::push(xc(gv, gg))]);
            let pred = theorem_b_predict_fljac(&w, gg);
            assert_eq!(pred, CohomologyFunctional::beta(gv, gg));
            assert_eq!(poincare_dual(&pred), (&HomologyClass::x(gv, gg)).into());
        }
        assert!(theorem_b_predict_fljac(&TorelliWord::empty(), g(2)).is_zero());
    }

    #[test]
    fn equivariance_of_johnson() {
        let g3 = g(3);
        let psi = TwistWord::new(vec![
            TwistLetter::twist(curve("u", g3, &[1, 1, 0, 0, 0, 0])),
            TwistLetter::inverse_twist(yc(3, g3)),
        ]);
        let inner_conj = TwistWord::new(vec![TwistLetter::twist(xc(2, g3))]);
        let w = TorelliWord::new(vec![
            ConjugatedPush::new(inner_conj, yc(1, g3), 1),
            ConjugatedPush::push(xc(3, g3)),
        ]);
        let lhs = johnson(&w.conjugated_by(&psi), g3);
        let m = word_matrix(&psi, g3);
        let rhs = johnson(&w, g3).transform_basis(&m.basis_images());
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn coboundary_values() {
        let g2 = g(2);
        let x1 = xc(1, g2);
        let phi = TwistWord::new(vec![TwistLetter::twist(x1.clone())]);

        // kappa = alpha_1: (phi^{-1})_* y1 = y1 + x1, so the coboundary
        // moves the evaluation by 1
        let kappa = CohomologyFunctional::alpha(1, g2);
        let val = coboundary_value(&kappa, &phi, g2);
        assert_eq!(val.evaluate(&HomologyClass::y(1, g2)), rat(1, 1));

        // kappa = beta_1 evaluates the same before and after
        let kappa = CohomologyFunctional::beta(1, g2);
        let val = coboundary_value(&kappa, &phi, g2);
        assert_eq!(val.evaluate(&HomologyClass::y(1, g2)), rat(0, 1));

        // identity word kills every coboundary
        let val = coboundary_value(&kappa, &TwistWord::empty(), g2);
        assert!(val.is_zero());
    }

    #[test]
    fn coboundary_vanishes_on_torelli_words() {
        let g3 = g(3);
        let xg = xc(3, g3);
        let xg_prime = CurveClass::new("x3'", HomologyClass::x(3, g3)).unwrap();
        let push = TwistWord::new(vec![
            TwistLetter::twist(xg),
            TwistLetter::inverse_twist(xg_prime),
        ]);
        let kappa =
            CohomologyFunctional::from_coeffs(g3, (0..6).map(|k| rat(k as i64 - 2, 3)).collect())
                .unwrap();
        assert!(coboundary_value(&kappa, &push, g3).is_zero());
    }

    #[test]
    fn generator_coboundary_matches_direct() {
        let g2 = g(2);
        let curves = vec![
            xc(1, g2),
            xc(2, g2),
            yc(1, g2),
            yc(2, g2),
            curve("m", g2, &[1, 0, 1, 0]),
        ];
        let kappa = CohomologyFunctional::from_coeffs(
            g2,
            vec![rat(1, 2), rat(-1, 3), rat(2, 1), rat(0, 1)],
        )
        .unwrap();
        let f = CrossedHom::coboundary(&kappa, &curves, g2);

        let word = TwistWord::new(vec![
            TwistLetter::twist(curves[0].clone()),
            TwistLetter::inverse_twist(curves[2].clone()),
            TwistLetter::twist(curves[4].clone()),
            TwistLetter::twist(curves[1].clone()),
        ]);
        assert_eq!(f.eval(&word).unwrap(), coboundary_value(&kappa, &word, g2));
    }

    #[test]
    fn cocycle_check_for_coboundaries() {
        let g2 = g(2);
        let curves = vec![
            xc(1, g2),
            xc(2, g2),
            yc(1, g2),
            yc(2, g2),
            curve("m", g2, &[1, 0, 1, 0]),
            curve("n", g2, &[0, 1, 1, 1]),
        ];
        let kappa = CohomologyFunctional::alpha(2, g2);
        let f = CrossedHom::coboundary(&kappa, &curves, g2);

        let mut pairs = Vec::new();
        for i in 0..curves.len() {
            for j in 0..curves.len() {
                // the concatenation cancels across the boundary, so the
                // stored inverse values are genuinely constrained
                let a = TwistWord::new(vec![TwistLetter::twist(curves[i].clone())]);
                let b = TwistWord::new(vec![
                    TwistLetter::inverse_twist(curves[i].clone()),
                    TwistLetter::twist(curves[j].clone()),
                ]);
                pairs.push((a, b));
                let plain = TwistWord::new(vec![
                    TwistLetter::twist(curves[j].clone()),
                    TwistLetter::inverse_twist(curves[i].clone()),
                ]);
                pairs.push((plain.clone(), plain));
                let mixed = TwistWord::new(vec![
                    TwistLetter::inverse_twist(curves[i].clone()),
                    TwistLetter::twist(curves[j].clone()),
                    TwistLetter::twist(curves[i].clone()),
                ]);
                let tail = TwistWord::new(vec![
                    TwistLetter::inverse_twist(curves[i].clone()),
                    TwistLetter::inverse_twist(curves[j].clone()),
                ]);
                pairs.push((mixed, tail));
            }
        }
        assert!(pairs.len() >= 100);
        assert!(f.cocycle_check(&pairs).unwrap());

        // corrupt the positive-letter value only, leaving the stored
        // inverse value honest; some cancelling pair must now fail
        let mut bad = f.clone();
        let mut broken = CohomologyFunctional::alpha(1, g2);
        broken = &broken + &CohomologyFunctional::beta(2, g2);
        bad.set_letter_value(curves[0].clone(), 1, broken);
        assert!(!bad.cocycle_check(&pairs).unwrap());
    }

    #[test]
    fn cocycle_additive_on_torelli() {
        // on words acting trivially the rule degrades to additivity
        let g3 = g(3);
        let xg = xc(3, g3);
        let xg_prime = CurveClass::new("x3'", HomologyClass::x(3, g3)).unwrap();
        let mut f = CrossedHom::new(g3);
        f.set_value(xg.clone(), CohomologyFunctional::alpha(1, g3));
        f.set_value(xg_prime.clone(), CohomologyFunctional::beta(2, g3));

        let a = TwistWord::new(vec![
            TwistLetter::twist(xg.clone()),
            TwistLetter::inverse_twist(xg_prime.clone()),
        ]);
        assert!(is_torelli(&a, g3));
        let sum = &f.eval(&a).unwrap() + &f.eval(&a).unwrap();
        assert_eq!(f.eval(&a.concat(&a)).unwrap(), sum);
    }

    #[test]
    fn missing_generator_reported() {
        let g2 = g(2);
        let f = CrossedHom::new(g2);
        let word = TwistWord::new(vec![TwistLetter::twist(xc(1, g2))]);
        assert!(matches!(
            f.eval(&word),
            Err(JohnsonError::MissingGenerator(_))
        ));
    }

    #[test]
    fn act_on_functional_is_action() {
        // (phi . alpha)(c) = alpha(phi^{-1} c) on a sample
        let g2 = g(2);
        let m = transvection(&xc(1, g2), g2);
        let alpha = CohomologyFunctional::alpha(1, g2);
        let acted = act_on_functional(&m, &alpha);
        let c = HomologyClass::from_i64(g2, &[1, -1, 2, 0]).unwrap();
        assert_eq!(acted.evaluate(&c), alpha.evaluate(&m.inverse().apply(&c)));
        // identity acts trivially
        let id = SpMatrix::identity(g2);
        assert_eq!(act_on_functional(&id, &alpha), alpha);
    }
}
