//! Deciding whether a (sub)complex of Λu* carries a closed 2-form ω whose
//! top power ωⁿ is nonzero, where `dim u = 2n`.
//!
//! The decision is made on cochains. Over a basis ω₁…ω_b of the closed
//! 2-forms, the volume coefficient of `(Σ cᵢ ωᵢ)ⁿ` is a homogeneous
//! polynomial P in the cᵢ. If every coefficient of P is zero, no closed
//! 2-form in the complex is nondegenerate. Otherwise P is a nonzero
//! polynomial over the infinite field ℚ, so it has a rational non-root, and
//! any such point gives an exactly verified witness. A real witness exists
//! iff a rational one does.
//!
//! Because Λ^{2n} is one-dimensional, `[ω]ⁿ ≠ 0` in cohomology implies
//! `ωⁿ ≠ 0` on cochains. The cohomology-level check therefore never says yes
//! when the cochain-level decision says no; it is reported alongside the
//! verdict as corroboration.

mod polynomial;
pub mod search;

use num_traits::Zero;

pub use polynomial::{monomial_count, Exponents, TopPowerPolynomial, MONOMIAL_LIMIT};
pub use search::{SearchConfig, SearchPlan, StrategyRegistry, WitnessSearch};

use crate::cohomology::{Cohomology, CohomologyClass};
use crate::equivariant::Subcomplex;
use crate::error::{Error, Result};
use crate::exterior::ExteriorForm;
use crate::scalar::Scalar;

/// Basis of the closed 2-forms of the complex, in ambient coordinates, in the
/// deterministic kernel order of `d̄₂`.
pub fn closed_two_forms(complex: &Subcomplex) -> Vec<ExteriorForm> {
    if complex.top_degree() < 2 {
        return Vec::new();
    }
    complex
        .differential(2)
        .kernel_basis()
        .iter()
        .map(|v| complex.form(2, v))
        .collect()
}

pub fn half_dimension(complex: &Subcomplex) -> Result<usize> {
    let dim = complex.top_degree();
    if dim % 2 == 1 {
        Err(Error::OddDimension(dim))
    } else {
        Ok(dim / 2)
    }
}

pub fn top_power_polynomial(basis: &[ExteriorForm], dim: usize) -> Result<TopPowerPolynomial> {
    TopPowerPolynomial::expand(basis, dim)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SymplecticVerdict {
    Symplectic {
        witness: ExteriorForm,
        /// Coordinates of the witness in the closed 2-form basis.
        coefficients: Vec<Scalar>,
        /// Volume coefficient of witnessⁿ, recomputed by direct wedge powers.
        certificate: Scalar,
        strategy: &'static str,
    },
    /// Every coefficient of the top-power polynomial is zero.
    NotSymplectic,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decision {
    pub closed_two_forms: Vec<ExteriorForm>,
    pub polynomial: TopPowerPolynomial,
    pub verdict: SymplecticVerdict,
}

impl Decision {
    pub fn is_symplectic(&self) -> bool {
        matches!(self.verdict, SymplecticVerdict::Symplectic { .. })
    }

    pub fn certificate(&self) -> Option<&Scalar> {
        match &self.verdict {
            SymplecticVerdict::Symplectic { certificate, .. } => Some(certificate),
            SymplecticVerdict::NotSymplectic => None,
        }
    }

    pub fn witness(&self) -> Option<&ExteriorForm> {
        match &self.verdict {
            SymplecticVerdict::Symplectic { witness, .. } => Some(witness),
            SymplecticVerdict::NotSymplectic => None,
        }
    }
}

pub fn decide(complex: &Subcomplex, plan: &SearchPlan) -> Result<Decision> {
    let dim = complex.top_degree();
    half_dimension(complex)?;
    let closed = closed_two_forms(complex);
    let polynomial = top_power_polynomial(&closed, dim)?;
    let Some((coefficients, strategy)) = plan.find(&polynomial) else {
        return Ok(Decision {
            closed_two_forms: closed,
            polynomial,
            verdict: SymplecticVerdict::NotSymplectic,
        });
    };
    let witness = combine(complex, &closed, &coefficients);
    let check = check_symplectic_form(complex, &witness)?;
    let certificate = check.volume_coefficient.clone();
    assert!(check.is_symplectic(), "witness from a non-root must verify: {check:?}");
    assert_eq!(
        certificate,
        polynomial.evaluate(&coefficients),
        "polynomial and direct power disagree"
    );
    Ok(Decision {
        closed_two_forms: closed,
        polynomial,
        verdict: SymplecticVerdict::Symplectic {
            witness,
            coefficients,
            certificate,
            strategy,
        },
    })
}

fn combine(complex: &Subcomplex, forms: &[ExteriorForm], coefficients: &[Scalar]) -> ExteriorForm {
    forms
        .iter()
        .zip(coefficients)
        .filter(|(_, c)| !c.is_zero())
        .fold(ExteriorForm::zero(complex.basis(), 2), |acc, (f, c)| &acc + &f.scale(c))
}

/// Outcome of verifying a candidate symplectic form. Each condition is
/// reported on its own.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormCheck {
    pub closed: bool,
    pub in_subcomplex: bool,
    /// Volume coefficient of ωⁿ.
    pub volume_coefficient: Scalar,
}

impl FormCheck {
    pub fn nondegenerate(&self) -> bool {
        !self.volume_coefficient.is_zero()
    }

    pub fn is_symplectic(&self) -> bool {
        self.closed && self.in_subcomplex && self.nondegenerate()
    }

    /// The certificate when every condition holds.
    pub fn certificate(&self) -> Option<&Scalar> {
        self.is_symplectic().then_some(&self.volume_coefficient)
    }
}

/// Checks `dω = 0` with the full differential and computes the volume
/// coefficient of ωⁿ by repeated wedging.
pub fn check_symplectic_form(complex: &Subcomplex, omega: &ExteriorForm) -> Result<FormCheck> {
    let n = half_dimension(complex)?;
    if omega.degree() != 2 {
        return Err(Error::DegreeMismatch {
            expected: 2,
            found: omega.degree(),
        });
    }
    if omega.basis() != complex.basis() {
        return Err(Error::BasisMismatch);
    }
    Ok(FormCheck {
        closed: complex.full_differential().apply(omega).is_zero(),
        in_subcomplex: complex.coordinates(omega).is_some(),
        volume_coefficient: omega.power(n).volume_coefficient(),
    })
}

/// Whether some class `[ω] ∈ H²` has `[ω]ⁿ ≠ 0` in H^{2n}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyCheck {
    pub betti_two: usize,
    pub top_betti: usize,
    /// Class coordinate of `[ω]ⁿ` in H^{2n} as a polynomial in the
    /// coordinates of `[ω]` in the H² representative basis.
    pub polynomial: TopPowerPolynomial,
    pub witness: Option<CohomologyWitness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyWitness {
    pub class: CohomologyClass,
    pub representative: ExteriorForm,
    /// Coordinate of `[ω]ⁿ` in H^{2n}, computed by iterated cup products.
    pub top_class: CohomologyClass,
}

impl CohomologyCheck {
    pub fn exists(&self) -> bool {
        self.witness.is_some()
    }
}

pub fn csymplectic_cohomology_check(cohomology: &Cohomology, plan: &SearchPlan) -> Result<CohomologyCheck> {
    let complex = cohomology.complex();
    let dim = complex.top_degree();
    let n = half_dimension(complex)?;
    let reps = if dim >= 2 {
        cohomology.representatives(2)
    } else {
        Vec::new()
    };
    let volume_poly = top_power_polynomial(&reps, dim)?;
    let top_betti = cohomology.betti(dim);

    // H^{2n} is at most one-dimensional; the class of ωⁿ is κ times its
    // volume coefficient, where κ is the class coordinate of the volume form.
    let kappa = if top_betti == 0 {
        Scalar::zero()
    } else {
        let volume = ExteriorForm::monomial(complex.basis(), complex.basis().volume(), crate::scalar::one());
        cohomology.class_of(&volume)?.coordinates[0].clone()
    };
    let polynomial = volume_poly.scale(&kappa);

    let witness = match plan.find(&polynomial) {
        None => None,
        Some((coefficients, _)) => {
            let class = CohomologyClass {
                degree: 2,
                coordinates: coefficients,
            };
            let top_class = cohomology.cup_power(&class, n)?;
            assert!(!top_class.is_zero(), "cup power must agree with the polynomial");
            Some(CohomologyWitness {
                representative: cohomology.representative(&class),
                class,
                top_class,
            })
        }
    };
    Ok(CohomologyCheck {
        betti_two: cohomology.betti(2),
        top_betti,
        polynomial,
        witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ce::{CeDifferential, LieAlgebra};
    use crate::equivariant::{fixed_subcomplex, ActionGenerators};
    use crate::exterior::DualBasis;
    use crate::linalg::Matrix;
    use crate::scalar::int;
    use std::collections::BTreeMap;
    use std::sync::Arc;

    fn kt() -> Arc<CeDifferential> {
        let b = DualBasis::new(["alpha", "beta", "gamma", "delta"]).unwrap();
        let mut diffs = BTreeMap::new();
        diffs.insert(
            2,
            ExteriorForm::from_labels(&b, &[(int(-1), &["alpha", "beta"])]).unwrap(),
        );
        let g = LieAlgebra::from_dual_presentation(&b, &diffs).unwrap();
        Arc::new(CeDifferential::new(&g).unwrap())
    }

    fn invariant_kt() -> Subcomplex {
        let flip = Matrix::from_i64_rows(&[&[-1, 0, 0, 0], &[0, -1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]);
        fixed_subcomplex(&kt(), &ActionGenerators::new(vec![flip])).unwrap()
    }

    fn form(basis: &Arc<DualBasis>, terms: &[(i64, &[&str])]) -> ExteriorForm {
        let terms: Vec<(Scalar, &[&str])> = terms.iter().map(|(c, l)| (int(*c), *l)).collect();
        ExteriorForm::from_labels(basis, &terms).unwrap()
    }

    #[test]
    fn closed_two_form_examples() {
        let inv = invariant_kt();
        let closed: Vec<String> = closed_two_forms(&inv).iter().map(ToString::to_string).collect();
        assert_eq!(closed, vec!["alpha^beta"]);

        let full = Subcomplex::full(&kt());
        let closed: Vec<String> = closed_two_forms(&full).iter().map(ToString::to_string).collect();
        assert_eq!(
            closed,
            vec!["alpha^beta", "alpha^gamma", "alpha^delta", "beta^gamma", "beta^delta"]
        );

        let b = DualBasis::numbered(4);
        let abelian = Arc::new(CeDifferential::new(&LieAlgebra::abelian(&b)).unwrap());
        assert_eq!(closed_two_forms(&Subcomplex::full(&abelian)).len(), 6);
    }

    #[test]
    fn decide_examples() {
        let full = Subcomplex::full(&kt());
        let decision = decide(&full, &SearchPlan::default()).unwrap();
        assert!(decision.is_symplectic());
        let check = check_symplectic_form(&full, decision.witness().unwrap()).unwrap();
        assert_eq!(check.certificate(), decision.certificate());

        let inv = decide(&invariant_kt(), &SearchPlan::default()).unwrap();
        assert_eq!(inv.verdict, SymplecticVerdict::NotSymplectic);
        assert!(inv.polynomial.is_identically_zero());
    }

    #[test]
    fn check_examples() {
        let full = Subcomplex::full(&kt());
        let b = full.basis().clone();
        let omega = form(&b, &[(1, &["alpha", "delta"]), (1, &["beta", "gamma"])]);
        let check = check_symplectic_form(&full, &omega).unwrap();
        assert_eq!(check.certificate(), Some(&int(2)));

        let degenerate = check_symplectic_form(&full, &form(&b, &[(1, &["alpha", "beta"])])).unwrap();
        assert!(degenerate.closed && !degenerate.nondegenerate());

        let open = check_symplectic_form(&full, &form(&b, &[(1, &["gamma", "delta"])])).unwrap();
        assert!(!open.closed);

        // invariant but not closed, and closed but not invariant
        let inv = invariant_kt();
        let flip_check = check_symplectic_form(&inv, &omega).unwrap();
        assert!(flip_check.closed && !flip_check.in_subcomplex && flip_check.nondegenerate());
    }

    #[test]
    fn cohomology_check_examples() {
        let inv = Cohomology::compute(&invariant_kt()).unwrap();
        let check = csymplectic_cohomology_check(&inv, &SearchPlan::default()).unwrap();
        assert_eq!(check.betti_two, 0);
        assert!(!check.exists());

        let full = Cohomology::compute(&Subcomplex::full(&kt())).unwrap();
        let check = csymplectic_cohomology_check(&full, &SearchPlan::default()).unwrap();
        assert!(check.exists());

        let b = DualBasis::numbered(4);
        let abelian = Arc::new(CeDifferential::new(&LieAlgebra::abelian(&b)).unwrap());
        let h = Cohomology::compute(&Subcomplex::full(&abelian)).unwrap();
        let check = csymplectic_cohomology_check(&h, &SearchPlan::default()).unwrap();
        let witness = check.witness.unwrap();
        assert!(!witness.top_class.is_zero());
        let omega = form(&b, &[(1, &["e1", "e2"]), (1, &["e3", "e4"])]);
        let class = h.class_of(&omega).unwrap();
        assert!(!h.cup_power(&class, 2).unwrap().is_zero());
    }

    #[test]
    fn odd_dimension_is_an_error() {
        let b = DualBasis::numbered(3);
        let d = Arc::new(CeDifferential::new(&LieAlgebra::abelian(&b)).unwrap());
        assert!(matches!(
            decide(&Subcomplex::full(&d), &SearchPlan::default()),
            Err(Error::OddDimension(3))
        ));
    }
}
