//! The symbolic top-power polynomial against direct wedge powers, and the
//! cochain verdict against the cohomology-level check.

use std::sync::Arc;

use num_traits::Zero;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cesymp::builtins;
use cesymp::symplectic::{check_symplectic_form, closed_two_forms, csymplectic_cohomology_check, top_power_polynomial};
use cesymp::testing::random_rational;
use cesymp::{decide, fixed_subcomplex, CeDifferential, Cohomology, ExteriorForm, SearchPlan, Subcomplex};

fn complexes() -> Vec<(String, Subcomplex)> {
    let mut out = Vec::new();
    for name in builtins::names() {
        let file = builtins::get(&name).unwrap();
        if file.generators.len() % 2 == 1 {
            continue;
        }
        let d = Arc::new(CeDifferential::new(&file.algebra().unwrap()).unwrap());
        out.push((name.clone(), Subcomplex::full(&d)));
        if !file.action_generators.is_empty() {
            out.push((
                format!("{name} invariant"),
                fixed_subcomplex(&d, &file.action()).unwrap(),
            ));
        }
    }
    out
}

fn combine(forms: &[ExteriorForm], c: &[cesymp::Scalar], basis: &Arc<cesymp::DualBasis>) -> ExteriorForm {
    forms
        .iter()
        .zip(c)
        .fold(ExteriorForm::zero(basis, 2), |acc, (f, x)| &acc + &f.scale(x))
}

#[test]
fn polynomial_matches_direct_power_at_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for (name, complex) in complexes() {
        let dim = complex.top_degree();
        let forms = closed_two_forms(&complex);
        let p = top_power_polynomial(&forms, dim).unwrap();
        for _ in 0..100 {
            let c: Vec<_> = (0..forms.len()).map(|_| random_rational(&mut rng, 9)).collect();
            let omega = combine(&forms, &c, complex.basis());
            let direct = omega.power(dim / 2).volume_coefficient();
            assert_eq!(p.evaluate(&c), direct, "{name} at {c:?}");
        }
    }
}

#[test]
fn cohomology_witness_implies_cochain_witness() {
    let plan = SearchPlan::default();
    for (name, complex) in complexes() {
        let decision = decide(&complex, &plan).unwrap();
        let check = csymplectic_cohomology_check(&Cohomology::compute(&complex).unwrap(), &plan).unwrap();
        if check.exists() {
            assert!(decision.is_symplectic(), "{name}");
            let w = check.witness.unwrap();
            // the representative is itself a closed form with nonzero top power
            assert!(
                check_symplectic_form(&complex, &w.representative)
                    .unwrap()
                    .is_symplectic(),
                "{name}"
            );
        }
    }
}

#[test]
fn not_symplectic_verdicts_survive_random_sampling() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let plan = SearchPlan::default();
    let mut checked = 0;
    for (name, complex) in complexes() {
        let decision = decide(&complex, &plan).unwrap();
        if decision.is_symplectic() {
            continue;
        }
        checked += 1;
        let n = complex.top_degree() / 2;
        for _ in 0..100 {
            let c: Vec<_> = (0..decision.closed_two_forms.len())
                .map(|_| random_rational(&mut rng, 20))
                .collect();
            let omega = combine(&decision.closed_two_forms, &c, complex.basis());
            assert!(omega.power(n).volume_coefficient().is_zero(), "{name}");
        }
    }
    assert_eq!(checked, 2, "h-twisted and the invariant gamma complex");
}

#[test]
fn witnesses_verify_on_every_symplectic_example() {
    let plan = SearchPlan::default();
    for (name, complex) in complexes() {
        let decision = decide(&complex, &plan).unwrap();
        if let Some(w) = decision.witness() {
            let check = check_symplectic_form(&complex, w).unwrap();
            assert!(check.closed && check.in_subcomplex && check.nondegenerate(), "{name}");
            assert_eq!(Some(&check.volume_coefficient), decision.certificate());
        }
    }
}
