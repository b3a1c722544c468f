//! Random inputs for property tests and the structural acceptance checks.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ce::{CeDifferential, LieAlgebra};
use crate::exterior::{DualBasis, ExteriorForm};
use crate::scalar::{self, Scalar};

/// A random nilpotent Lie algebra on `dim` generators `e1..en`, built as a
/// tower of central extensions: each `d e_k` is a random closed 2-form in the
/// earlier generators, so `d² = 0` holds by construction.
pub fn random_nilpotent(dim: usize, seed: u64) -> LieAlgebra {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let full = DualBasis::numbered(dim);
    let mut diffs: BTreeMap<usize, ExteriorForm> = BTreeMap::new();
    for k in 2..dim {
        if rng.gen_bool(0.25) {
            continue;
        }
        let sub = DualBasis::numbered(k);
        let sub_diffs: BTreeMap<usize, ExteriorForm> = diffs
            .iter()
            .filter(|(&i, _)| i < k)
            .map(|(&i, f)| (i, transfer(f, &sub)))
            .collect();
        let algebra = LieAlgebra::from_dual_presentation(&sub, &sub_diffs).expect("tower of central extensions");
        let d = CeDifferential::new(&algebra).expect("nilpotent algebra");
        let closed = d.matrix(2).kernel_basis();
        let mut combo = vec![scalar::zero(); sub.degree_dim(2)];
        for v in &closed {
            let c = scalar::int(rng.gen_range(-2..=2));
            for (slot, x) in combo.iter_mut().zip(v) {
                *slot += &c * x;
            }
        }
        let form = ExteriorForm::from_vector(&sub, 2, &combo).expect("degree 2 coordinates");
        if !form.is_zero() {
            diffs.insert(k, transfer(&form, &full));
        }
    }
    LieAlgebra::from_dual_presentation(&full, &diffs).expect("d squares to zero by construction")
}

/// Same blades, other basis (the target must have at least as many generators).
fn transfer(f: &ExteriorForm, target: &std::sync::Arc<DualBasis>) -> ExteriorForm {
    let mut out = ExteriorForm::zero(target, f.degree());
    for (blade, c) in f.terms() {
        out = &out + &ExteriorForm::monomial(target, blade, c.clone());
    }
    out
}

/// A random rational with numerator in `[-bound, bound]` and denominator in `[1, bound]`.
pub fn random_rational(rng: &mut impl Rng, bound: i64) -> Scalar {
    scalar::ratio(rng.gen_range(-bound..=bound), rng.gen_range(1..=bound))
}
