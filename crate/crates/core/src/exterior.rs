//! The graded exterior algebra Λu* over an ordered dual basis.
//!
//! A basis monomial ξ^{i₁}∧…∧ξ^{i_k} with i₁ < … < i_k is a [`Blade`], stored
//! as a bit set. Degree-k coordinates enumerate the C(n,k) blades in
//! lexicographic order of their index tuples. The volume form is the single
//! degree-n blade ξ¹∧…∧ξⁿ in generator order.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use itertools::Itertools;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::scalar::{self, Scalar};

/// Most generators a basis can have; blades are `u64` bit sets.
pub const MAX_GENERATORS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DualBasis {
    names: Vec<String>,
}

impl DualBasis {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Arc<Self>> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.len() > MAX_GENERATORS {
            return Err(Error::parse(
                "generators",
                format!("at most {MAX_GENERATORS} generators are supported"),
            ));
        }
        for (i, name) in names.iter().enumerate() {
            if name.is_empty() {
                return Err(Error::parse(format!("generators[{i}]"), "empty label"));
            }
            if names[..i].contains(name) {
                return Err(Error::parse(
                    format!("generators[{i}]"),
                    format!("duplicate label {name:?}"),
                ));
            }
        }
        Ok(Arc::new(DualBasis { names }))
    }

    /// `e1, …, en`.
    pub fn numbered(n: usize) -> Arc<Self> {
        DualBasis::new((1..=n).map(|i| format!("e{i}"))).expect("numbered labels are distinct")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Blades of degree `k` in lexicographic order.
    pub fn degree_basis(&self, k: usize) -> Result<Vec<Blade>> {
        let n = self.dim();
        if k > n {
            return Err(Error::DegreeOutOfRange { degree: k, dim: n });
        }
        Ok((0..n).combinations(k).map(|idx| Blade::from_indices(&idx)).collect())
    }

    pub fn degree_dim(&self, k: usize) -> usize {
        binomial(self.dim(), k)
    }

    pub fn volume(&self) -> Blade {
        Blade(low_mask(self.dim()))
    }

    pub fn blade_label(&self, blade: Blade) -> String {
        if blade.degree() == 0 {
            return "1".to_string();
        }
        blade.indices().map(|i| self.name(i)).join("^")
    }
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// A strictly increasing index tuple, stored as a bit set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub struct Blade(pub u64);

impl Blade {
    pub const ONE: Blade = Blade(0);

    pub fn generator(i: usize) -> Blade {
        Blade(1 << i)
    }

    pub fn from_indices(indices: &[usize]) -> Blade {
        Blade(indices.iter().fold(0, |acc, &i| acc | (1 << i)))
    }

    pub fn degree(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 & (1 << i) != 0
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |&i| bits & (1 << i) != 0)
    }

    /// Product of two blades: `None` when they share an index, otherwise the
    /// union together with the Koszul sign of sorting the concatenation.
    pub fn wedge(self, other: Blade) -> Option<(Blade, bool)> {
        if self.0 & other.0 != 0 {
            return None;
        }
        // each index j of `other` must move past every index of `self` above j
        let mut swaps = 0u32;
        let mut rest = other.0;
        while rest != 0 {
            let j = rest.trailing_zeros();
            let above = if j >= 63 { 0 } else { self.0 >> (j + 1) };
            swaps += above.count_ones();
            rest &= rest - 1;
        }
        Some((Blade(self.0 | other.0), swaps % 2 == 1))
    }
}

impl Ord for Blade {
    /// Lexicographic order of index tuples (for blades of equal degree).
    fn cmp(&self, other: &Self) -> Ordering {
        if self.0 == other.0 {
            return Ordering::Equal;
        }
        let first_difference = (self.0 ^ other.0).trailing_zeros();
        if self.0 & (1 << first_difference) != 0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Blade {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A homogeneous element of Λu*. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct ExteriorForm {
    basis: Arc<DualBasis>,
    degree: usize,
    terms: BTreeMap<Blade, Scalar>,
}

impl ExteriorForm {
    pub fn zero(basis: &Arc<DualBasis>, degree: usize) -> Self {
        ExteriorForm {
            basis: Arc::clone(basis),
            degree,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(basis: &Arc<DualBasis>) -> Self {
        Self::monomial(basis, Blade::ONE, scalar::one())
    }

    pub fn generator(basis: &Arc<DualBasis>, i: usize) -> Self {
        assert!(i < basis.dim(), "generator index out of range");
        Self::monomial(basis, Blade::generator(i), scalar::one())
    }

    pub fn monomial(basis: &Arc<DualBasis>, blade: Blade, coefficient: Scalar) -> Self {
        let mut f = Self::zero(basis, blade.degree());
        f.add_term(blade, coefficient);
        f
    }

    /// Builds a form from `(coefficient, generator labels)` pairs. Labels
    /// may come in any order; the coefficient is re-signed while sorting.
    pub fn from_labels(basis: &Arc<DualBasis>, terms: &[(Scalar, &[&str])]) -> Result<Self> {
        let degree = terms.first().map_or(0, |(_, l)| l.len());
        let mut f = Self::zero(basis, degree);
        for (coefficient, labels) in terms {
            let mut product = Self::monomial(basis, Blade::ONE, coefficient.clone());
            for label in labels.iter() {
                let i = basis
                    .index_of(label)
                    .ok_or_else(|| Error::parse("form", format!("unknown generator {label:?}")))?;
                product = product.wedge(&Self::generator(basis, i))?;
            }
            if product.degree != degree {
                return Err(Error::DegreeMismatch {
                    expected: degree,
                    found: product.degree,
                });
            }
            f = f.try_add(&product)?;
        }
        Ok(f)
    }

    pub fn basis(&self) -> &Arc<DualBasis> {
        &self.basis
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic blade order.
    pub fn terms(&self) -> impl Iterator<Item = (Blade, &Scalar)> {
        self.terms.iter().map(|(b, c)| (*b, c))
    }

    pub fn coefficient(&self, blade: Blade) -> Scalar {
        self.terms.get(&blade).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Coefficient of ξ¹∧…∧ξⁿ; zero unless the form has top degree.
    pub fn volume_coefficient(&self) -> Scalar {
        self.coefficient(self.basis.volume())
    }

    fn add_term(&mut self, blade: Blade, coefficient: Scalar) {
        debug_assert_eq!(blade.degree(), self.degree);
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(blade).or_insert_with(Scalar::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&blade);
        }
    }

    fn same_basis(&self, other: &ExteriorForm) -> Result<()> {
        if Arc::ptr_eq(&self.basis, &other.basis) || self.basis == other.basis {
            Ok(())
        } else {
            Err(Error::BasisMismatch)
        }
    }

    pub fn try_add(&self, other: &ExteriorForm) -> Result<Self> {
        self.same_basis(other)?;
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        let mut out = self.clone();
        for (b, c) in other.terms() {
            out.add_term(b, c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, factor: &Scalar) -> Self {
        let mut out = Self::zero(&self.basis, self.degree);
        if !factor.is_zero() {
            out.terms = self.terms.iter().map(|(b, c)| (*b, c * factor)).collect();
        }
        out
    }

    pub fn wedge(&self, other: &ExteriorForm) -> Result<Self> {
        self.same_basis(other)?;
        let degree = self.degree + other.degree;
        let mut out = Self::zero(&self.basis, degree);
        if degree > self.basis.dim() {
            return Ok(out);
        }
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                if let Some((blade, negative)) = a.wedge(*b) {
                    let c = x * y;
                    out.add_term(blade, if negative { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    /// The `k`-fold wedge power; `f⁰ = 1`.
    pub fn power(&self, k: usize) -> Self {
        assert!(
            k <= 1 || self.degree.is_multiple_of(2),
            "powers above 1 are only taken of even-degree forms"
        );
        let mut out = Self::one(&self.basis);
        for _ in 0..k {
            out = out.wedge(self).expect("same basis");
            if out.is_zero() {
                break;
            }
        }
        if out.is_zero() {
            return Self::zero(&self.basis, self.degree * k);
        }
        out
    }

    /// Coordinates in the lexicographic degree basis.
    pub fn to_vector(&self) -> Vec<Scalar> {
        self.basis
            .degree_basis(self.degree)
            .map(|blades| blades.into_iter().map(|b| self.coefficient(b)).collect())
            .unwrap_or_default()
    }

    pub fn from_vector(basis: &Arc<DualBasis>, degree: usize, v: &[Scalar]) -> Result<Self> {
        let blades = basis.degree_basis(degree)?;
        if blades.len() != v.len() {
            return Err(Error::DegreeMismatch {
                expected: blades.len(),
                found: v.len(),
            });
        }
        let mut f = Self::zero(basis, degree);
        for (b, c) in blades.into_iter().zip(v) {
            f.add_term(b, c.clone());
        }
        Ok(f)
    }
}

impl std::ops::Add for &ExteriorForm {
    type Output = ExteriorForm;

    /// Panics on mismatched bases or degrees; see [`ExteriorForm::try_add`].
    fn add(self, rhs: &ExteriorForm) -> ExteriorForm {
        self.try_add(rhs).expect("adding incompatible forms")
    }
}

impl std::ops::Sub for &ExteriorForm {
    type Output = ExteriorForm;

    fn sub(self, rhs: &ExteriorForm) -> ExteriorForm {
        self.try_add(&-rhs).expect("subtracting incompatible forms")
    }
}

impl std::ops::Neg for &ExteriorForm {
    type Output = ExteriorForm;

    fn neg(self) -> ExteriorForm {
        self.scale(&-scalar::one())
    }
}

impl fmt::Display for ExteriorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (blade, c)) in self.terms.iter().enumerate() {
            let (sign, magnitude) = scalar::signed_term(c, i == 0);
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{sign}")?;
            if i > 0 {
                write!(f, " ")?;
            }
            let label = self.basis.blade_label(*blade);
            if magnitude == "1" {
                write!(f, "{label}")?;
            } else if blade.degree() == 0 {
                write!(f, "{magnitude}")?;
            } else {
                write!(f, "{magnitude} {label}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExteriorForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExteriorForm[{}]({})", self.degree, self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::int;

    fn kt_basis() -> Arc<DualBasis> {
        DualBasis::new(["alpha", "beta", "gamma", "delta"]).unwrap()
    }

    fn form(basis: &Arc<DualBasis>, terms: &[(i64, &[&str])]) -> ExteriorForm {
        let terms: Vec<(Scalar, &[&str])> = terms.iter().map(|(c, l)| (int(*c), *l)).collect();
        ExteriorForm::from_labels(basis, &terms).unwrap()
    }

    #[test]
    fn wedge_examples() {
        let b = kt_basis();
        let alpha = ExteriorForm::generator(&b, 0);
        let beta = ExteriorForm::generator(&b, 1);
        let ab = alpha.wedge(&beta).unwrap();
        assert_eq!(
            ab.terms().collect::<Vec<_>>(),
            vec![(Blade::from_indices(&[0, 1]), &int(1))]
        );
        assert!(alpha.wedge(&alpha).unwrap().is_zero());
        assert_eq!(beta.wedge(&alpha).unwrap(), -&ab);
        let gd = form(&b, &[(1, &["gamma", "delta"])]);
        let vol = ab.wedge(&gd).unwrap();
        assert_eq!(vol.volume_coefficient(), int(1));
    }

    #[test]
    fn mismatched_bases_rejected() {
        let a = ExteriorForm::generator(&kt_basis(), 0);
        let b = ExteriorForm::generator(&DualBasis::numbered(4), 0);
        assert!(matches!(a.wedge(&b), Err(Error::BasisMismatch)));
    }

    #[test]
    fn power_examples() {
        let b = kt_basis();
        let ab = form(&b, &[(1, &["alpha", "beta"])]);
        assert!(ab.power(2).is_zero());
        let omega = form(&b, &[(1, &["alpha", "delta"]), (1, &["beta", "gamma"])]);
        assert_eq!(omega.power(2), form(&b, &[(2, &["alpha", "beta", "gamma", "delta"])]));
        assert_eq!(omega.power(0), ExteriorForm::one(&b));
        assert_eq!(omega.power(0).degree(), 0);
        assert_eq!(ab.power(2).degree(), 4);
    }

    #[test]
    fn degree_coordinates() {
        let b = kt_basis();
        let two = b.degree_basis(2).unwrap();
        assert_eq!(two.len(), 6);
        let tuples: Vec<Vec<usize>> = two.iter().map(|x| x.indices().collect()).collect();
        assert_eq!(
            tuples,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
        assert!(two.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(b.degree_basis(0).unwrap(), vec![Blade::ONE]);
        assert_eq!(b.degree_basis(4).unwrap(), vec![Blade::from_indices(&[0, 1, 2, 3])]);
        assert!(matches!(b.degree_basis(5), Err(Error::DegreeOutOfRange { .. })));
        let total: usize = (0..=4).map(|k| b.degree_basis(k).unwrap().len()).sum();
        assert_eq!(total, 16);
        for k in 0..=4 {
            assert_eq!(b.degree_dim(k), b.degree_basis(k).unwrap().len());
        }
    }

    #[test]
    fn display() {
        let b = kt_basis();
        let f = form(&b, &[(-1, &["alpha", "beta"]), (2, &["gamma", "delta"])]);
        assert_eq!(f.to_string(), "-alpha^beta + 2 gamma^delta");
        assert_eq!(ExteriorForm::zero(&b, 2).to_string(), "0");
        assert_eq!(form(&b, &[(1, &["beta", "alpha"])]).to_string(), "-alpha^beta");
    }

    mod props {
        use super::super::*;
        use crate::scalar::int;
        use proptest::prelude::*;

        fn random_form(basis: Arc<DualBasis>, degree: usize) -> impl Strategy<Value = ExteriorForm> {
            let dim = basis.degree_dim(degree);
            proptest::collection::vec(-3i64..=3, dim).prop_map(move |xs| {
                let v: Vec<Scalar> = xs.into_iter().map(int).collect();
                ExteriorForm::from_vector(&basis, degree, &v).unwrap()
            })
        }

        fn triple() -> impl Strategy<Value = (ExteriorForm, ExteriorForm, ExteriorForm)> {
            (1usize..=8, 0usize..=3, 0usize..=3, 0usize..=2).prop_flat_map(|(n, p, q, r)| {
                let b = DualBasis::numbered(n);
                (
                    random_form(b.clone(), p.min(n)),
                    random_form(b.clone(), q.min(n)),
                    random_form(b, r.min(n)),
                )
            })
        }

        /// Coefficient of e^I in f∧g as the alternating sum over all
        /// permutations of the slot positions, divided by p! q!.
        fn brute_wedge_coefficient(f: &ExteriorForm, g: &ExteriorForm, target: &[usize]) -> Scalar {
            let p = f.degree();
            let q = g.degree();
            let eval = |form: &ExteriorForm, slots: &[usize]| -> Scalar {
                // evaluate a form on basis vectors e_{slots}: signed coefficient
                let mut sorted = slots.to_vec();
                let mut sign = 1i64;
                for i in 0..sorted.len() {
                    for j in 0..sorted.len() - 1 - i {
                        if sorted[j] > sorted[j + 1] {
                            sorted.swap(j, j + 1);
                            sign = -sign;
                        }
                    }
                }
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return Scalar::zero();
                }
                form.coefficient(Blade::from_indices(&sorted)) * int(sign)
            };
            let mut total = Scalar::zero();
            for perm in (0..p + q).permutations(p + q) {
                let mut inversions = 0;
                for a in 0..perm.len() {
                    for b in a + 1..perm.len() {
                        if perm[a] > perm[b] {
                            inversions += 1;
                        }
                    }
                }
                let slots: Vec<usize> = perm.iter().map(|&i| target[i]).collect();
                let term = eval(f, &slots[..p]) * eval(g, &slots[p..]);
                total += if inversions % 2 == 0 { term } else { -term };
            }
            let factorial = |k: usize| (1..=k as i64).product::<i64>();
            total / int(factorial(p) * factorial(q))
        }

        proptest! {
            #[test]
            fn graded_commutative_and_associative((f, g, h) in triple()) {
                let fg = f.wedge(&g).unwrap();
                let gf = g.wedge(&f).unwrap();
                let expected = if (f.degree() * g.degree()) % 2 == 1 { -&gf } else { gf };
                prop_assert_eq!(&fg, &expected);
                let left = fg.wedge(&h).unwrap();
                let right = f.wedge(&g.wedge(&h).unwrap()).unwrap();
                prop_assert_eq!(left, right);
            }

            #[test]
            fn matches_permutation_sum_oracle(
                n in 1usize..=4,
                p in 0usize..=2,
                q in 0usize..=2,
                seed in any::<u64>(),
            ) {
                prop_assume!(p + q <= n);
                let b = DualBasis::numbered(n);
                let mut rng = <rand_chacha::ChaCha8Rng as rand::SeedableRng>::seed_from_u64(seed);
                let mut random = |deg: usize| {
                    let v: Vec<Scalar> = (0..b.degree_dim(deg))
                        .map(|_| int(rand::Rng::gen_range(&mut rng, -3..=3)))
                        .collect();
                    ExteriorForm::from_vector(&b, deg, &v).unwrap()
                };
                let f = random(p);
                let g = random(q);
                let fg = f.wedge(&g).unwrap();
                for blade in b.degree_basis(p + q).unwrap() {
                    let idx: Vec<usize> = blade.indices().collect();
                    prop_assert_eq!(fg.coefficient(blade), brute_wedge_coefficient(&f, &g, &idx));
                }
            }

            #[test]
            fn vector_round_trip(n in 0usize..=8, k in 0usize..=8, xs in proptest::collection::vec(-5i64..=5, 70)) {
                prop_assume!(k <= n);
                let b = DualBasis::numbered(n);
                let v: Vec<Scalar> = xs.into_iter().take(b.degree_dim(k)).map(int).collect();
                let f = ExteriorForm::from_vector(&b, k, &v).unwrap();
                prop_assert_eq!(f.to_vector(), v);
            }
        }
    }
}
