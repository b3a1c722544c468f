//! Lie algebras from structure constants or dual presentations, and the
//! Chevalley–Eilenberg differential on Λu*.
//!
//! Sign convention: `dξ(X, Y) = −ξ([X, Y])`, so for the dual basis
//! `dξᵏ = −Σ_{i<j} cᵏ_{ij} ξⁱ∧ξʲ` where `[Xᵢ, Xⱼ] = Σ_k cᵏ_{ij} X_k`.
//! With this convention `[X_α, X_β] = X_γ` reads `dγ = −α∧β`.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exterior::{Blade, DualBasis, ExteriorForm};
use crate::linalg::Matrix;
use crate::scalar::{self, Scalar};

/// A finite-dimensional Lie algebra given by structure constants in a fixed
/// basis X₁…Xₙ. Only brackets `[Xᵢ, Xⱼ]` with `i < j` are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    basis: Arc<DualBasis>,
    brackets: BTreeMap<(usize, usize), BTreeMap<usize, Scalar>>,
}

/// A triple `(i, j, k)` where the Jacobi sum
/// `[Xᵢ,[Xⱼ,X_k]] + [Xⱼ,[X_k,Xᵢ]] + [X_k,[Xᵢ,Xⱼ]]` is nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JacobiViolation {
    pub triple: (usize, usize, usize),
    #[serde(serialize_with = "crate::report::serialize_scalars")]
    pub residual: Vec<Scalar>,
}

impl LieAlgebra {
    pub fn abelian(basis: &Arc<DualBasis>) -> Self {
        LieAlgebra {
            basis: Arc::clone(basis),
            brackets: BTreeMap::new(),
        }
    }

    /// Builds an algebra from entries `(i, j, k, c)` meaning `[Xᵢ, Xⱼ] ∋ c·X_k`.
    /// Entries with `i > j` are stored as `[Xⱼ, Xᵢ] ∋ −c·X_k`. The Jacobi
    /// identity is not checked here; see [`LieAlgebra::jacobi_check`].
    pub fn from_brackets(
        basis: &Arc<DualBasis>,
        entries: impl IntoIterator<Item = (usize, usize, usize, Scalar)>,
    ) -> Result<Self> {
        let n = basis.dim();
        let mut algebra = LieAlgebra::abelian(basis);
        for (i, j, k, c) in entries {
            if i >= n || j >= n || k >= n {
                return Err(Error::parse("brackets", format!("index out of range in ({i},{j},{k})")));
            }
            if i == j {
                if c.is_zero() {
                    continue;
                }
                return Err(Error::parse("brackets", format!("[X{i}, X{i}] must vanish")));
            }
            let (key, c) = if i < j { ((i, j), c) } else { ((j, i), -c) };
            let slot = algebra.brackets.entry(key).or_default();
            let entry = slot.entry(k).or_insert_with(Scalar::zero);
            *entry += c;
            if entry.is_zero() {
                slot.remove(&k);
            }
            if slot.is_empty() {
                algebra.brackets.remove(&key);
            }
        }
        Ok(algebra)
    }

    /// Recovers the algebra from the differentials of the dual generators via
    /// `cᵏ_{ij} = −(coefficient of ξⁱ∧ξʲ in dξᵏ)`. Generators missing from
    /// `diffs` are closed. Fails when the induced `d` does not square to zero.
    pub fn from_dual_presentation(basis: &Arc<DualBasis>, diffs: &BTreeMap<usize, ExteriorForm>) -> Result<Self> {
        let mut entries = Vec::new();
        for (&k, form) in diffs {
            if k >= basis.dim() {
                return Err(Error::parse(
                    "differential",
                    format!("generator index {k} out of range"),
                ));
            }
            if form.degree() != 2 {
                return Err(Error::DegreeMismatch {
                    expected: 2,
                    found: form.degree(),
                });
            }
            if form.basis() != basis {
                return Err(Error::BasisMismatch);
            }
            for (blade, c) in form.terms() {
                let idx: Vec<usize> = blade.indices().collect();
                entries.push((idx[0], idx[1], k, -c.clone()));
            }
        }
        let algebra = LieAlgebra::from_brackets(basis, entries)?;
        for k in 0..basis.dim() {
            let dd = algebra.d_form(&algebra.dual_differential(k));
            if !dd.is_zero() {
                return Err(Error::NotALieAlgebra {
                    generator: basis.name(k).to_string(),
                });
            }
        }
        Ok(algebra)
    }

    pub fn basis(&self) -> &Arc<DualBasis> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn is_abelian(&self) -> bool {
        self.brackets.is_empty()
    }

    /// `[Xᵢ, Xⱼ]` as a coefficient vector.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        let (key, negate) = match i.cmp(&j) {
            std::cmp::Ordering::Equal => return out,
            std::cmp::Ordering::Less => ((i, j), false),
            std::cmp::Ordering::Greater => ((j, i), true),
        };
        if let Some(slot) = self.brackets.get(&key) {
            for (&k, c) in slot {
                out[k] = if negate { -c.clone() } else { c.clone() };
            }
        }
        out
    }

    /// Nonzero structure constants `(i, j, k, cᵏ_{ij})` with `i < j`.
    pub fn structure_constants(&self) -> impl Iterator<Item = (usize, usize, usize, &Scalar)> {
        self.brackets
            .iter()
            .flat_map(|(&(i, j), slot)| slot.iter().map(move |(&k, c)| (i, j, k, c)))
    }

    fn bracket_vectors(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim();
        let mut out = vec![Scalar::zero(); n];
        for (&(i, j), slot) in &self.brackets {
            // [x, y] picks up (xᵢyⱼ − xⱼyᵢ)·[Xᵢ, Xⱼ]
            let w = &x[i] * &y[j] - &x[j] * &y[i];
            if w.is_zero() {
                continue;
            }
            for (&k, c) in slot {
                out[k] += &w * c;
            }
        }
        out
    }

    /// Every triple `i < j < k` whose Jacobi sum is nonzero. An empty list
    /// means the bracket defines a Lie algebra.
    pub fn jacobi_check(&self) -> Vec<JacobiViolation> {
        let n = self.dim();
        let unit = |i: usize| {
            let mut v = vec![Scalar::zero(); n];
            v[i] = scalar::one();
            v
        };
        let mut violations = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (xi, xj, xk) = (unit(i), unit(j), unit(k));
                    let a = self.bracket_vectors(&xi, &self.bracket(j, k));
                    let b = self.bracket_vectors(&xj, &self.bracket(k, i));
                    let c = self.bracket_vectors(&xk, &self.bracket(i, j));
                    let residual: Vec<Scalar> = (0..n).map(|t| &a[t] + &b[t] + &c[t]).collect();
                    if residual.iter().any(|x| !x.is_zero()) {
                        violations.push(JacobiViolation {
                            triple: (i, j, k),
                            residual,
                        });
                    }
                }
            }
        }
        violations
    }

    /// `dξᵏ = −Σ_{i<j} cᵏ_{ij} ξⁱ∧ξʲ`.
    pub fn dual_differential(&self, k: usize) -> ExteriorForm {
        let mut out = ExteriorForm::zero(&self.basis, 2);
        for (&(i, j), slot) in &self.brackets {
            if let Some(c) = slot.get(&k) {
                let term = ExteriorForm::monomial(&self.basis, Blade::from_indices(&[i, j]), -c.clone());
                out = &out + &term;
            }
        }
        out
    }

    /// `d` on an arbitrary form by the graded Leibniz rule, computed term by
    /// term without matrices.
    pub fn d_form(&self, f: &ExteriorForm) -> ExteriorForm {
        let generator_diffs: Vec<ExteriorForm> = (0..self.dim()).map(|k| self.dual_differential(k)).collect();
        leibniz(&self.basis, &generator_diffs, f)
    }
}

fn leibniz(basis: &Arc<DualBasis>, generator_diffs: &[ExteriorForm], f: &ExteriorForm) -> ExteriorForm {
    let mut out = ExteriorForm::zero(basis, f.degree() + 1);
    for (blade, c) in f.terms() {
        let image = blade_differential(basis, generator_diffs, blade);
        out = &out + &image.scale(c);
    }
    out
}

/// d(ξ^{i₁}∧…∧ξ^{i_k}) = Σ_m (−1)^m ξ^{i₁}∧…∧dξ^{i_m}∧…∧ξ^{i_k}.
fn blade_differential(basis: &Arc<DualBasis>, generator_diffs: &[ExteriorForm], blade: Blade) -> ExteriorForm {
    let idx: Vec<usize> = blade.indices().collect();
    let mut out = ExteriorForm::zero(basis, idx.len() + 1);
    for (m, &i) in idx.iter().enumerate() {
        if generator_diffs[i].is_zero() {
            continue;
        }
        let prefix = ExteriorForm::monomial(basis, Blade::from_indices(&idx[..m]), scalar::one());
        let suffix = ExteriorForm::monomial(basis, Blade::from_indices(&idx[m + 1..]), scalar::one());
        let term = prefix
            .wedge(&generator_diffs[i])
            .and_then(|t| t.wedge(&suffix))
            .expect("same basis");
        out = if m % 2 == 0 { &out + &term } else { &out - &term };
    }
    out
}

/// The Chevalley–Eilenberg differential as one matrix per degree:
/// `matrices[k]` maps Λᵏ → Λᵏ⁺¹ in lexicographic coordinates, for
/// `k = 0..=n` (the last has zero rows).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CeDifferential {
    basis: Arc<DualBasis>,
    generator_diffs: Vec<ExteriorForm>,
    matrices: Vec<Matrix>,
}

impl CeDifferential {
    /// Requires the Jacobi identity; the result is verified to square to zero.
    pub fn new(algebra: &LieAlgebra) -> Result<Self> {
        let violations = algebra.jacobi_check();
        if !violations.is_empty() {
            return Err(Error::Jacobi(violations));
        }
        let d = Self::build_unchecked(algebra);
        if let Some(degree) = d.first_nonzero_square() {
            return Err(Error::NotACocomplex { degree });
        }
        Ok(d)
    }

    pub(crate) fn build_unchecked(algebra: &LieAlgebra) -> Self {
        let basis = Arc::clone(algebra.basis());
        let n = basis.dim();
        let generator_diffs: Vec<ExteriorForm> = (0..n).map(|k| algebra.dual_differential(k)).collect();
        let mut matrices = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let source = basis.degree_basis(k).expect("k <= n");
            let target = if k < n {
                basis.degree_basis(k + 1).expect("k + 1 <= n")
            } else {
                Vec::new()
            };
            let position: HashMap<Blade, usize> = target.iter().enumerate().map(|(i, b)| (*b, i)).collect();
            let mut m = Matrix::zeros(target.len(), source.len());
            for (col, blade) in source.iter().enumerate() {
                if k == n {
                    break;
                }
                let image = blade_differential(&basis, &generator_diffs, *blade);
                for (b, c) in image.terms() {
                    m[(position[&b], col)] = c.clone();
                }
            }
            matrices.push(m);
        }
        CeDifferential {
            basis,
            generator_diffs,
            matrices,
        }
    }

    /// Lowest degree k with `d_{k+1} ∘ d_k ≠ 0`, if any.
    pub fn first_nonzero_square(&self) -> Option<usize> {
        (0..self.matrices.len().saturating_sub(1)).find(|&k| !self.matrices[k + 1].mul(&self.matrices[k]).is_zero())
    }

    pub fn basis(&self) -> &Arc<DualBasis> {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn matrix(&self, k: usize) -> &Matrix {
        &self.matrices[k]
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    /// `dξᵏ` for the k-th generator.
    pub fn generator_differential(&self, k: usize) -> &ExteriorForm {
        &self.generator_diffs[k]
    }

    /// Applies `d` through the degree matrix.
    pub fn apply(&self, f: &ExteriorForm) -> ExteriorForm {
        let k = f.degree();
        if k >= self.dim() {
            return ExteriorForm::zero(&self.basis, k + 1);
        }
        let v = self.matrices[k].mul_vec(&f.to_vector());
        ExteriorForm::from_vector(&self.basis, k + 1, &v).expect("dimensions agree")
    }
}
