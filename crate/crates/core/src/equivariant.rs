//! Finite sets of linear automorphisms acting on u*, their extension to Λu*,
//! and the fixed subcomplex (Λu*)^T.
//!
//! A generator matrix `g` acts on the dual basis by columns: column `j` holds
//! the coordinates of `g·ξʲ`. On Λᵏ the action is multiplicative,
//! `g·(ξ^{i₁}∧…∧ξ^{i_k}) = gξ^{i₁}∧…∧gξ^{i_k}`.
//!
//! The fixed subspace in each degree is the common kernel of `Λᵏg − I` over
//! the generators. This equals the fixed space of the generated group, with
//! no finiteness assumption.

use std::collections::HashMap;
use std::sync::Arc;

use crate::ce::CeDifferential;
use crate::error::{Error, Result};
use crate::exterior::{Blade, DualBasis, ExteriorForm};
use crate::linalg::{self, Matrix, Vector};

/// Invertible n×n matrices acting on u*.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ActionGenerators {
    matrices: Vec<Matrix>,
}

impl ActionGenerators {
    pub fn new(matrices: Vec<Matrix>) -> Self {
        ActionGenerators { matrices }
    }

    pub fn trivial() -> Self {
        Self::default()
    }

    pub fn matrices(&self) -> &[Matrix] {
        &self.matrices
    }

    pub fn is_empty(&self) -> bool {
        self.matrices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.matrices.len()
    }
}

/// Λᵏg as a C(n,k)×C(n,k) matrix in lexicographic coordinates.
pub fn extend_action(basis: &Arc<DualBasis>, g: &Matrix, k: usize) -> Result<Matrix> {
    let n = basis.dim();
    assert_eq!((g.rows(), g.cols()), (n, n), "action matrix must be n×n");
    let blades = basis.degree_basis(k)?;
    let position: HashMap<Blade, usize> = blades.iter().enumerate().map(|(i, b)| (*b, i)).collect();
    let images: Vec<ExteriorForm> = (0..n)
        .map(|j| ExteriorForm::from_vector(basis, 1, &g.column(j)).expect("degree 1"))
        .collect();
    let mut out = Matrix::zeros(blades.len(), blades.len());
    for (col, blade) in blades.iter().enumerate() {
        let mut image = ExteriorForm::one(basis);
        for i in blade.indices() {
            image = image.wedge(&images[i])?;
        }
        for (b, c) in image.terms() {
            out[(position[&b], col)] = c.clone();
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivarianceFailure {
    WrongSize {
        generator: usize,
        rows: usize,
        cols: usize,
    },
    NotInvertible {
        generator: usize,
    },
    /// `(Λᵏ⁺¹g)∘d_k − d_k∘(Λᵏg)` is nonzero.
    DoesNotCommute {
        generator: usize,
        degree: usize,
        residual: Matrix,
    },
}

impl EquivarianceFailure {
    pub fn generator(&self) -> usize {
        match self {
            EquivarianceFailure::WrongSize { generator, .. }
            | EquivarianceFailure::NotInvertible { generator }
            | EquivarianceFailure::DoesNotCommute { generator, .. } => *generator,
        }
    }

    pub fn into_error(self, expected: usize) -> Error {
        match self {
            EquivarianceFailure::WrongSize { generator, rows, .. } => Error::ActionSize {
                generator,
                expected,
                found: rows,
            },
            EquivarianceFailure::NotInvertible { generator } => Error::NotInvertible { generator },
            EquivarianceFailure::DoesNotCommute { generator, degree, .. } => {
                Error::NotEquivariant { generator, degree }
            }
        }
    }
}

/// Checks that every generator is an invertible map commuting with `d`.
/// Degree 1 decides the question by the Leibniz rule; all other degrees are
/// checked as well.
pub fn check_equivariance(d: &CeDifferential, gens: &ActionGenerators) -> Result<(), EquivarianceFailure> {
    let basis = d.basis();
    let n = basis.dim();
    for (index, g) in gens.matrices().iter().enumerate() {
        if g.rows() != n || g.cols() != n {
            return Err(EquivarianceFailure::WrongSize {
                generator: index,
                rows: g.rows(),
                cols: g.cols(),
            });
        }
        if g.rank() != n {
            return Err(EquivarianceFailure::NotInvertible { generator: index });
        }
        let degrees = (1..n).take(1).chain((0..n).filter(|&k| k != 1));
        for k in degrees {
            let source = extend_action(basis, g, k).expect("k < n");
            let target = extend_action(basis, g, k + 1).expect("k + 1 <= n");
            let residual = target.mul(d.matrix(k)).sub(&d.matrix(k).mul(&source));
            if !residual.is_zero() {
                return Err(EquivarianceFailure::DoesNotCommute {
                    generator: index,
                    degree: k,
                    residual,
                });
            }
        }
    }
    Ok(())
}

/// A graded subspace of Λu* closed under `d`.
///
/// Column `j` of `inclusion(k)` is the j-th basis form of the degree-k piece
/// in lexicographic coordinates; `differential(k)` is the restriction of
/// `d_k` in those bases, so that `d_k · B_k = B_{k+1} · d̄_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcomplex {
    full: Arc<CeDifferential>,
    inclusions: Vec<Matrix>,
    differentials: Vec<Matrix>,
}

impl Subcomplex {
    /// The whole complex Λu*.
    pub fn full(d: &Arc<CeDifferential>) -> Self {
        let n = d.dim();
        let inclusions = (0..=n).map(|k| Matrix::identity(d.basis().degree_dim(k))).collect();
        Subcomplex {
            full: Arc::clone(d),
            inclusions,
            differentials: d.matrices().to_vec(),
        }
    }

    /// Restricts `d` to the span of the given inclusion matrices. Fails when
    /// the span is not closed under `d`.
    pub fn from_inclusions(d: &Arc<CeDifferential>, inclusions: Vec<Matrix>) -> Result<Self> {
        let n = d.dim();
        assert_eq!(inclusions.len(), n + 1, "one inclusion per degree");
        let mut differentials = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let image = d.matrix(k).mul(&inclusions[k]);
            let restricted = if k == n {
                Matrix::zeros(0, inclusions[k].cols())
            } else {
                linalg::solve_many(&inclusions[k + 1], &image).ok_or(Error::NotInSubcomplex { degree: k + 1 })?
            };
            differentials.push(restricted);
        }
        let sub = Subcomplex {
            full: Arc::clone(d),
            inclusions,
            differentials,
        };
        debug_assert!(sub.closedness_certificate_holds());
        Ok(sub)
    }

    pub fn basis(&self) -> &Arc<DualBasis> {
        self.full.basis()
    }

    pub fn full_differential(&self) -> &Arc<CeDifferential> {
        &self.full
    }

    /// Top degree, i.e. `dim u`.
    pub fn top_degree(&self) -> usize {
        self.full.dim()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.inclusions.iter().map(Matrix::cols).collect()
    }

    pub fn inclusion(&self, k: usize) -> &Matrix {
        &self.inclusions[k]
    }

    pub fn differential(&self, k: usize) -> &Matrix {
        &self.differentials[k]
    }

    pub fn differentials(&self) -> &[Matrix] {
        &self.differentials
    }

    /// `d_k · B_k = B_{k+1} · d̄_k` in every degree.
    pub fn closedness_certificate_holds(&self) -> bool {
        let n = self.top_degree();
        (0..n)
            .all(|k| self.full.matrix(k).mul(&self.inclusions[k]) == self.inclusions[k + 1].mul(&self.differentials[k]))
    }

    /// The form with subcomplex coordinates `coords` in degree `k`.
    pub fn form(&self, k: usize, coords: &[crate::scalar::Scalar]) -> ExteriorForm {
        let ambient = self.inclusions[k].mul_vec(coords);
        ExteriorForm::from_vector(self.basis(), k, &ambient).expect("degree within range")
    }

    /// Subcomplex coordinates of `f`, or `None` if `f` is not in the subcomplex.
    pub fn coordinates(&self, f: &ExteriorForm) -> Option<Vector> {
        if f.degree() > self.top_degree() {
            return None;
        }
        linalg::solve_in_span(&self.inclusions[f.degree()], &f.to_vector())
    }

    pub fn basis_forms(&self, k: usize) -> Vec<ExteriorForm> {
        self.inclusions[k]
            .columns()
            .iter()
            .map(|c| ExteriorForm::from_vector(self.basis(), k, c).expect("degree within range"))
            .collect()
    }
}

/// (Λu*)^T for the group generated by `gens`. Requires equivariance.
pub fn fixed_subcomplex(d: &Arc<CeDifferential>, gens: &ActionGenerators) -> Result<Subcomplex> {
    let n = d.dim();
    check_equivariance(d, gens).map_err(|f| f.into_error(n))?;
    if gens.is_empty() {
        return Ok(Subcomplex::full(d));
    }
    let basis = d.basis();
    let mut inclusions = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let size = basis.degree_dim(k);
        let mut stacked = Matrix::zeros(0, size);
        for g in gens.matrices() {
            let shifted = extend_action(basis, g, k)?.sub(&Matrix::identity(size));
            stacked = stacked.vstack(&shifted);
        }
        inclusions.push(Matrix::from_columns(size, &stacked.kernel_basis()));
    }
    Subcomplex::from_inclusions(d, inclusions)
}
