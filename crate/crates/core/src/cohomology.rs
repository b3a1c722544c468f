//! Cohomology of finite cochain complexes over ℚ.
//!
//! Betti numbers over ℚ agree with those over ℝ because every input
//! coefficient is rational and rank does not change under field extension.
//!
//! Representatives are deterministic: in each degree an echelon basis of the
//! coboundaries is extended, left to right, by the kernel basis of `d_k`; the
//! kernel vectors that get added are the representatives.

use std::sync::Arc;

use num_traits::Zero;

use crate::equivariant::Subcomplex;
use crate::error::{Error, Result};
use crate::exterior::{DualBasis, ExteriorForm};
use crate::linalg::{self, is_zero_vector, Matrix, Vector};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeCohomology {
    /// dim Cᵏ.
    pub cochains: usize,
    /// dim ker d_k.
    pub cycles: usize,
    /// rank d_{k−1}.
    pub boundaries: usize,
    pub betti: usize,
    /// Echelon basis of im d_{k−1}, as columns.
    pub exact_basis: Matrix,
    /// Closed cochains spanning a complement of the exact ones, as columns.
    pub representatives: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyResult {
    degrees: Vec<DegreeCohomology>,
    differentials: Vec<Matrix>,
}

impl CohomologyResult {
    /// `differentials[k]` maps Cᵏ → Cᵏ⁺¹. The last space is the target of
    /// the last matrix only when that matrix has rows; a final matrix with
    /// zero rows closes the complex.
    pub fn compute(differentials: &[Matrix]) -> Result<Self> {
        for k in 0..differentials.len().saturating_sub(1) {
            if differentials[k].rows() != differentials[k + 1].cols() {
                return Err(Error::DegreeMismatch {
                    expected: differentials[k + 1].cols(),
                    found: differentials[k].rows(),
                });
            }
            if !differentials[k + 1].mul(&differentials[k]).is_zero() {
                return Err(Error::NotACocomplex { degree: k });
            }
        }
        let mut degrees = Vec::with_capacity(differentials.len());
        for (k, d) in differentials.iter().enumerate() {
            let size = d.cols();
            let exact_basis = match k {
                0 => Matrix::zeros(size, 0),
                _ => echelon_image_basis(&differentials[k - 1]),
            };
            let kernel = d.kernel_basis();
            let cycles = kernel.len();
            let kernel = Matrix::from_columns(size, &kernel);
            let boundaries = exact_basis.cols();
            let pivots = exact_basis.hstack(&kernel).rref().pivots;
            let added: Vec<Vector> = pivots
                .iter()
                .filter(|&&p| p >= boundaries)
                .map(|&p| kernel.column(p - boundaries))
                .collect();
            let representatives = Matrix::from_columns(size, &added);
            let betti = representatives.cols();
            debug_assert_eq!(betti, cycles - boundaries);
            degrees.push(DegreeCohomology {
                cochains: size,
                cycles,
                boundaries,
                betti,
                exact_basis,
                representatives,
            });
        }
        Ok(CohomologyResult {
            degrees,
            differentials: differentials.to_vec(),
        })
    }

    pub fn degrees(&self) -> &[DegreeCohomology] {
        &self.degrees
    }

    pub fn degree(&self, k: usize) -> Option<&DegreeCohomology> {
        self.degrees.get(k)
    }

    pub fn betti_numbers(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.betti).collect()
    }

    pub fn cochain_dims(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.cochains).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        alternating_sum(&self.betti_numbers())
    }

    /// Σ(−1)ᵏ bₖ = Σ(−1)ᵏ dim Cᵏ.
    pub fn euler_identity_holds(&self) -> bool {
        self.euler_characteristic() == alternating_sum(&self.cochain_dims())
    }

    fn ensure_closed(&self, k: usize, v: &[Scalar]) -> Result<()> {
        let d = self.differentials.get(k).ok_or(Error::DegreeOutOfRange {
            degree: k,
            dim: self.degrees.len(),
        })?;
        if is_zero_vector(&d.mul_vec(v)) {
            Ok(())
        } else {
            Err(Error::NotClosed { degree: k })
        }
    }

    /// A preimage `x` with `d x = v` when `v` is exact, `None` otherwise.
    /// In degree 0 only the zero cochain is exact, with an empty preimage.
    pub fn is_exact(&self, k: usize, v: &[Scalar]) -> Result<Option<Vector>> {
        self.ensure_closed(k, v)?;
        if k == 0 {
            return Ok(is_zero_vector(v).then(Vec::new));
        }
        Ok(linalg::solve_in_span(&self.differentials[k - 1], v))
    }

    /// Coordinates of the class of the closed cochain `v` in the
    /// representative basis of Hᵏ.
    pub fn class_coordinates(&self, k: usize, v: &[Scalar]) -> Result<Vector> {
        self.ensure_closed(k, v)?;
        let degree = &self.degrees[k];
        let spanning = degree.exact_basis.hstack(&degree.representatives);
        let c = linalg::solve_in_span(&spanning, v).expect("closed cochains lie in exact ⊕ representatives");
        Ok(c[degree.boundaries..].to_vec())
    }
}

fn alternating_sum(xs: &[usize]) -> i64 {
    xs.iter()
        .enumerate()
        .map(|(k, &x)| if k % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

/// Nonzero rows of the reduced echelon form of `mᵀ`, as columns.
fn echelon_image_basis(m: &Matrix) -> Matrix {
    let rref = m.transpose().rref();
    let columns: Vec<Vector> = (0..rref.rank).map(|i| rref.matrix.row(i).to_vec()).collect();
    Matrix::from_columns(m.rows(), &columns)
}

/// A cohomology class: its degree and coordinates in the representative basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyClass {
    pub degree: usize,
    pub coordinates: Vector,
}

impl CohomologyClass {
    pub fn is_zero(&self) -> bool {
        self.coordinates.iter().all(Zero::is_zero)
    }
}

/// Cohomology of a subcomplex of Λu*, with its multiplicative structure.
#[derive(Clone, Debug)]
pub struct Cohomology {
    complex: Subcomplex,
    result: CohomologyResult,
}

impl Cohomology {
    pub fn compute(complex: &Subcomplex) -> Result<Self> {
        Ok(Cohomology {
            complex: complex.clone(),
            result: CohomologyResult::compute(complex.differentials())?,
        })
    }

    pub fn complex(&self) -> &Subcomplex {
        &self.complex
    }

    pub fn result(&self) -> &CohomologyResult {
        &self.result
    }

    pub fn basis(&self) -> &Arc<DualBasis> {
        self.complex.basis()
    }

    pub fn betti(&self, k: usize) -> usize {
        self.result.degree(k).map_or(0, |d| d.betti)
    }

    /// Representative forms of Hᵏ, in ambient coordinates.
    pub fn representatives(&self, k: usize) -> Vec<ExteriorForm> {
        self.result.degrees[k]
            .representatives
            .columns()
            .iter()
            .map(|c| self.complex.form(k, c))
            .collect()
    }

    fn sub_coordinates(&self, f: &ExteriorForm) -> Result<Vector> {
        self.complex
            .coordinates(f)
            .ok_or(Error::NotInSubcomplex { degree: f.degree() })
    }

    pub fn class_of(&self, f: &ExteriorForm) -> Result<CohomologyClass> {
        let v = self.sub_coordinates(f)?;
        Ok(CohomologyClass {
            degree: f.degree(),
            coordinates: self.result.class_coordinates(f.degree(), &v)?,
        })
    }

    pub fn representative(&self, class: &CohomologyClass) -> ExteriorForm {
        let reps = &self.result.degrees[class.degree].representatives;
        self.complex.form(class.degree, &reps.mul_vec(&class.coordinates))
    }

    pub fn zero_class(&self, degree: usize) -> CohomologyClass {
        let betti = self.betti(degree);
        CohomologyClass {
            degree,
            coordinates: vec![Scalar::zero(); betti],
        }
    }

    pub fn unit(&self) -> Result<CohomologyClass> {
        self.class_of(&ExteriorForm::one(self.basis()))
    }

    /// Preimage form when `f` is exact. Fails when `f` is not closed.
    pub fn is_exact(&self, f: &ExteriorForm) -> Result<Option<ExteriorForm>> {
        let k = f.degree();
        let v = self.sub_coordinates(f)?;
        Ok(self.result.is_exact(k, &v)?.map(|x| {
            if k == 0 {
                ExteriorForm::zero(self.basis(), 0)
            } else {
                self.complex.form(k - 1, &x)
            }
        }))
    }

    /// Cup product: wedge the representatives and reduce modulo exact forms.
    /// Products above the top degree are the zero class.
    pub fn cup(&self, a: &CohomologyClass, b: &CohomologyClass) -> Result<CohomologyClass> {
        let degree = a.degree + b.degree;
        if degree > self.complex.top_degree() {
            return Ok(CohomologyClass {
                degree,
                coordinates: Vec::new(),
            });
        }
        let product = self.representative(a).wedge(&self.representative(b))?;
        self.class_of(&product)
    }

    pub fn cup_power(&self, a: &CohomologyClass, k: usize) -> Result<CohomologyClass> {
        let mut out = self.unit()?;
        for _ in 0..k {
            out = self.cup(&out, a)?;
        }
        Ok(out)
    }
}
