use thiserror::Error;

use crate::ce::JacobiViolation;

/// Errors raised by the library. Verification failures that are part of a
/// normal answer (a non-closed candidate form, a failed equivariance check)
/// are returned as data instead.
#[derive(Debug, Error)]
pub enum Error {
    #[error("forms live over different dual bases")]
    BasisMismatch,

    #[error("degree {degree} out of range for an exterior algebra on {dim} generators")]
    DegreeOutOfRange { degree: usize, dim: usize },

    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("not a Lie algebra presentation: d(d {generator}) != 0")]
    NotALieAlgebra { generator: String },

    #[error("Jacobi identity fails on {} triple(s), first at {:?}", .0.len(), .0[0].triple)]
    Jacobi(Vec<JacobiViolation>),

    #[error("complex is inconsistent: d∘d != 0 starting in degree {degree}")]
    NotACocomplex { degree: usize },

    #[error("action generator {generator} is not invertible")]
    NotInvertible { generator: usize },

    #[error("action generator {generator} does not commute with d in degree {degree}")]
    NotEquivariant { generator: usize, degree: usize },

    #[error("action generator {generator} has size {found}, expected {expected}")]
    ActionSize {
        generator: usize,
        expected: usize,
        found: usize,
    },

    #[error("form of degree {degree} is not closed")]
    NotClosed { degree: usize },

    #[error("form does not lie in the subcomplex in degree {degree}")]
    NotInSubcomplex { degree: usize },

    #[error("no symplectic question in odd dimension {0}")]
    OddDimension(usize),

    #[error("symbolic expansion needs {count} monomials, above the limit of {limit}")]
    TooManyMonomials { count: u128, limit: u128 },

    #[error("unknown witness search strategy {0:?}")]
    UnknownStrategy(String),

    #[error("{context}: {message}")]
    Parse { context: String, message: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn parse(context: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Parse {
            context: context.into(),
            message: message.into(),
        }
    }
}
