//! Exact Chevalley–Eilenberg cohomology of Lie algebras and of their
//! invariant subcomplexes, with a decision procedure for invariant
//! symplectic forms.
//!
//! The pipeline is
//!
//! 1. a Lie algebra u from structure constants or dual differentials ([`ce`]),
//! 2. the complex Λu* and optionally the subcomplex fixed by a finite set of
//!    automorphisms ([`equivariant`]),
//! 3. Betti numbers, representatives and cup products ([`cohomology`]),
//! 4. the symplectic decision with an exact witness or a symbolic proof of
//!    non-existence ([`symplectic`]).
//!
//! All arithmetic is over ℚ with arbitrary precision.

pub mod builtins;
pub mod ce;
pub mod cohomology;
pub mod equivariant;
pub mod error;
pub mod exterior;
pub mod file;
pub mod linalg;
pub mod report;
pub mod scalar;
pub mod symplectic;
pub mod testing;

pub use ce::{CeDifferential, LieAlgebra};
pub use cohomology::{Cohomology, CohomologyClass, CohomologyResult};
pub use equivariant::{fixed_subcomplex, ActionGenerators, Subcomplex};
pub use error::{Error, Result};
pub use exterior::{Blade, DualBasis, ExteriorForm};
pub use file::AlgebraFile;
pub use linalg::Matrix;
pub use scalar::Scalar;
pub use symplectic::{decide, Decision, SearchPlan, SymplecticVerdict};
