//! Exact twisted (Morse–Novikov) cohomology of finite simplicial complexes
//! with coefficients in rank-one rational local systems.
//!
//! The linear algebra is written once over the [`scalar::Field`] trait and
//! instantiated for arbitrary-precision rationals and for prime fields; the
//! prime-field instance only serves as an independent rank oracle.

pub mod cohomology;
pub mod linalg;
pub mod local_system;
pub mod random;
pub mod scalar;
pub mod simplicial;
pub mod suite;
pub mod verify;

pub use scalar::{Fp, Rational};

/// Exact sparse matrix over the rationals.
pub type RationalSparseMatrix = linalg::SparseMatrix<Rational>;
/// Sparse matrix over `F_p`, used for rank cross-checks.
pub type ModularSparseMatrix = linalg::SparseMatrix<Fp>;
