//! Exact linear algebra over the rationals.
//!
//! Everything here is pure: subspaces are immutable values in canonical
//! echelon form, and no operation rounds.

mod eigen;
mod matrix;
pub mod scalar;
mod subspace;

pub use eigen::{common_eigenspaces, eigenspaces, rational_eigenvalues, rational_roots, EigenBlock};
pub use matrix::Matrix;
pub use scalar::{
    add_scaled, add_vectors, dot, format_scalar, format_vector, frac, int, is_zero_vector, parse_scalar, parse_vector,
    unit_vector, zero_vector, Scalar, Vector,
};
pub use subspace::Subspace;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinalgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("E_NOT_COMMUTING: maps {first} and {second} do not commute")]
    NotCommuting { first: usize, second: usize },
    #[error("E_IRRATIONAL_OR_DEFECTIVE: map {map}: {reason}")]
    IrrationalOrDefective { map: usize, reason: String },
    #[error("E_BAD_SCALAR: cannot parse {0:?} as a rational number")]
    BadScalar(String),
}
