//! Exact computations for Leibniz triple systems: identity checks, the
//! standard embedding into a two-graded Leibniz algebra, root-space
//! decompositions, connections of roots, ideals and simplicity.
//!
//! All arithmetic is over the rationals with no rounding.

pub mod connectivity;
pub mod corpus;
pub mod embedding;
pub mod exact_linear;
pub mod format;
pub mod split;
pub mod triple;

#[cfg(test)]
mod fixtures;

pub use connectivity::{ConnectError, SimplicityReport};
pub use embedding::{EmbeddingError, LeibnizAlgebra, StandardEmbedding};
pub use exact_linear::{LinalgError, Matrix, Scalar, Subspace, Vector};
pub use format::FormatError;
pub use split::{Root, RootDecomposition, SplitError};
pub use triple::{IdentityReport, TripleError, TripleSystem};
