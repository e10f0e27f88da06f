//! Exact rational linear algebra: rank, kernels, affine solves and
//! normal forms modulo a subspace.

mod matrix;
pub mod scalar;

pub use matrix::{AffineSolution, ExactMatrix, Rref, SpanReducer};
pub use scalar::{format_rational, parse_rational, ExactScalar};
