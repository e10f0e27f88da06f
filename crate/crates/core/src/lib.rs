//! Exact-arithmetic engine for operadic deformation theory.
//!
//! The crate is organised bottom-up:
//!
//! * [`linalg`]: rational matrices, kernels and affine solves;
//! * [`symmetry`]: permutations, symmetric-group representations,
//!   composites of S-modules and set-partition combinatorics;
//! * [`operadcore`]: decorated trees, free operads, quadratic data,
//!   Koszul dual cooperads, infinitesimal decomposition and cobar homology;
//! * [`convolution`]: the convolution pre-Lie/Lie algebra against the
//!   endomorphism operad of a finite-dimensional space;
//! * [`deformation`]: Maurer–Cartan checks, twisted cohomology and
//!   order-by-order formal deformations;
//! * [`conformal`]: Lie conformal algebras and their cochain differential;
//! * [`cli`]: JSON requests and canonical reports behind the command-line tool.

pub mod cli;
pub mod conformal;
pub mod convolution;
pub mod deformation;
mod error;
pub mod linalg;
pub mod operadcore;
pub mod symmetry;

pub use error::{Error, Result};
