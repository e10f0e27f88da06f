//! Maurer–Cartan checks, twisted cohomology and order-by-order formal
//! deformations of algebra structures on `V = K^d`.

mod complex;
mod family;
mod structure;
pub mod testbed;

pub use complex::{
    differential_matrix, reduce_modulo_coboundaries, twisted_coboundary, twisted_cohomology, CochainSpace,
    CohomologyReport, DegreeReport, MAX_COCHAIN_ARITY,
};
pub use family::{
    classical_limit, deform_step, gauge_equivalent, gauge_intertwines, quantize, Check, ClassicalLimit, DeformStep,
    FamilyDocument, FamilyInput, FormalFamily, Gauge,
};
pub use structure::{verify_structure, AlgebraStructure, Flavor, Scalar, StructureDocument, StructureInput};
pub use testbed::TruncatedPlane;
pub(crate) use structure::{from_nested, nested};
