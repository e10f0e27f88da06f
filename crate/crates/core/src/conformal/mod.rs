//! Lie conformal algebras over `K[T]` with polynomial λ-brackets, their
//! sesquilinear skew cochains and the bracket differential.

mod algebra;
mod cochain;
mod poly;

pub use algebra::{
    AxiomReport, BracketEntry, ConformalDocument, DegreeCaps, LambdaPolynomial, LieConformalAlgebra, TermEntry,
};
pub use cochain::{
    ce_intertwines, cochain_sweep, dsk_differential, reduce_to_chevalley_eilenberg, CochainDocument, ConformalCochain,
};
pub use poly::MPoly;
