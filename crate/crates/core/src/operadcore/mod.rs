//! Free operads on decorated trees, quadratic operads, Koszul dual
//! cooperads, the infinitesimal decomposition and cobar complexes.

mod cobar;
mod free;
mod koszul;
mod quadratic;
mod shift;
mod tree;

pub use free::{free_operad_component, FreeOperadComponent, MAX_FREE_ARITY, MAX_FREE_WEIGHT};
pub use shift::{koszul_sign, swap_sign, HomogeneousShift};
pub use tree::{
    canonicalize, cuts, enumerate_trees, graft, relabel, substitute, Alphabet, Cut, DecoratedTree, Letter, LetterSpace,
    TreeCombination, HOLE,
};
pub use quadratic::{
    quadratic_operad_component, GeneratorDocument, OperadComponent, QuadraticData, QuadraticDocument, QuotientPiece,
    MAX_QUADRATIC_ARITY,
};
pub use koszul::{
    koszul_dual_component, CooperadAlphabet, CooperadArity, CooperadComponent, KoszulDualCooperad, MAX_DUAL_ARITY,
};
pub use cobar::{cobar_homology, CobarComplex, CobarHomology, MAX_COBAR_ARITY};
