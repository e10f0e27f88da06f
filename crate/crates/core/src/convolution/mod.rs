//! The convolution Lie algebra `Hom_S(C, End_V)` of equivariant maps from a
//! Koszul dual cooperad to the endomorphism operad of `V = K^d`.

mod algebra;
mod element;
mod fast;
mod tensor;

pub use algebra::ConvolutionAlgebra;
pub use element::{ConvolutionElement, CooperadTag, ElementDocument, WeightGradedElement};
pub use fast::{
    ass_star, associator, binary_tensor, ce_with_pair_sign, chevalley_eilenberg_differential, graded_bracket,
    hochschild_differential, jacobiator, nr_star,
};
pub use tensor::{end_compose, StructureTensor, TensorDocument};
pub(crate) use tensor::multi_indices as tensor_indices;
