//! Permutations, symmetric-group representations, S-modules and the
//! set-partition combinatorics behind the coisson index sets.

mod composite;
mod partition;
mod permutation;
mod rep;

pub use composite::{compose_smodules, infinitesimal_composite};
pub use partition::{
    coisson_component_dimension, special_filtration_multiplicities, surjection_classes, surjection_classes_by_size,
    SetPartition,
};
pub use permutation::{binomial, choose, factorial, unshuffles, Permutation};
pub use rep::{sign_representation, SModule, SnRepresentation};
