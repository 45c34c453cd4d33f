//! Tensor powers and free Lie algebras: words and tensors, Lyndon bases,
//! Lie powers, PBW bases and the PBW filtration, weight spaces, truncation,
//! generated subalgebras and Lazard elimination.

mod graded;
mod lyndon;
mod pbw;
mod subalgebra;
mod tensor;
mod uniform;
mod word;

pub use graded::{weight_component, GradedBuilder, GradedSubspace, WeightIndex};
pub use lyndon::{
    is_lyndon, left_normed, lyndon_basis, lyndon_words, standard_factorization, LyndonExpander,
};
pub use pbw::{pbw_basis, PbwBasis, PbwGenerators};
pub use subalgebra::{
    bracket_chain, bracket_spaces, lazard_pieces, lie_power, lie_power_graded,
    subalgebra_generated, tensor_power_graded, LazardPiece,
};
pub use tensor::Tensor;
pub use uniform::{letter_closure, symmetrize_extend, truncate_graded, truncate_subspace};
pub use word::{tensor_dim, MultiDegree, Word};
