//! Splitting of tensor powers by descent idempotents, and the recursive
//! construction of the summands `B_{sk}` of Lie powers.

mod canonical;
mod certificate;
mod complement;
mod family;
mod filtration;
mod verify;

pub use canonical::{canonical_complement, rectangle_idempotent, CanonicalData};
pub use certificate::{
    certify_summand, global_rows, Route, SummandCertificate, SummandContext, SOLVER_LIMIT,
};
pub use complement::{
    invariant_complements, BasisCoords, ComplementFamily, ComplementOutcome, TensorOp,
};
pub use family::{
    construct_b_family, elimination_shapes, lie_power_of, DecompositionResult, DegreeStep,
    FamilyOptions, Stage, UPiece,
};
pub use filtration::{
    scalar_action_check, split_tensor_power, summand_basis_check, ClassSplit, FiltrationReport,
    FiltrationSummary,
};
pub use verify::{
    certify_decomposition, check_direct_sums, check_summand, truncation_consistency,
    DecompositionReport, SumCheck, SumPart, SummandCheck, TruncationCheck,
};
