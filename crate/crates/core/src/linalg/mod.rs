//! Exact linear algebra over `F_p`.

mod echelon;
mod equivariant;
mod matrix;
mod subspace;
mod system;

pub use echelon::{BitEchelon, EchelonBuilder};
pub use equivariant::{
    retraction_system, solve_equivariant_projection, solve_retraction, verify_projection,
    GroupAction, ProjectionOutcome, RetractionOutcome,
};
pub use matrix::{rref, FpMatrix};
pub use subspace::{is_direct_sum, Subspace};
pub use system::{LinearSystem, Solution, SolveOutcome};
