//! Exact computations with modular Lie powers.
//!
//! Everything here runs over a prime field `F_p` (with an integer mode for
//! characteristic-zero cross-checks of descent-algebra identities). The
//! building blocks are canonical echelon-form subspaces ([`linalg`]),
//! partition combinatorics ([`combinat`]), tensors and free Lie algebras
//! ([`freelie`]), the Solomon descent algebra ([`descent`]) and group actions
//! on tensor powers ([`modrep`]). [`decompose`] uses all of them to split
//! tensor powers by descent idempotents and to construct, and certify, the
//! summands `B_r` that decompose Lie powers into Lie powers of `p`-power
//! degree.

pub mod combinat;
pub mod decompose;
pub mod descent;
pub mod error;
pub mod format;
pub mod fp;
pub mod freelie;
pub mod linalg;
pub mod modrep;

pub use error::{Error, Result};
pub use fp::{FpScalar, Prime};
