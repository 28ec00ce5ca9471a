//! Finite permutation groups, Sylow fusion systems `F_S(G)` and
//! supersolvability certificates.

pub mod classify;
pub mod construct;
pub mod error;
pub mod fixture;
pub mod fusion;
pub mod group;
pub mod lattice;
pub mod perm;
pub mod verify;

pub use error::{Error, Result};
pub use group::{ElemId, FiniteGroup, Subgroup};
pub use perm::Permutation;
