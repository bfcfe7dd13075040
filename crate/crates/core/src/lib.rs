//! Exact computation of the sum of element orders ψ(G) over finite
//! groups, the solvability criterion comparing 1617·ψ(G) with
//! 211·ψ(C_n), and a verification harness that sweeps a corpus of
//! constructed groups against the criterion and its supporting bounds.

pub mod corpus;
pub mod error;
pub mod field;
pub mod group;
pub mod perm;
pub mod psi;
pub mod subgroup;
pub mod verify;

pub use error::{Error, Result};
