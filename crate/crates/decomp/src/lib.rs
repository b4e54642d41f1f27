//! Decomposition systems: a skeleton chain with a topped join-semilattice
//! block over each element, and the conic idempotent residuated lattices they
//! describe.

mod block;
mod sgsm;
mod system;

pub use block::Block;
pub use sgsm::{
    central_identity_witness, central_sgsm_by_blocks, is_central_sgsm, is_sgsm, sgsm_by_blocks,
    sgsm_identity_witness, sgsm_report,
};
pub use system::{build_algebra, extract_system, is_subsystem, subsystem_report, DecompSystem};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompError {
    #[error("invalid block: {0}")]
    InvalidBlock(String),
    #[error("invalid decomposition system: {0}")]
    InvalidSystem(String),
    #[error("not conic and idempotent: {0}")]
    NotConicIdempotent(String),
    #[error("not commutative at {0}")]
    NotCommutative(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

#[cfg(test)]
mod tests;
