//! V-formations and amalgams: certification, the two strong amalgamation
//! constructions, block amalgams and bounded exhaustive search.

mod argument;
mod blocks;
mod chains;
mod conic;
mod embed;
mod search;
mod vform;

pub use argument::{check_failure_argument, check_failure_argument_to, REPLAY_BOUND};
pub use blocks::{block_amalgam, sub_block_witness, BlockAmalgKind, BlockAmalgam, DISTRIBUTIVE_SHAPE_CAP, SHAPE_CAP};
pub use chains::{amalgamate_star_inv_chains, amalgamate_star_inv_chains_with, MergeOrder};
pub use conic::amalgamate_rigid_conjunctive_conic;
pub use embed::embeddings;
pub use search::{search_amalgam, AmalgClass, SearchOutcome};
pub use vform::{verify_amalgam, verify_one_sided, AmalgamCert, VFormation};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AmalgError {
    #[error("invalid V-formation: {0}")]
    InvalidVFormation(String),
    #[error("not reduced: {0}")]
    NotReduced(String),
    #[error("not a star-involutive idempotent chain: {0}")]
    NotStarInvolutive(String),
    #[error("not conic and idempotent: {0}")]
    NotConicIdempotent(String),
    #[error("not rigid: {0}")]
    NotRigid(String),
    #[error("not conjunctive: {0}")]
    NotConjunctive(String),
    #[error("no certified block amalgam with at most {0} elements")]
    BlockAmalgamBoundExceeded(usize),
    #[error("unknown figure `{0}`")]
    UnknownFigure(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

#[cfg(test)]
mod tests;
