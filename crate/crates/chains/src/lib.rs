//! Idempotent residuated chains through their Galois connection reducts and
//! enhanced monoidal preorders; layers, crowns and nested sums.

mod crown;
mod emp;
mod igc;

pub use crown::{
    crown_algebra, crown_decomposition, crown_emp, crown_layers, generate_subalgebra, is_vertical_crown,
    nested_sum, nested_sum_emp, CrownDecomposition, CrownKind, CrownType,
};
pub use emp::{
    classify_pair, encode_layers, from_emp, layers, monoidal_preorder, natural_order, natural_order_agrees,
    to_emp, Emp, EmpError, Layer, LayerSeq, PairClass, Tie,
};
pub use igc::{igc_reduct, residuated_from_igc, verify_igc, IdGaloisConn};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChainError {
    #[error("not a chain: {0}")]
    NotAChain(String),
    #[error("not idempotent at {0}")]
    NotIdempotent(String),
    #[error("not star-involutive: {0}")]
    NotStarInvolutive(String),
    #[error("invalid idempotent Galois connection: {0}")]
    InvalidIgc(String),
    #[error(transparent)]
    InvalidEmp(#[from] EmpError),
    #[error("pair not in any configuration: {0}")]
    NotConfigured(String),
    #[error("nested sum side condition fails for summand {index}: {witness}")]
    SideConditionViolated { index: usize, witness: String },
    #[error("label `{0}` occurs in two summands")]
    LabelClash(String),
    #[error("infinite crowns have no finite realization")]
    InfiniteCrown,
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
