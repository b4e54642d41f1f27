//! Congruence filters and congruences of finite residuated lattices, the
//! term formulas generating filters, and checks built on the congruence lattice.

mod checks;
mod filter;
mod terms;

pub use checks::{
    cep_witness, check_cep, check_semiconic_schema, extend_congruence, fsi_by_join_irreducible, is_fsi,
    is_semiconic_finite, is_si, join_irreducible_one_witness, monolith, property_flags,
    semiconic_schema_witness, si_congruences,
};
pub use filter::{
    congruence_from_filter, enumerate_congruences, enumerate_filters, filter_from_congruence,
    generate_filter_oracle, quotient, CongFilter, Congruence,
};
pub use terms::{
    check_join_one_implication, extend_filter_formula, generate_filter_formula, s_iter, s_stabilization,
    s_term, s_values, t_term,
};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CongrError {
    #[error("not semiconic and idempotent: {0}")]
    NotSemiconicIdempotent(String),
    #[error("congruence extension failed: {0}")]
    CepFailure(String),
}
