//! Exhaustive generation of idempotent residuated chains and conic idempotent
//! residuated lattices up to isomorphism, and a library of named algebras.

mod canon;
mod gen;
mod lattices;
mod library;

pub use canon::{canonical_form, is_isomorphic, CanonicalForm};
pub use gen::{
    chain_from_word, chain_words, conic_systems, enumerate_chains, enumerate_conic, enumerate_idempotent_raw,
    enumerate_semiconic_fsi, word_emp,
};
pub use lattices::{distributive_lattices, lattices, topped_semilattices, Shape};
pub use library::{library, noncomm_sugihara, sugihara, triple, LibraryTriple, NAMES, TRIPLES};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumError {
    #[error("unknown library name `{0}`")]
    UnknownName(String),
    #[error("bad parameters: {0}")]
    BadParams(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
