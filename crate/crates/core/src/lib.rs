//! Finite residuated lattices: validated construction, derived operations,
//! property predicates.

mod algebra;
mod hom;
mod ops;
mod props;
mod report;

pub use algebra::{order_from_covers, BuildError, Elem, FinResLat};
pub use hom::{hom_witness, is_embedding, is_homomorphism, is_injective, label_map, same_by_labels};
pub use ops::{BlockKind, CoreError, Sign, SignedElement};
pub use props::PropertyFlags;
pub use report::{Check, Report};

/// Construct from labels, cover pairs, a product table and the unit index.
pub fn build_algebra_raw(
    elements: &[&str],
    covers: &[(Elem, Elem)],
    mult: Vec<Elem>,
    unit: Elem,
) -> Result<FinResLat, BuildError> {
    FinResLat::from_covers(elements.iter().map(|s| s.to_string()).collect(), covers, mult, unit)
}

#[cfg(test)]
mod tests;
