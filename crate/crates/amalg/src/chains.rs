use std::collections::BTreeSet;

use ircl_chains::{crown_decomposition, nested_sum};
use ircl_core::{label_map, FinResLat};

use crate::vform::{verify_amalgam, AmalgamCert, VFormation};
use crate::AmalgError;

/// Which side's private pieces come first between two shared pieces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MergeOrder {
    #[default]
    BFirst,
    CFirst,
}

/// Piece label sets, bottom piece first.
fn pieces(x: &FinResLat, name: &str) -> Result<Vec<BTreeSet<String>>, AmalgError> {
    if x.len() == 1 {
        return Ok(Vec::new());
    }
    let dec = crown_decomposition(x).map_err(|e| AmalgError::NotStarInvolutive(format!("{name}: {e}")))?;
    Ok(dec.pieces.iter().map(|p| p.iter().map(|&e| x.label(e).to_string()).collect()).collect())
}

/// Splits a piece sequence at the shared pieces: `(segments, anchors)` with
/// one more segment than anchors.
fn segments(ps: Vec<BTreeSet<String>>, shared: &BTreeSet<String>) -> (Vec<Vec<BTreeSet<String>>>, Vec<BTreeSet<String>>) {
    let mut segs = vec![Vec::new()];
    let mut anchors = Vec::new();
    for p in ps {
        if p.iter().any(|l| shared.contains(l)) {
            anchors.push(p);
            segs.push(Vec::new());
        } else {
            segs.last_mut().unwrap().push(p);
        }
    }
    (segs, anchors)
}

fn summand(x: &FinResLat, labels: &BTreeSet<String>) -> FinResLat {
    let mut set: Vec<usize> = labels.iter().map(|l| x.index_of(l).unwrap()).collect();
    set.push(x.unit());
    set.sort_unstable();
    x.subalgebra(&set).expect("pieces are subalgebras").0
}

pub fn amalgamate_star_inv_chains(v: &VFormation) -> Result<AmalgamCert, AmalgError> {
    amalgamate_star_inv_chains_with(v, MergeOrder::BFirst)
}

/// Nested sum over the merged index chains of B and C.
pub fn amalgamate_star_inv_chains_with(v: &VFormation, order: MergeOrder) -> Result<AmalgamCert, AmalgError> {
    if let Some(w) = v.reduced_witness() {
        return Err(AmalgError::NotReduced(w));
    }
    for (x, name) in [(&v.a, "A"), (&v.b, "B"), (&v.c, "C")] {
        if let Some(w) = x.idempotent_witness().or_else(|| x.chain_witness()) {
            return Err(AmalgError::NotStarInvolutive(format!("{name} is not an idempotent chain: {w}")));
        }
    }
    let shared: BTreeSet<String> =
        v.a.elems().filter(|&x| x != v.a.unit()).map(|x| v.a.label(x).to_string()).collect();
    let (bsegs, banchors) = segments(pieces(&v.b, "B")?, &shared);
    let (csegs, canchors) = segments(pieces(&v.c, "C")?, &shared);
    if banchors != canchors {
        return Err(AmalgError::Internal("pieces through A differ between B and C".into()));
    }
    if banchors.iter().any(|p| !p.is_subset(&shared)) {
        return Err(AmalgError::Internal("a piece meets A without lying in it".into()));
    }
    let mut summands = Vec::new();
    for (i, (bs, cs)) in bsegs.iter().zip(&csegs).enumerate() {
        let b_part = bs.iter().map(|p| summand(&v.b, p));
        let c_part = cs.iter().map(|p| summand(&v.c, p));
        match order {
            MergeOrder::BFirst => summands.extend(b_part.chain(c_part)),
            MergeOrder::CFirst => summands.extend(c_part.chain(b_part)),
        }
        if let Some(p) = banchors.get(i) {
            summands.push(summand(&v.b, p));
        }
    }
    let d = if summands.is_empty() {
        FinResLat::trivial(v.b.label(v.b.unit()))
    } else {
        nested_sum(&summands).map_err(|e| AmalgError::Internal(format!("nested sum: {e}")))?.0
    };
    let gb = label_map(&v.b, &d).ok_or_else(|| AmalgError::Internal("B label missing from D".into()))?;
    let gc = label_map(&v.c, &d).ok_or_else(|| AmalgError::Internal("C label missing from D".into()))?;
    let cert = AmalgamCert { d, gb, gc, strong: true };
    let rep = verify_amalgam(v, &cert);
    match rep.first_failure() {
        None => Ok(cert),
        Some(c) => Err(AmalgError::Internal(format!("constructed amalgam fails `{}`: {:?}", c.name, c.witness))),
    }
}
