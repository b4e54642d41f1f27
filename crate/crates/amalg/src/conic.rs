use ircl_core::{label_map, FinResLat};
use ircl_decomp::{build_algebra, extract_system, Block, DecompSystem};

use crate::blocks::{block_amalgam, BlockAmalgKind};
use crate::chains::amalgamate_star_inv_chains;
use crate::vform::{verify_amalgam, AmalgamCert, VFormation};
use crate::AmalgError;

fn system(x: &FinResLat, name: &str) -> Result<DecompSystem, AmalgError> {
    extract_system(x).map_err(|e| AmalgError::NotConicIdempotent(format!("{name}: {e}")))
}

/// Skeleton amalgam by the chain construction, then one block amalgam per
/// element of the amalgamated skeleton.
pub fn amalgamate_rigid_conjunctive_conic(v: &VFormation, block_bound: usize) -> Result<AmalgamCert, AmalgError> {
    if let Some(w) = v.reduced_witness() {
        return Err(AmalgError::NotReduced(w));
    }
    for (x, name) in [(&v.a, "A"), (&v.b, "B"), (&v.c, "C")] {
        if let Some(w) = x.idempotent_witness().or_else(|| x.conic_witness()) {
            return Err(AmalgError::NotConicIdempotent(format!("{name}: {w}")));
        }
        if let Some(w) = x.rigid_witness() {
            return Err(AmalgError::NotRigid(format!("{name}: {w}")));
        }
        if let Some(w) = x.conjunctive_witness() {
            return Err(AmalgError::NotConjunctive(format!("{name}: {w}")));
        }
    }
    let (da, db, dc) = (system(&v.a, "A")?, system(&v.b, "B")?, system(&v.c, "C")?);
    let sv = VFormation::by_labels(da.skeleton().clone(), db.skeleton().clone(), dc.skeleton().clone())?;
    let skel = amalgamate_star_inv_chains(&sv)?.d;
    let block_at = |d: &DecompSystem, l: &str| d.skeleton().index_of(l).map(|s| d.block(s).clone());
    let mut blocks = Vec::with_capacity(skel.len());
    for t in skel.elems() {
        let l = skel.label(t);
        let blk = match (block_at(&db, l), block_at(&dc, l)) {
            (Some(x), Some(y)) => {
                let z = block_at(&da, l).ok_or_else(|| AmalgError::Internal(format!("{l} shared outside A")))?;
                let kind =
                    if skel.leq(t, skel.unit()) { BlockAmalgKind::Brouwerian } else { BlockAmalgKind::Lattice };
                block_amalgam(kind, &x, &y, &z, block_bound)?.block
            }
            (Some(x), None) | (None, Some(x)) => x,
            (None, None) => Block::trivial(l),
        };
        blocks.push(blk);
    }
    let sys = DecompSystem::new(skel, blocks).map_err(|e| AmalgError::Internal(e.to_string()))?;
    let d = build_algebra(&sys).map_err(|e| AmalgError::Internal(e.to_string()))?;
    let gb = label_map(&v.b, &d).ok_or_else(|| AmalgError::Internal("B label missing from D".into()))?;
    let gc = label_map(&v.c, &d).ok_or_else(|| AmalgError::Internal("C label missing from D".into()))?;
    let cert = AmalgamCert { d, gb, gc, strong: true };
    match verify_amalgam(v, &cert).first_failure() {
        None => Ok(cert),
        Some(c) => Err(AmalgError::Internal(format!("constructed amalgam fails `{}`: {:?}", c.name, c.witness))),
    }
}
