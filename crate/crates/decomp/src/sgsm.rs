use ircl_core::{Elem, FinResLat, Report};

use crate::system::extract_system;
use crate::DecompError;

fn require(a: &FinResLat) -> Result<(), DecompError> {
    if let Some(w) = a.commutative_witness() {
        return Err(DecompError::NotCommutative(w));
    }
    if let Some(w) = a.idempotent_witness().or_else(|| a.conic_witness()) {
        return Err(DecompError::NotConicIdempotent(w));
    }
    Ok(())
}

fn odd_sugihara_skeleton(a: &FinResLat) -> Result<bool, DecompError> {
    let d = extract_system(a)?;
    let s = d.skeleton();
    let star = |x: Elem| s.inv_r(x);
    Ok(s.is_commutative() && s.elems().all(|x| star(star(x)) == x))
}

/// Block-wise: odd Sugihara skeleton, trivial strictly positive blocks.
pub fn sgsm_by_blocks(a: &FinResLat) -> Result<bool, DecompError> {
    require(a)?;
    let d = extract_system(a)?;
    let s = d.skeleton();
    let pos_trivial = s.elems().all(|t| !s.lt(s.unit(), t) || d.block(t).is_trivial());
    Ok(odd_sugihara_skeleton(a)? && pos_trivial)
}

/// Block-wise: odd Sugihara skeleton, every block other than that of 1 trivial.
pub fn central_sgsm_by_blocks(a: &FinResLat) -> Result<bool, DecompError> {
    require(a)?;
    let d = extract_system(a)?;
    let s = d.skeleton();
    let others_trivial = s.elems().all(|t| t == s.unit() || d.block(t).is_trivial());
    Ok(odd_sugihara_skeleton(a)? && others_trivial)
}

fn star(a: &FinResLat, x: Elem) -> Elem {
    a.ld(x, a.unit())
}

/// First `x` with `(x ∨ 1)** ≠ x ∨ 1`.
pub fn sgsm_identity_witness(a: &FinResLat) -> Option<String> {
    let u = a.unit();
    a.elems()
        .find(|&x| {
            let j = a.join(x, u);
            star(a, star(a, j)) != j
        })
        .map(|x| a.label(x).to_string())
}

/// First `x` with `1 ≰ x** ∨ (x** → x)`.
pub fn central_identity_witness(a: &FinResLat) -> Option<String> {
    a.elems()
        .find(|&x| {
            let ss = star(a, star(a, x));
            !a.leq(a.unit(), a.join(ss, a.ld(ss, x)))
        })
        .map(|x| a.label(x).to_string())
}

/// Both routes side by side with their agreement.
pub fn sgsm_report(a: &FinResLat) -> Result<Report, DecompError> {
    let mut rep = Report::new("generalized Sugihara");
    let b = sgsm_by_blocks(a)?;
    let i = sgsm_identity_witness(a);
    rep.check("blocks agree with identity", (b != i.is_none()).then(|| format!("blocks {b}, identity {i:?}")));
    let cb = central_sgsm_by_blocks(a)?;
    let ci = i.is_none() && central_identity_witness(a).is_none();
    rep.check("central blocks agree with identities", (cb != ci).then(|| format!("blocks {cb}, identities {ci}")));
    Ok(rep)
}

pub fn is_sgsm(a: &FinResLat) -> Result<bool, DecompError> {
    let b = sgsm_by_blocks(a)?;
    if b != sgsm_identity_witness(a).is_none() {
        return Err(DecompError::Internal("block test and identity disagree".into()));
    }
    Ok(b)
}

pub fn is_central_sgsm(a: &FinResLat) -> Result<bool, DecompError> {
    let b = central_sgsm_by_blocks(a)?;
    let i = sgsm_identity_witness(a).is_none() && central_identity_witness(a).is_none();
    if b != i {
        return Err(DecompError::Internal("central block test and identities disagree".into()));
    }
    Ok(b)
}
