use std::collections::BTreeSet;

use ircl_core::{Elem, FinResLat, PropertyFlags, Report};

use crate::filter::{
    congruence_from_filter, enumerate_filters, generate_filter_oracle, quotient, CongFilter, Congruence,
};
use crate::terms::require_semiconic_idempotent;
use crate::CongrError;

/// First pair `x ∨ y = 1` with neither equal to 1.
pub fn join_irreducible_one_witness(a: &FinResLat) -> Option<(Elem, Elem)> {
    let u = a.unit();
    a.elems()
        .flat_map(|x| a.elems().map(move |y| (x, y)))
        .find(|&(x, y)| x != u && y != u && a.join(x, y) == u)
}

/// FSI through the equational route: nontrivial with 1 join-irreducible.
pub fn fsi_by_join_irreducible(a: &FinResLat) -> bool {
    a.len() > 1 && join_irreducible_one_witness(a).is_none()
}

/// FSI through the congruence lattice: nontrivial, and the identity is not a
/// meet of two strictly larger congruences.
pub fn is_fsi(a: &FinResLat) -> bool {
    if a.len() <= 1 {
        return false;
    }
    let fs = enumerate_filters(a);
    let above: Vec<&CongFilter> = fs.iter().filter(|f| f.len() > fs[0].len()).collect();
    above.iter().all(|f| {
        above.iter().all(|g| {
            let common: Vec<Elem> = f.elems().iter().copied().filter(|&x| g.contains(x)).collect();
            common.len() > fs[0].len()
        })
    })
}

/// The least non-identity congruence, if there is exactly one minimal one.
pub fn monolith(a: &FinResLat) -> Option<Congruence> {
    let fs = enumerate_filters(a);
    let nontriv: Vec<&CongFilter> = fs.iter().skip(1).collect();
    let least = nontriv.iter().find(|f| nontriv.iter().all(|g| f.is_subset(g)))?;
    Some(congruence_from_filter(a, least))
}

pub fn is_si(a: &FinResLat) -> bool {
    a.len() > 1 && monolith(a).is_some()
}

/// Congruences whose quotient is subdirectly irreducible: non-total ones with
/// a unique upper cover in the filter lattice.
pub fn si_congruences(a: &FinResLat) -> Vec<Congruence> {
    let fs = enumerate_filters(a);
    let mut out = Vec::new();
    for f in &fs {
        if f.len() == a.len() {
            continue;
        }
        let above: Vec<&CongFilter> = fs.iter().filter(|g| g.len() > f.len() && f.is_subset(g)).collect();
        if above.iter().any(|g| above.iter().all(|h| g.is_subset(h))) {
            out.push(congruence_from_filter(a, f));
        }
    }
    out
}

/// Every subdirectly irreducible quotient is conic.
pub fn is_semiconic_finite(a: &FinResLat) -> bool {
    si_congruences(a).iter().all(|t| quotient(a, t).is_conic())
}

/// Values reachable from `v` by at most `depth` conjugations `λ_u`, `ρ_u`.
fn conjugate_orbit(a: &FinResLat, v: Elem, depth: usize) -> BTreeSet<Elem> {
    let mut seen = BTreeSet::from([v]);
    let mut frontier = vec![v];
    for _ in 0..depth {
        let mut next = Vec::new();
        for &w in &frontier {
            for u in a.elems() {
                let (l, r) = a.conjugates(u, w);
                for z in [l, r] {
                    if seen.insert(z) {
                        next.push(z);
                    }
                }
            }
        }
        if next.is_empty() {
            break;
        }
        frontier = next;
    }
    seen
}

/// First `x` failing `1 = γ1(x ∧ 1) ∨ γ2((x\1) ∧ 1)` for iterated conjugates of
/// composition depth at most `depth`.
pub fn semiconic_schema_witness(a: &FinResLat, depth: usize) -> Option<String> {
    let u = a.unit();
    for x in a.elems() {
        let ps = conjugate_orbit(a, a.meet(x, u), depth);
        let qs = conjugate_orbit(a, a.meet(a.ld(x, u), u), depth);
        for &p in &ps {
            for &q in &qs {
                if a.join(p, q) != u {
                    return Some(format!("x={} at {} v {}", a.label(x), a.label(p), a.label(q)));
                }
            }
        }
    }
    None
}

pub fn check_semiconic_schema(a: &FinResLat, depth: usize) -> bool {
    semiconic_schema_witness(a, depth).is_none()
}

/// For a subalgebra and one of its congruences, the congruence of `b` generated
/// by it, or a description of the mismatch on the subalgebra.
pub fn extend_congruence(b: &FinResLat, incl: &[Elem], theta: &Congruence, sub: &FinResLat) -> Result<Congruence, String> {
    let f = crate::filter::filter_from_congruence(sub, theta);
    let seeds: Vec<Elem> = f.elems().iter().map(|&x| incl[x]).collect();
    let psi = congruence_from_filter(b, &generate_filter_oracle(b, &seeds));
    let back = psi.restrict(incl);
    if &back == theta {
        Ok(psi)
    } else {
        let x = (0..incl.len())
            .flat_map(|i| (0..incl.len()).map(move |j| (i, j)))
            .find(|&(i, j)| back.related(i, j) != theta.related(i, j))
            .expect("restrictions differ somewhere");
        Err(format!("{} ~ {} in extension only", sub.label(x.0), sub.label(x.1)))
    }
}

/// First subalgebra congruence that has no extension, on any finite algebra.
pub fn cep_witness(b: &FinResLat) -> Option<String> {
    for s in b.subuniverses() {
        let (sub, incl) = b.subalgebra(&s).expect("subuniverse");
        for f in enumerate_filters(&sub) {
            let theta = congruence_from_filter(&sub, &f);
            if let Err(w) = extend_congruence(b, &incl, &theta, &sub) {
                let names: Vec<&str> = incl.iter().map(|&x| b.label(x)).collect();
                return Some(format!("subalgebra {{{}}}: {w}", names.join(",")));
            }
        }
    }
    None
}

/// Congruence extension over every subalgebra; a failure is `CepFailure`.
pub fn check_cep(b: &FinResLat) -> Result<Report, CongrError> {
    require_semiconic_idempotent(b)?;
    let mut count = 0;
    for s in b.subuniverses() {
        let (sub, incl) = b.subalgebra(&s).expect("subuniverse");
        for f in enumerate_filters(&sub) {
            let theta = congruence_from_filter(&sub, &f);
            extend_congruence(b, &incl, &theta, &sub).map_err(CongrError::CepFailure)?;
            count += 1;
        }
    }
    let mut rep = Report::new("congruence extension");
    rep.pass(format!("{count} subalgebra congruences extend"));
    Ok(rep)
}

pub fn property_flags(a: &FinResLat) -> PropertyFlags {
    PropertyFlags::compute(a, is_semiconic_finite)
}
