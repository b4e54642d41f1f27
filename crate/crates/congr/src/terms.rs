use std::collections::BTreeSet;

use ircl_core::{Elem, FinResLat, Report};

use crate::filter::CongFilter;
use crate::CongrError;

fn double(a: &FinResLat, x: Elem, left: bool) -> Elem {
    if left {
        a.inv_ell(a.inv_ell(x))
    } else {
        a.inv_r(a.inv_r(x))
    }
}

/// Values `y^{c1c1...cncn}` over all words of length n.
fn words(a: &FinResLat, y: Elem, n: usize) -> BTreeSet<Elem> {
    let mut cur = BTreeSet::from([y]);
    for _ in 0..n {
        cur = cur.iter().flat_map(|&v| [double(a, v, true), double(a, v, false)]).collect();
    }
    cur
}

/// `s_n(y) = y ∧ ⋀ y^{c1c1...cncn}`.
pub fn s_term(a: &FinResLat, y: Elem, n: usize) -> Elem {
    words(a, y, n).into_iter().fold(y, |m, v| a.meet(m, v))
}

/// `t_n(y) = 1 ∧ s_n(y)`.
pub fn t_term(a: &FinResLat, y: Elem, n: usize) -> Elem {
    a.meet(a.unit(), s_term(a, y, n))
}

/// The n-fold composite `s^n(y)`.
pub fn s_iter(a: &FinResLat, y: Elem, n: usize) -> Elem {
    (0..n).fold(y, |v, _| s_term(a, v, 1))
}

/// First n with `s^n(y) = s^{n+1}(y)`; always at most `|A|`.
pub fn s_stabilization(a: &FinResLat, y: Elem) -> usize {
    let mut n = 0;
    let mut v = y;
    loop {
        let w = s_term(a, v, 1);
        if w == v {
            return n;
        }
        v = w;
        n += 1;
    }
}

/// Every value `s_n(y)`, n ≥ 1. The word sets are eventually periodic in n, so
/// iterating until a set repeats reaches every value.
pub fn s_values(a: &FinResLat, y: Elem) -> Vec<Elem> {
    let mut seen: Vec<BTreeSet<Elem>> = vec![BTreeSet::from([y])];
    let mut vals = BTreeSet::new();
    loop {
        let next: BTreeSet<Elem> =
            seen.last().unwrap().iter().flat_map(|&v| [double(a, v, true), double(a, v, false)]).collect();
        if seen[1..].contains(&next) {
            break;
        }
        vals.insert(next.iter().fold(y, |m, &v| a.meet(m, v)));
        seen.push(next);
    }
    vals.into_iter().collect()
}

pub(crate) fn require_semiconic_idempotent(a: &FinResLat) -> Result<(), CongrError> {
    if let Some(w) = a.idempotent_witness() {
        return Err(CongrError::NotSemiconicIdempotent(format!("not idempotent at {w}")));
    }
    if !crate::checks::is_semiconic_finite(a) {
        return Err(CongrError::NotSemiconicIdempotent("not semiconic".into()));
    }
    Ok(())
}

/// `↑{t_{n1}(y1) ∧ ... ∧ t_{nk}(yk)}` with every exponent; on a finite algebra
/// this is the upset of one element.
pub fn generate_filter_formula(a: &FinResLat, seeds: &[Elem]) -> Result<CongFilter, CongrError> {
    require_semiconic_idempotent(a)?;
    let u = a.unit();
    let m = seeds.iter().flat_map(|&y| s_values(a, y)).fold(u, |m, v| a.meet(m, a.meet(u, v)));
    Ok(CongFilter::principal_upset(a, m))
}

/// `⟨F ∪ {x}⟩ = ↑{y ∧ s_n(x) : y ∈ F}`.
pub fn extend_filter_formula(a: &FinResLat, f: &CongFilter, x: Elem) -> Result<CongFilter, CongrError> {
    require_semiconic_idempotent(a)?;
    let vals = s_values(a, x);
    let mut gens = Vec::new();
    for &y in f.elems() {
        for &v in &vals {
            gens.push(a.meet(y, v));
        }
    }
    Ok(CongFilter::from_elems(a.elems().filter(|&z| gens.iter().any(|&g| a.leq(g, z))).collect()))
}

/// `x ∨ y = 1 ⇒ s_n(x) ∨ s_m(y) = 1` for all exponents.
pub fn check_join_one_implication(a: &FinResLat) -> Result<Report, CongrError> {
    require_semiconic_idempotent(a)?;
    let u = a.unit();
    let sv: Vec<Vec<Elem>> = a.elems().map(|x| s_values(a, x)).collect();
    let mut w = None;
    'outer: for x in a.elems() {
        for y in a.elems() {
            if a.join(x, y) != u {
                continue;
            }
            for &p in &sv[x] {
                for &q in &sv[y] {
                    if a.join(p, q) != u {
                        w = Some(format!("{} {}", a.label(x), a.label(y)));
                        break 'outer;
                    }
                }
            }
        }
    }
    let mut rep = Report::new("join-one implication");
    rep.check("x v y = 1 implies s_n(x) v s_m(y) = 1", w);
    Ok(rep)
}
