use std::collections::BTreeMap;

use ircl_core::{Elem, FinResLat, Report};
use ircl_decomp::extract_system;
use ircl_enumerate::{enumerate_chains, triple};

use crate::embed::embeddings;
use crate::search::upper_cover;
use crate::vform::VFormation;
use crate::AmalgError;

/// Largest candidate structure the replay runs against.
pub const REPLAY_BOUND: usize = 9;

fn el(x: &FinResLat, l: &str) -> Result<Elem, AmalgError> {
    x.index_of(l).ok_or_else(|| AmalgError::Internal(format!("figure element {l} missing")))
}

/// Branch outcomes per eliminating step, in first-seen order.
#[derive(Default)]
struct Tally {
    steps: Vec<(&'static str, usize)>,
    survivors: Vec<String>,
}

impl Tally {
    fn eliminate(&mut self, step: &'static str) {
        match self.steps.iter_mut().find(|(s, _)| *s == step) {
            Some(e) => e.1 += 1,
            None => self.steps.push((step, 1)),
        }
    }
    fn count(&self, step: &str) -> usize {
        self.steps.iter().find(|(s, _)| *s == step).map_or(0, |e| e.1)
    }
    fn into_report(self, rep: &mut Report, contradiction: &'static str) {
        let total: usize = self.steps.iter().map(|e| e.1).sum();
        for (s, n) in &self.steps {
            rep.pass(format!("step `{s}` eliminates {n} branches"));
        }
        rep.check(
            format!("all {} branches eliminated", total + self.survivors.len()),
            self.survivors.first().map(|s| format!("{} survive, first: {s}", self.survivors.len())),
        );
        rep.check(
            format!("contradiction `{contradiction}` reached"),
            (self.count(contradiction) == 0).then(|| "no branch reaches it".into()),
        );
    }
}

fn fact(rep: &mut Report, name: &str, ok: bool) {
    rep.check(format!("fact: {name}"), (!ok).then(|| "does not hold".into()));
}

fn chains_upto(n: usize) -> Vec<FinResLat> {
    (1..=n).flat_map(enumerate_chains).collect()
}

fn skeletons_upto(n: usize) -> Vec<FinResLat> {
    (1..=n).flat_map(enumerate_chains).filter(FinResLat::is_quasi_involutive).collect()
}

/// Replays the contradiction behind one failure figure against every
/// candidate structure with at most `bound` elements.
pub fn check_failure_argument(figure: &str) -> Result<Report, AmalgError> {
    check_failure_argument_to(figure, REPLAY_BOUND)
}

pub fn check_failure_argument_to(figure: &str, bound: usize) -> Result<Report, AmalgError> {
    let id = figure.strip_prefix("fig_").unwrap_or(figure);
    let t = triple(&format!("fig_{id}")).map_err(|_| AmalgError::UnknownFigure(figure.into()))?;
    let mut rep = Report::new(format!("failure argument for fig_{id}"));
    match id {
        "APfails" => apfails(&t.b, &t.c, bound, &mut rep)?,
        "APfailsVar" => apfails_var(&t.a, &t.b, &t.c, bound, &mut rep)?,
        "APfails2" => apfails2(&t.b, &t.c, bound, &mut rep)?,
        "APfails3" => apfails3(&t.a, &t.b, &t.c, bound, &mut rep)?,
        _ => return Err(AmalgError::UnknownFigure(figure.into())),
    }
    Ok(rep)
}

fn apfails(b: &FinResLat, c: &FinResLat, bound: usize, rep: &mut Report) -> Result<(), AmalgError> {
    let (b2, a3, b3) = (el(b, "b2")?, el(b, "a3")?, el(b, "b3")?);
    let (a2c, b2c, a3c, b3c) = (el(c, "a2'")?, el(c, "b2'")?, el(c, "a3'")?, el(c, "b3'")?);
    fact(rep, "b3^l = 1 in B", b.inv_ell(b3) == b.unit());
    fact(rep, "a3^r = b2 and b2^r = a3 in B", b.inv_r(a3) == b2 && b.inv_r(b2) == a3);
    fact(rep, "b3'^l = 1 in C", c.inv_ell(b3c) == c.unit());
    fact(rep, "a3'^r = b2' and b2'^r = a2' in C", c.inv_r(a3c) == b2c && c.inv_r(b2c) == a2c);
    let ds = chains_upto(bound);
    let forced = |x: &FinResLat, e: Elem| {
        ds.iter().all(|d| embeddings(x, d, &[]).iter().all(|g| upper_cover(d, d.unit()) == Some(g[e])))
    };
    fact(rep, &format!("a3 is the upper cover of 1 in every chain with at most {bound} elements containing B"), forced(b, a3));
    fact(rep, &format!("a3' is the upper cover of 1 in every chain with at most {bound} elements containing C"), forced(c, a3c));
    let mut tally = Tally::default();
    for d in &ds {
        for gb in embeddings(b, d, &[]) {
            for v in d.elems().filter(|&v| v != d.unit()) {
                if upper_cover(d, d.unit()) != Some(v) {
                    tally.eliminate("a'_3 is an upper cover of 1");
                    continue;
                }
                if v != gb[a3] {
                    tally.survivors.push(format!("{}: a3 and a'_3 differ", d.labels().join(" ")));
                    continue;
                }
                let w = d.inv_r(v);
                if w != gb[b2] {
                    tally.survivors.push(format!("{}: b2 and b'_2 differ", d.labels().join(" ")));
                    continue;
                }
                if d.inv_r(w) == v {
                    tally.eliminate("a'_2 = a'_3");
                } else {
                    tally.survivors.push(format!("{}: a'_2 and a'_3 differ", d.labels().join(" ")));
                }
            }
        }
    }
    tally.into_report(rep, "a'_2 = a'_3");
    Ok(())
}

fn apfails_var(a: &FinResLat, b: &FinResLat, c: &FinResLat, bound: usize, rep: &mut Report) -> Result<(), AmalgError> {
    let (ab, bb, ea) = (el(b, "aB")?, el(b, "bB")?, el(b, "a")?);
    let (ac, bc) = (el(c, "aC")?, el(c, "bC")?);
    let v = VFormation::by_labels(a.clone(), b.clone(), c.clone())?;
    let quotients = crate::search::one_sided_targets(&v);
    fact(rep, "the only quotient of B injective on A is B itself", quotients.len() == 1 && quotients[0].0.b.len() == b.len());
    fact(rep, "bB^* = a in B", b.star_low(bb).ok() == Some(ea));
    fact(rep, "bC^* = a in C", c.star_low(bc).ok() == Some(el(c, "a")?));
    fact(rep, "aB bB = bB in B", b.mult(ab, bb) == bb);
    fact(rep, "aC bC = aC in C", c.mult(ac, bc) == ac);
    fact(rep, "A, B and C are quasi-involutive", a.is_quasi_involutive() && b.is_quasi_involutive() && c.is_quasi_involutive());
    let ds = chains_upto(bound);
    let forced = |x: &FinResLat, e: Elem, base: Elem| {
        ds.iter().all(|d| embeddings(x, d, &[]).iter().all(|g| upper_cover(d, g[base]) == Some(g[e])))
    };
    fact(rep, "aB covers a in every chain containing B", forced(b, ab, ea));
    fact(rep, "aC covers a in every chain containing C", forced(c, ac, el(c, "a")?));
    let mut tally = Tally::default();
    for d in &ds {
        for gb in embeddings(b, d, &[]) {
            for x in d.elems() {
                if upper_cover(d, gb[ea]) != Some(x) {
                    tally.eliminate("aC covers a");
                    continue;
                }
                if x != gb[ab] {
                    tally.survivors.push(format!("{}: aB and aC differ", d.labels().join(" ")));
                    continue;
                }
                let y = d.partner_unchecked(x);
                if d.mult(x, y) != x {
                    tally.eliminate("aB bB = bB against aC bC = aC");
                } else {
                    tally.survivors.push(format!("{}: products agree", d.labels().join(" ")));
                }
            }
        }
    }
    tally.into_report(rep, "aB bB = bB against aC bC = aC");
    Ok(())
}

/// Lower cover in a chain.
fn lc(s: &FinResLat, x: Elem) -> Option<Elem> {
    s.elems().filter(|&y| s.lt(y, x)).max_by_key(|&y| s.elems().filter(|&z| s.lt(z, y)).count())
}

fn skeleton(x: &FinResLat) -> Result<FinResLat, AmalgError> {
    Ok(extract_system(x).map_err(|e| AmalgError::Internal(e.to_string()))?.skeleton().clone())
}

fn apfails2(b: &FinResLat, c: &FinResLat, bound: usize, rep: &mut Report) -> Result<(), AmalgError> {
    let e = |x: &FinResLat, l: &str| el(x, l);
    let (bb, ba) = (e(b, "b")?, e(b, "a")?);
    fact(rep, "b is an inverse in B", b.inverses().contains(&bb));
    fact(rep, "c is an inverse in C", c.inverses().contains(&e(c, "c")?));
    fact(rep, "b1 meet b2 = b and b1 join b2 = a in B", b.meet(e(b, "b1")?, e(b, "b2")?) == bb && b.join(e(b, "b1")?, e(b, "b2")?) == ba);
    fact(rep, "b1' meet b2' = 1 and b1' join b2' = b in B", b.meet(e(b, "b1'")?, e(b, "b2'")?) == b.unit() && b.join(e(b, "b1'")?, e(b, "b2'")?) == bb);
    fact(rep, "c1 meet c2 = c and c1 join c2 = a in C", c.meet(e(c, "c1")?, e(c, "c2")?) == e(c, "c")? && c.join(e(c, "c1")?, e(c, "c2")?) == e(c, "a")?);
    fact(rep, "d1 meet d2 = 1 in C", c.meet(e(c, "d1")?, e(c, "d2")?) == c.unit());
    let sb = skeleton(b)?;
    let (sbb, sba) = (e(&sb, "b")?, e(&sb, "a")?);
    let mut tally = Tally::default();
    for sd in skeletons_upto(bound) {
        let u = sd.unit();
        for hb in embeddings(&sb, &sd, &[]) {
            let (gb, ga) = (hb[sbb], hb[sba]);
            for v in sd.elems() {
                for w in sd.elems() {
                    let step = if lc(&sd, ga) != Some(gb) {
                        "b is the lower cover of a"
                    } else if lc(&sd, gb) != Some(u) {
                        "b is the upper cover of 1"
                    } else if !sd.lt(v, ga) || !sd.lt(u, v) {
                        "1 < c < a"
                    } else if sd.lt(gb, v) {
                        "b < c excluded"
                    } else if sd.lt(v, gb) {
                        "c < b excluded"
                    } else if w != gb {
                        "b = d"
                    } else if w == v {
                        "c = d"
                    } else {
                        tally.survivors.push(sd.labels().join(" "));
                        continue;
                    };
                    tally.eliminate(step);
                }
            }
        }
    }
    tally.into_report(rep, "c = d");
    Ok(())
}

fn interval_collapse(q: &FinResLat, lo: Elem, hi: Elem, members: &[Elem]) -> Option<bool> {
    let img: std::collections::BTreeSet<Elem> = members.iter().copied().collect();
    if img.len() == 1 {
        return Some(true);
    }
    (img.len() == 5 && q.lt(lo, hi)).then_some(false)
}

fn apfails3(a: &FinResLat, b: &FinResLat, c: &FinResLat, bound: usize, rep: &mut Report) -> Result<(), AmalgError> {
    let e = |x: &FinResLat, l: &str| el(x, l);
    let (bb, ba, bu) = (e(b, "b")?, e(b, "a")?, b.unit());
    let upper: Vec<Elem> = ["b", "b1", "b2", "b3", "a"].iter().map(|l| e(b, l)).collect::<Result<_, _>>()?;
    let lower: Vec<Elem> = ["1", "b1'", "b2'", "b3'", "b"].iter().map(|l| e(b, l)).collect::<Result<_, _>>()?;
    let m3 = |lo: Elem, hi: Elem, atoms: &[Elem]| {
        atoms.iter().all(|&x| b.lt(lo, x) && b.lt(x, hi))
            && atoms.iter().enumerate().all(|(i, &x)| atoms[i + 1..].iter().all(|&y| b.meet(x, y) == lo && b.join(x, y) == hi))
    };
    fact(rep, "[b, a] is M3 in B", m3(bb, ba, &upper[1..4]));
    fact(rep, "[1, b] is M3 in B", m3(bu, bb, &lower[1..4]));
    fact(rep, "c is an inverse in C and d < c", c.inverses().contains(&e(c, "c")?) && c.lt(e(c, "d")?, e(c, "c")?));
    let v = VFormation::by_labels(a.clone(), b.clone(), c.clone())?;
    let mut tally = Tally::default();
    let mut images = BTreeMap::new();
    for (w, proj) in crate::search::one_sided_targets(&v) {
        let q = &w.b;
        let img = |xs: &[Elem]| xs.iter().map(|&x| proj[x]).collect::<Vec<_>>();
        let (ub, lb) = (img(&upper), img(&lower));
        let cu = interval_collapse(q, proj[bb], proj[ba], &ub);
        let cl = interval_collapse(q, proj[bu], proj[bb], &lb);
        let (Some(cu), Some(cl)) = (cu, cl) else {
            tally.survivors.push(format!("an M3 interval has an image of {} or {} elements", ub.len(), lb.len()));
            continue;
        };
        *images.entry((cu, cl)).or_insert(0) += 1;
        let sq = skeleton(q)?;
        let at = |x: Elem| sq.index_of(q.label(q.gamma(proj[x]))).expect("skeleton label");
        let (qb, qa) = (at(bb), at(ba));
        for sd in skeletons_upto(bound) {
            let u = sd.unit();
            for hb in embeddings(&sq, &sd, &[]) {
                let (gb, ga) = (hb[qb], hb[qa]);
                for x in sd.elems() {
                    for y in sd.elems() {
                        let step = if !cu && lc(&sd, ga) != Some(gb) {
                            "M3 image of [b, a]: g(b) is the lower cover of a"
                        } else if !cl && lc(&sd, gb) != Some(u) {
                            "M3 image of [1, b]: g(b) is the upper cover of 1"
                        } else if !sd.lt(u, x) || !sd.lt(x, ga) || !sd.lt(u, y) {
                            "1 < d, 1 < c < a"
                        } else if sd.lt(gb, x) {
                            "c <= g(b)"
                        } else if sd.lt(y, gb) {
                            "g(b) <= d"
                        } else if sd.leq(x, y) {
                            "c <= d"
                        } else {
                            tally.survivors.push(sd.labels().join(" "));
                            continue;
                        };
                        tally.eliminate(step);
                    }
                }
            }
        }
    }
    for ((cu, cl), n) in images {
        let show = |c: bool| if c { "a point" } else { "M3" };
        rep.pass(format!("M3 image step: {n} quotients send [b, a] to {} and [1, b] to {}", show(cu), show(cl)));
    }
    tally.into_report(rep, "c <= d");
    Ok(())
}
