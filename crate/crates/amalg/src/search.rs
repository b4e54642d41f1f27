use std::collections::BTreeSet;

use rayon::prelude::*;

use ircl_congr::{enumerate_congruences, fsi_by_join_irreducible, quotient};
use ircl_core::{Elem, FinResLat};
use ircl_decomp::{build_algebra, extract_system, Block, DecompSystem};
use ircl_enumerate::enumerate_chains;

use crate::blocks::{min_block, BlockReq, ShapeClass};
use crate::embed::{embeddings, first_embedding};
use crate::vform::{verify_amalgam, verify_one_sided, AmalgamCert, VFormation};

/// Class the amalgam is sought in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum AmalgClass {
    /// Idempotent residuated chains.
    Chains,
    /// Conic idempotent residuated lattices.
    Conic,
    /// Conic idempotent residuated lattices with 1 join-irreducible.
    ConicFsi,
}

impl AmalgClass {
    pub fn name(self) -> &'static str {
        match self {
            AmalgClass::Chains => "chains",
            AmalgClass::Conic => "conic",
            AmalgClass::ConicFsi => "conic-fsi",
        }
    }
}

/// Result of a bounded search. `cert` is the first amalgam by size, then
/// candidate order; `candidates` counts the target structures examined.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub cert: Option<AmalgamCert>,
    pub bound: usize,
    pub candidates: usize,
}

/// Two-sided problems a one-sided search reduces to: B replaced by each
/// quotient that stays injective on A, with the quotient map.
fn targets(v: &VFormation, one_sided: bool) -> Vec<(VFormation, Vec<Elem>)> {
    if !one_sided {
        return vec![(v.clone(), v.b.elems().collect())];
    }
    let mut out = Vec::new();
    for theta in enumerate_congruences(&v.b) {
        let img: BTreeSet<usize> = v.fb.iter().map(|&x| theta.class_of(x)).collect();
        if img.len() != v.a.len() {
            continue;
        }
        let q = quotient(&v.b, &theta);
        let proj: Vec<Elem> = v.b.elems().map(|x| theta.class_of(x)).collect();
        let fb = v.fb.iter().map(|&x| proj[x]).collect();
        if let Ok(w) = VFormation::new(v.a.clone(), q, v.c.clone(), fb, v.fc.clone()) {
            out.push((w, proj));
        }
    }
    out
}

fn pool() -> rayon::ThreadPool {
    let n = std::env::var("IRCL_THREADS").ok().and_then(|s| s.parse().ok()).unwrap_or(0);
    rayon::ThreadPoolBuilder::new().num_threads(n).build().expect("thread pool")
}

fn finish(v: &VFormation, one_sided: bool, d: FinResLat, gb: Vec<Elem>, gc: Vec<Elem>) -> Option<AmalgamCert> {
    let mut cert = AmalgamCert { d, gb, gc, strong: false };
    cert.strong = !one_sided && cert.images_meet_in_a(v);
    let rep = if one_sided { verify_one_sided(v, &cert) } else { verify_amalgam(v, &cert) };
    rep.passed().then_some(cert)
}

/// Exhaustive search for an amalgam of at most `bound` elements.
pub fn search_amalgam(v: &VFormation, class: AmalgClass, bound: usize, one_sided: bool) -> SearchOutcome {
    let ts = targets(v, one_sided);
    pool().install(|| match class {
        AmalgClass::Chains => search_chains(v, &ts, bound, one_sided),
        AmalgClass::Conic | AmalgClass::ConicFsi => search_conic(v, &ts, class == AmalgClass::ConicFsi, bound, one_sided),
    })
}

fn search_chains(v: &VFormation, ts: &[(VFormation, Vec<Elem>)], bound: usize, one_sided: bool) -> SearchOutcome {
    let ts: Vec<&(VFormation, Vec<Elem>)> = ts.iter().filter(|(w, _)| w.b.is_chain() && w.c.is_chain()).collect();
    let mut candidates = 0;
    let lo = ts.iter().map(|(w, _)| w.b.len().max(w.c.len())).min().unwrap_or(usize::MAX);
    for n in lo..=bound {
        let ds: Vec<FinResLat> = enumerate_chains(n).collect();
        let hit = ds.par_iter().enumerate().find_map_first(|(i, d)| {
            for (w, proj) in &ts {
                if w.b.len() > n || w.c.len() > n {
                    continue;
                }
                for gb in embeddings(&w.b, d, &[]) {
                    let mut pre = vec![None; w.c.len()];
                    for x in w.a.elems() {
                        pre[w.fc[x]] = Some(gb[w.fb[x]]);
                    }
                    if let Some(gc) = first_embedding(&w.c, d, &pre) {
                        let gb = proj.iter().map(|&y| gb[y]).collect();
                        if let Some(cert) = finish(v, one_sided, d.clone(), gb, gc) {
                            return Some((i, cert));
                        }
                    }
                }
            }
            None
        });
        match hit {
            Some((i, cert)) => return SearchOutcome { cert: Some(cert), bound, candidates: candidates + i + 1 },
            None => candidates += ds.len(),
        }
    }
    SearchOutcome { cert: None, bound, candidates }
}

/// A conic algebra seen through its decomposition system.
struct Side {
    sys: DecompSystem,
    /// Skeleton element and block position of every element.
    place: Vec<(Elem, usize)>,
}

impl Side {
    fn new(x: &FinResLat) -> Option<Side> {
        let sys = extract_system(x).ok()?;
        let s = sys.skeleton();
        let place = x
            .elems()
            .map(|e| {
                let g = x.gamma(e);
                let t = s.index_of(x.label(g)).expect("skeleton label");
                (t, sys.block(t).index_of(x.label(e)).expect("block label"))
            })
            .collect();
        Some(Side { sys, place })
    }
    fn skel(&self) -> &FinResLat {
        self.sys.skeleton()
    }
}

fn lower_cover(s: &FinResLat, t: Elem) -> Option<Elem> {
    s.elems().filter(|&x| s.lt(x, t)).max_by(|&x, &y| if s.leq(x, y) { std::cmp::Ordering::Less } else { std::cmp::Ordering::Greater })
}

/// Least element strictly above `t` in a chain.
pub(crate) fn upper_cover(s: &FinResLat, t: Elem) -> Option<Elem> {
    s.elems().filter(|&x| s.lt(t, x)).min_by(|&x, &y| if s.leq(x, y) { std::cmp::Ordering::Less } else { std::cmp::Ordering::Greater })
}

pub(crate) fn one_sided_targets(v: &VFormation) -> Vec<(VFormation, Vec<Elem>)> {
    targets(v, true)
}

struct Problem<'a> {
    w: &'a VFormation,
    proj: &'a [Elem],
    b: Side,
    c: Side,
}

/// Smallest amalgam over the skeleton `sd`, as `(size, algebra, gB', gC)`.
fn best_over(p: &Problem, sd: &FinResLat, fsi: bool, bound: usize, count: &mut usize) -> Option<(usize, FinResLat, Vec<Elem>, Vec<Elem>)> {
    let (sb, sc) = (p.b.skel(), p.c.skel());
    let k = sd.len();
    let mut best: Option<(usize, FinResLat, Vec<Elem>, Vec<Elem>)> = None;
    let admissible = |side: &Side, h: &[Elem]| {
        side.skel().elems().all(|s| {
            let blk = side.sys.block(s);
            (blk.is_trivial() || sd.is_central(h[s]))
                && side.sys.lower_cover(s).is_none_or(|c| lower_cover(sd, h[s]) == Some(h[c]))
        })
    };
    for hb in embeddings(sb, sd, &[]) {
        if !admissible(&p.b, &hb) {
            continue;
        }
        let mut pre = vec![None; sc.len()];
        let mut clash = false;
        for x in p.w.a.elems() {
            let (s, _) = p.b.place[p.w.fb[x]];
            let (t, _) = p.c.place[p.w.fc[x]];
            clash |= pre[t].is_some_and(|v| v != hb[s]);
            pre[t] = Some(hb[s]);
        }
        if clash {
            continue;
        }
        for hc in embeddings(sc, sd, &pre) {
            *count += 1;
            if !admissible(&p.c, &hc) {
                continue;
            }
            let cap = best.as_ref().map_or(bound, |b| b.0 - 1);
            if let Some(found) = assemble(p, sd, &hb, &hc, fsi, cap) {
                if found.0 >= k && best.as_ref().is_none_or(|b| found.0 < b.0) {
                    best = Some(found);
                }
            }
        }
    }
    best
}

/// Per skeleton element the smallest admissible block; `None` past `cap`.
fn assemble(
    p: &Problem,
    sd: &FinResLat,
    hb: &[Elem],
    hc: &[Elem],
    fsi: bool,
    cap: usize,
) -> Option<(usize, FinResLat, Vec<Elem>, Vec<Elem>)> {
    let inv = |h: &[Elem], t: Elem| h.iter().position(|&v| v == t);
    let bottom = sd.bottom();
    let mut total = sd.len();
    let mut blocks = Vec::with_capacity(sd.len());
    let mut maps = Vec::with_capacity(sd.len());
    for t in sd.elems() {
        let x = inv(hb, t).map(|s| p.b.sys.block(s));
        let y = inv(hc, t).map(|s| p.c.sys.block(s));
        let mut agree: Vec<(usize, usize)> = p
            .w
            .a
            .elems()
            .filter_map(|e| {
                let (s, i) = p.b.place[p.w.fb[e]];
                let (r, j) = p.c.place[p.w.fc[e]];
                (hb[s] == t && hc[r] == t).then_some((i, j))
            })
            .collect();
        agree.sort_unstable();
        agree.dedup();
        let class = if sd.leq(t, sd.unit()) {
            ShapeClass::Brouwerian
        } else if t == bottom {
            ShapeClass::Lattice
        } else {
            ShapeClass::Semilattice
        };
        let trivial = x.is_none_or(Block::is_trivial) && y.is_none_or(Block::is_trivial);
        let label = sd.label(t);
        if trivial {
            blocks.push(Block::trivial(label));
            maps.push((x.map(|_| vec![0]), y.map(|_| vec![0])));
            continue;
        }
        let req = BlockReq { x, y, agree, class, strong: false, top_join_irreducible: fsi && t == sd.unit() };
        let room = cap.checked_sub(total)? + 1;
        let pl = min_block(&req, room)?;
        total += pl.shape.len() - 1;
        let n = pl.shape.len();
        let mut k = 0;
        let labels: Vec<String> = (0..n)
            .map(|i| {
                if i == pl.shape.top() {
                    label.to_string()
                } else {
                    k += 1;
                    format!("{label}.{k}")
                }
            })
            .collect();
        let leq = (0..n * n).map(|c| pl.shape.leq(c / n, c % n)).collect();
        blocks.push(Block::new(labels, leq).ok()?);
        maps.push((x.map(|_| pl.mx.clone()), y.map(|_| pl.my.clone())));
    }
    if total > cap {
        return None;
    }
    let sys = DecompSystem::new(sd.clone(), blocks).ok()?;
    let d = build_algebra(&sys).ok()?;
    let image = |side: &Side, h: &[Elem], pick: &dyn Fn(&(Option<Vec<usize>>, Option<Vec<usize>>)) -> Option<Vec<usize>>| {
        side.place
            .iter()
            .map(|&(s, i)| {
                let t = h[s];
                let m = pick(&maps[t]).expect("mapped block");
                d.index_of(sys.block(t).label(m[i])).expect("block label in D")
            })
            .collect::<Vec<Elem>>()
    };
    let gb = image(&p.b, hb, &|m| m.0.clone());
    let gc = image(&p.c, hc, &|m| m.1.clone());
    if fsi && !fsi_by_join_irreducible(&d) {
        return None;
    }
    Some((total, d, gb, gc))
}

fn search_conic(v: &VFormation, ts: &[(VFormation, Vec<Elem>)], fsi: bool, bound: usize, one_sided: bool) -> SearchOutcome {
    let problems: Vec<Problem> = ts
        .iter()
        .filter_map(|(w, proj)| Some(Problem { w, proj, b: Side::new(&w.b)?, c: Side::new(&w.c)? }))
        .collect();
    let mut candidates = 0;
    let mut best: Option<(usize, AmalgamCert)> = None;
    let lo = problems.iter().map(|p| p.b.skel().len().max(p.c.skel().len())).min().unwrap_or(usize::MAX);
    for k in lo..=bound {
        if best.as_ref().is_some_and(|b| b.0 <= k) {
            break;
        }
        let skels: Vec<FinResLat> = enumerate_chains(k).filter(FinResLat::is_quasi_involutive).collect();
        let cap = best.as_ref().map_or(bound, |b| b.0 - 1);
        let results: Vec<(usize, Option<(usize, AmalgamCert)>)> = skels
            .par_iter()
            .map(|sd| {
                let mut count = 0;
                let mut local: Option<(usize, AmalgamCert)> = None;
                for p in &problems {
                    let cap = local.as_ref().map_or(cap, |b| b.0 - 1);
                    if let Some((size, d, gb, gc)) = best_over(p, sd, fsi, cap, &mut count) {
                        let gb = p.proj.iter().map(|&y| gb[y]).collect();
                        if let Some(cert) = finish(v, one_sided, d, gb, gc) {
                            local = Some((size, cert));
                        }
                    }
                }
                (count, local)
            })
            .collect();
        for (count, local) in results {
            candidates += count;
            if let Some((size, cert)) = local {
                if best.as_ref().is_none_or(|b| size < b.0) {
                    best = Some((size, cert));
                }
            }
        }
    }
    SearchOutcome { cert: best.map(|b| b.1), bound, candidates }
}
