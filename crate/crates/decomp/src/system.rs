use std::collections::HashSet;

use ircl_core::{label_map, Elem, FinResLat, Report};

use crate::block::Block;
use crate::DecompError;

/// A skeleton chain with a block over each of its elements. Element `s` of the
/// skeleton is the top of `blocks[s]` and both carry the same label.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecompSystem {
    skeleton: FinResLat,
    blocks: Vec<Block>,
    /// Defined exactly on the skeleton elements whose block is a proper prelattice.
    lower_cover: Vec<Option<Elem>>,
}

impl DecompSystem {
    pub fn new(skeleton: FinResLat, blocks: Vec<Block>) -> Result<DecompSystem, DecompError> {
        let inv = |m: String| Err(DecompError::InvalidSystem(m));
        if let Some(w) = skeleton.chain_witness() {
            return inv(format!("skeleton is not a chain at {w}"));
        }
        if let Some(w) = skeleton.idempotent_witness() {
            return inv(format!("skeleton is not idempotent at {w}"));
        }
        if blocks.len() != skeleton.len() {
            return inv(format!("{} blocks for {} skeleton elements", blocks.len(), skeleton.len()));
        }
        let mut seen = HashSet::new();
        for b in &blocks {
            for l in b.labels() {
                if !seen.insert(l.clone()) {
                    return inv(format!("label {l} used twice"));
                }
            }
        }
        let u = skeleton.unit();
        let mut lower_cover = vec![None; skeleton.len()];
        for s in skeleton.elems() {
            let b = &blocks[s];
            let name = skeleton.label(s);
            if b.label(b.top()) != name {
                return inv(format!("block of {name} has top {}", b.label(b.top())));
            }
            let below = skeleton.elems().filter(|&t| skeleton.lt(t, s)).max_by(|&x, &y| {
                if skeleton.leq(x, y) {
                    std::cmp::Ordering::Less
                } else {
                    std::cmp::Ordering::Greater
                }
            });
            if !b.is_lattice() {
                match below {
                    Some(c) => lower_cover[s] = Some(c),
                    None => return inv(format!("block of {name} has no bottom and {name} has no lower cover")),
                }
            }
            if skeleton.leq(s, u) {
                if let Some(w) = b.brouwerian_witness() {
                    return inv(format!("negative block of {name} is not Brouwerian: {w}"));
                }
            }
            if !b.is_trivial() && skeleton.inv_ell(s) != skeleton.inv_r(s) {
                return inv(format!("non-central {name} has a non-trivial block"));
            }
        }
        Ok(DecompSystem { skeleton, blocks, lower_cover })
    }

    /// All blocks trivial.
    pub fn trivial_over(skeleton: FinResLat) -> DecompSystem {
        let blocks = skeleton.labels().iter().map(|l| Block::trivial(l)).collect();
        DecompSystem::new(skeleton, blocks).expect("singleton blocks")
    }

    pub fn skeleton(&self) -> &FinResLat {
        &self.skeleton
    }
    pub fn block(&self, s: Elem) -> &Block {
        &self.blocks[s]
    }
    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }
    pub fn lower_cover(&self, s: Elem) -> Option<Elem> {
        self.lower_cover[s]
    }
    pub fn is_proper(&self, s: Elem) -> bool {
        self.lower_cover[s].is_some()
    }
    /// Number of elements of the built algebra.
    pub fn size(&self) -> usize {
        self.blocks.iter().map(Block::len).sum()
    }
    pub fn is_quasi_involutive(&self) -> bool {
        self.skeleton.is_quasi_involutive()
    }

    /// Skeleton elements in ascending order.
    pub fn ascending(&self) -> Vec<Elem> {
        let s = &self.skeleton;
        let mut v: Vec<Elem> = s.elems().collect();
        v.sort_by_key(|&x| s.elems().filter(|&y| s.lt(y, x)).count());
        v
    }

    /// `(skeleton element, block element)` for each element of the built
    /// algebra, in its numbering.
    pub fn layout(&self) -> Vec<(Elem, usize)> {
        self.ascending().into_iter().flat_map(|s| (0..self.blocks[s].len()).map(move |x| (s, x))).collect()
    }

    /// Equality up to element numbering, matching by labels.
    pub fn same_as(&self, other: &DecompSystem) -> bool {
        let (a, b) = (&self.skeleton, &other.skeleton);
        if !ircl_core::same_by_labels(a, b) {
            return false;
        }
        a.elems().all(|s| {
            let t = b.index_of(a.label(s)).unwrap();
            let (x, y) = (&self.blocks[s], &other.blocks[t]);
            x.len() == y.len()
                && (0..x.len()).all(|i| {
                    y.index_of(x.label(i)).is_some_and(|i2| {
                        (0..x.len()).all(|j| y.index_of(x.label(j)).is_some_and(|j2| x.leq(i, j) == y.leq(i2, j2)))
                    })
                })
        })
    }
}

/// The decomposition system of a conic idempotent residuated lattice.
pub fn extract_system(a: &FinResLat) -> Result<DecompSystem, DecompError> {
    let (skel, incl) = a.skeleton().map_err(|e| DecompError::NotConicIdempotent(e.to_string()))?;
    let fibers = a.blocks();
    let mut blocks = Vec::with_capacity(skel.len());
    for &s in &incl {
        let f = &fibers[&s];
        let m = f.len();
        let labels = f.iter().map(|&x| a.label(x).to_string()).collect();
        let leq = (0..m * m).map(|c| a.leq(f[c / m], f[c % m])).collect();
        blocks.push(Block::new(labels, leq)?);
    }
    DecompSystem::new(skel, blocks)
        .map_err(|e| DecompError::Internal(format!("extracted system is invalid: {e}")))
}

/// The conic idempotent residuated lattice of a decomposition system; the
/// elements are numbered as in [`DecompSystem::layout`].
pub fn build_algebra(d: &DecompSystem) -> Result<FinResLat, DecompError> {
    let s = &d.skeleton;
    let lay = d.layout();
    let n = lay.len();
    let mut start = vec![0; s.len()];
    let mut acc = 0;
    for t in d.ascending() {
        start[t] = acc;
        acc += d.blocks[t].len();
    }
    let g = |t: Elem, x: usize| start[t] + x;
    let top = |t: Elem| g(t, d.blocks[t].top());
    let u = s.unit();
    let le = |p: usize, q: usize| {
        let ((t, x), (v, y)) = (lay[p], lay[q]);
        if t == v {
            d.blocks[t].leq(x, y)
        } else {
            s.lt(t, v)
        }
    };
    let join = |p: usize, q: usize| {
        let ((t, x), (v, y)) = (lay[p], lay[q]);
        if t == v {
            g(t, d.blocks[t].join(x, y))
        } else if s.lt(t, v) {
            q
        } else {
            p
        }
    };
    let meet = |p: usize, q: usize| {
        let ((t, x), (v, y)) = (lay[p], lay[q]);
        if t == v {
            match d.blocks[t].meet(x, y) {
                Some(m) => g(t, m),
                None => top(d.lower_cover[t].expect("proper block has a lower cover")),
            }
        } else if s.lt(t, v) {
            p
        } else {
            q
        }
    };
    let labels: Vec<String> = lay.iter().map(|&(t, x)| d.blocks[t].label(x).to_string()).collect();
    let mut leq = vec![false; n * n];
    let mut mult = vec![0; n * n];
    let mut ld = vec![0; n * n];
    let mut rd = vec![0; n * n];
    for p in 0..n {
        let (t, x) = lay[p];
        let (sr, sl) = (top(s.inv_r(t)), top(s.inv_ell(t)));
        for q in 0..n {
            let (v, y) = lay[q];
            leq[p * n + q] = le(p, q);
            mult[p * n + q] = if t == v {
                if s.leq(t, u) {
                    meet(p, q)
                } else {
                    join(p, q)
                }
            } else if s.mult(t, v) == t {
                p
            } else {
                q
            };
            // p\q and q/p
            let (l, r) = if le(p, q) {
                (join(sr, q), join(sl, q))
            } else if s.lt(v, t) || (t == v && s.lt(u, t)) {
                (meet(sr, q), meet(sl, q))
            } else {
                let i = d.blocks[t].implication(x, y).ok_or_else(|| {
                    DecompError::Internal(format!("no implication in the block of {}", s.label(t)))
                })?;
                (g(t, i), g(t, i))
            };
            ld[p * n + q] = l;
            rd[q * n + p] = r;
        }
    }
    FinResLat::with_residuals(labels, leq, mult, top(u), &ld, &rd)
        .map_err(|e| DecompError::Internal(format!("built algebra fails verification: {e}")))
}

/// The four subsystem conditions, elements matched by label.
pub fn subsystem_report(sub: &DecompSystem, sup: &DecompSystem) -> Report {
    let mut rep = Report::new("subsystem");
    let (sa, sb) = (&sub.skeleton, &sup.skeleton);
    let w = match label_map(sa, sb) {
        None => Some("skeleton label missing from the larger system".to_string()),
        Some(m) => ircl_core::hom_witness(sa, sb, &m)
            .or_else(|| (!ircl_core::is_injective(&m)).then(|| "not injective".to_string())),
    };
    let skel_ok = w.is_none();
    rep.check("1 skeleton subalgebra", w);
    if !skel_ok {
        return rep;
    }
    let mut neg = None;
    let mut pos = None;
    let mut low = None;
    for s in sa.elems() {
        let t = sb.index_of(sa.label(s)).unwrap();
        let (ba, bb) = (&sub.blocks[s], &sup.blocks[t]);
        let name = sa.label(s);
        let Some(m) = (0..ba.len()).map(|x| bb.index_of(ba.label(x))).collect::<Option<Vec<usize>>>() else {
            let w = Some(format!("block of {name} has elements outside the larger block"));
            if sa.leq(s, sa.unit()) {
                neg = neg.or(w);
            } else {
                pos = pos.or(w);
            }
            continue;
        };
        let inv: Vec<Option<usize>> = (0..bb.len()).map(|y| m.iter().position(|&z| z == y)).collect();
        let mut w = None;
        for x in 0..ba.len() {
            for y in 0..ba.len() {
                if ba.leq(x, y) != bb.leq(m[x], m[y]) {
                    w = Some(format!("order differs at {} {}", ba.label(x), ba.label(y)));
                } else if inv[bb.join(m[x], m[y])].is_none() {
                    w = Some(format!("join of {} {} leaves the block", ba.label(x), ba.label(y)));
                } else if let Some(mm) = bb.meet(m[x], m[y]) {
                    if inv[mm].is_none() {
                        w = Some(format!("meet of {} {} leaves the block", ba.label(x), ba.label(y)));
                    }
                }
                if w.is_none() && sa.leq(s, sa.unit()) {
                    let i = bb.implication(m[x], m[y]);
                    if i.is_none_or(|i| inv[i].is_none()) {
                        w = Some(format!("implication {} => {} leaves the block", ba.label(x), ba.label(y)));
                    }
                }
                if w.is_some() {
                    break;
                }
            }
            if w.is_some() {
                break;
            }
        }
        if let Some(w) = w {
            let w = Some(format!("{name}: {w}"));
            if sa.leq(s, sa.unit()) {
                neg = neg.or(w);
            } else {
                pos = pos.or(w);
            }
        }
        if !ba.is_lattice() && low.is_none() {
            if let Some(c) = sup.lower_cover[t] {
                if sa.index_of(sb.label(c)).is_none() {
                    low = Some(format!("block of {name} is proper but {} is missing", sb.label(c)));
                }
            }
        }
    }
    rep.check("2 negative blocks are Brouwerian subalgebras", neg);
    rep.check("3 positive blocks are topped subprelattices", pos);
    rep.check("4 lower covers present", low);
    rep
}

pub fn is_subsystem(sub: &DecompSystem, sup: &DecompSystem) -> bool {
    subsystem_report(sub, sup).passed()
}
