use std::collections::{BTreeSet, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use ircl_decomp::Block;
use ircl_enumerate::{distributive_lattices, lattices, topped_semilattices};

use crate::AmalgError;

/// Largest block size the shape search visits.
pub const SHAPE_CAP: usize = 9;

/// Largest size visited when only distributive shapes are needed.
pub const DISTRIBUTIVE_SHAPE_CAP: usize = 16;

/// Target class of a block amalgam. The distributive kind asks for an
/// amalgam only; the other two for a strong amalgam.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BlockAmalgKind {
    Lattice,
    Brouwerian,
    DistributiveLattice,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub(crate) enum ShapeClass {
    Brouwerian,
    Lattice,
    Semilattice,
}

fn shape_blocks(class: ShapeClass, m: usize) -> Arc<Vec<Block>> {
    static CACHE: OnceLock<Mutex<HashMap<(ShapeClass, usize), Arc<Vec<Block>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&(class, m)) {
        return v.clone();
    }
    let shapes = match class {
        ShapeClass::Brouwerian => distributive_lattices(m),
        ShapeClass::Lattice => lattices(m),
        ShapeClass::Semilattice => topped_semilattices(m),
    };
    let v: Arc<Vec<Block>> = Arc::new(
        shapes
            .iter()
            .map(|s| Block::new((0..s.n).map(|i| format!("s{i}")).collect(), s.leq.clone()).expect("shape"))
            .collect(),
    );
    cache.lock().unwrap().insert((class, m), v.clone());
    v
}

/// First violated sub-block condition for `map: x -> s`: order embedding,
/// top, joins, meets present exactly when present in `x`, and implications
/// when `brouwerian`.
pub fn sub_block_witness(x: &Block, s: &Block, map: &[usize], brouwerian: bool) -> Option<String> {
    if map.len() != x.len() || map.iter().any(|&v| v >= s.len()) {
        return Some("map has the wrong shape".into());
    }
    if map[x.top()] != s.top() {
        return Some("top not preserved".into());
    }
    let l = |i: usize| x.label(i);
    for i in 0..x.len() {
        for j in 0..x.len() {
            if i != j && map[i] == map[j] {
                return Some(format!("{} and {} collide", l(i), l(j)));
            }
            if x.leq(i, j) != s.leq(map[i], map[j]) {
                return Some(format!("order at {} {}", l(i), l(j)));
            }
            if map[x.join(i, j)] != s.join(map[i], map[j]) {
                return Some(format!("join of {} {}", l(i), l(j)));
            }
            if x.meet(i, j).map(|m| map[m]) != s.meet(map[i], map[j]) {
                return Some(format!("meet of {} {}", l(i), l(j)));
            }
            if brouwerian && x.implication(i, j).map(|m| map[m]) != s.implication(map[i], map[j]) {
                return Some(format!("implication {} => {}", l(i), l(j)));
            }
        }
    }
    None
}

/// A block search problem: place `x` and `y` into one block of `class`,
/// identifying the pairs in `agree`.
pub(crate) struct BlockReq<'a> {
    pub x: Option<&'a Block>,
    pub y: Option<&'a Block>,
    pub agree: Vec<(usize, usize)>,
    pub class: ShapeClass,
    pub strong: bool,
    pub top_join_irreducible: bool,
}

pub(crate) struct Placement {
    pub shape: Block,
    pub mx: Vec<usize>,
    pub my: Vec<usize>,
}

fn partial_ok(x: &Block, s: &Block, img: &[Option<usize>], i: usize, brouwerian: bool) -> bool {
    let Some(si) = img[i] else { return true };
    for j in 0..x.len() {
        let Some(sj) = img[j] else { continue };
        if x.leq(i, j) != s.leq(si, sj) || x.leq(j, i) != s.leq(sj, si) {
            return false;
        }
        if let Some(z) = img[x.join(i, j)] {
            if z != s.join(si, sj) {
                return false;
            }
        }
        match x.meet(i, j) {
            Some(m) => {
                if let Some(z) = img[m] {
                    if s.meet(si, sj) != Some(z) {
                        return false;
                    }
                }
            }
            None => {
                if s.meet(si, sj).is_some() {
                    return false;
                }
            }
        }
        if brouwerian {
            for (p, q) in [(i, j), (j, i)] {
                if let Some(z) = x.implication(p, q).and_then(|m| img[m]) {
                    if s.implication(img[p].unwrap(), img[q].unwrap()) != Some(z) {
                        return false;
                    }
                }
            }
        }
    }
    true
}

/// Injective sub-block maps `x -> s` extending `pre`, avoiding `avoid`.
fn block_maps(
    x: &Block,
    s: &Block,
    pre: &[Option<usize>],
    avoid: &[bool],
    brouwerian: bool,
    f: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let mut img = pre.to_vec();
    if img[x.top()].is_some_and(|t| t != s.top()) {
        return true;
    }
    img[x.top()] = Some(s.top());
    let mut used = avoid.to_vec();
    for v in img.iter().flatten() {
        used[*v] = true;
    }
    if !(0..x.len()).all(|i| partial_ok(x, s, &img, i, brouwerian)) {
        return true;
    }
    fn go(
        x: &Block,
        s: &Block,
        img: &mut Vec<Option<usize>>,
        used: &mut Vec<bool>,
        brouwerian: bool,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        let Some(i) = (0..x.len()).find(|&i| img[i].is_none()) else {
            let m: Vec<usize> = img.iter().map(|v| v.unwrap()).collect();
            if sub_block_witness(x, s, &m, brouwerian).is_some() {
                return true;
            }
            return f(&m);
        };
        for v in 0..s.len() {
            if used[v] {
                continue;
            }
            img[i] = Some(v);
            used[v] = true;
            let keep = !partial_ok(x, s, img, i, brouwerian) || go(x, s, img, used, brouwerian, f);
            img[i] = None;
            used[v] = false;
            if !keep {
                return false;
            }
        }
        true
    }
    go(x, s, &mut img, &mut used, brouwerian, f)
}

fn top_join_irreducible(s: &Block) -> bool {
    let t = s.top();
    (0..s.len()).all(|x| (0..s.len()).all(|y| x == t || y == t || s.join(x, y) != t))
}

/// Placement of both blocks into one shape of exactly `m` elements.
fn place_in(req: &BlockReq, s: &Block) -> Option<Placement> {
    let brouwerian = req.class == ShapeClass::Brouwerian;
    if req.top_join_irreducible && !top_join_irreducible(s) {
        return None;
    }
    let n = s.len();
    let mut found = None;
    let mut with_x = |mx: &[usize]| -> bool {
        let Some(y) = req.y else {
            found = Some((mx.to_vec(), Vec::new()));
            return false;
        };
        let mut pre = vec![None; y.len()];
        for &(i, j) in &req.agree {
            pre[j] = Some(mx[i]);
        }
        let mut avoid = vec![false; n];
        if req.strong {
            let agreed: BTreeSet<usize> = req.agree.iter().map(|&(i, _)| i).collect();
            for (i, &v) in mx.iter().enumerate() {
                if !agreed.contains(&i) {
                    avoid[v] = true;
                }
            }
        }
        let mut my = None;
        block_maps(y, s, &pre, &avoid, brouwerian, &mut |m| {
            my = Some(m.to_vec());
            false
        });
        match my {
            Some(my) => {
                found = Some((mx.to_vec(), my));
                false
            }
            None => true,
        }
    };
    match req.x {
        Some(x) => {
            block_maps(x, s, &vec![None; x.len()], &vec![false; n], brouwerian, &mut with_x);
        }
        None => {
            with_x(&[]);
        }
    }
    found.map(|(mx, my)| Placement { shape: s.clone(), mx, my })
}

/// Smallest placement with at most `hi` elements, shapes in canonical order.
pub(crate) fn min_block(req: &BlockReq, hi: usize) -> Option<Placement> {
    let lx = req.x.map_or(1, Block::len);
    let ly = req.y.map_or(1, Block::len);
    let lo = if req.strong && req.x.is_some() && req.y.is_some() { lx + ly - req.agree.len() } else { lx.max(ly) };
    let cap = if req.class == ShapeClass::Brouwerian { DISTRIBUTIVE_SHAPE_CAP } else { SHAPE_CAP };
    for m in lo..=hi.min(cap) {
        for s in shape_blocks(req.class, m).iter() {
            if let Some(p) = place_in(req, s) {
                return Some(p);
            }
        }
    }
    None
}

/// Union of two blocks over their shared labels, order closed transitively.
fn pushout(b: &Block, c: &Block) -> (Vec<String>, Vec<bool>) {
    let mut labels: Vec<String> = b.labels().to_vec();
    for l in c.labels() {
        if b.index_of(l).is_none() {
            labels.push(l.clone());
        }
    }
    let n = labels.len();
    let mut leq = vec![false; n * n];
    for (blk, _) in [(b, 0), (c, 1)] {
        for i in 0..blk.len() {
            for j in 0..blk.len() {
                if blk.leq(i, j) {
                    let p = labels.iter().position(|l| l == blk.label(i)).unwrap();
                    let q = labels.iter().position(|l| l == blk.label(j)).unwrap();
                    leq[p * n + q] = true;
                }
            }
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if leq[i * n + k] && leq[k * n + j] {
                    leq[i * n + j] = true;
                }
            }
        }
    }
    (labels, leq)
}

/// Completion of a finite poset by cuts: intersections of principal
/// downsets, ordered by inclusion. Element `i` goes to `↓i`.
fn completion(labels: &[String], leq: &[bool]) -> (Vec<String>, Vec<bool>, Vec<usize>) {
    let n = labels.len();
    let down = |i: usize| -> BTreeSet<usize> { (0..n).filter(|&j| leq[j * n + i]).collect() };
    let mut cuts: Vec<BTreeSet<usize>> = (0..n).map(down).collect();
    loop {
        let mut grew = false;
        let cur = cuts.clone();
        for (i, p) in cur.iter().enumerate() {
            for q in &cur[i + 1..] {
                let r: BTreeSet<usize> = p.intersection(q).copied().collect();
                if !cuts.contains(&r) {
                    cuts.push(r);
                    grew = true;
                }
            }
        }
        if !grew {
            break;
        }
    }
    let m = cuts.len();
    let mut out_labels: Vec<String> = labels.to_vec();
    let mut k = 0;
    while out_labels.len() < m {
        k += 1;
        let l = format!("cut{k}");
        if !out_labels.contains(&l) {
            out_labels.push(l);
        }
    }
    let out_leq = (0..m * m).map(|c| cuts[c / m].is_subset(&cuts[c % m])).collect();
    (out_labels, out_leq, (0..n).collect())
}

fn fresh_labels(shape: &Block, named: &[Option<String>], top: &str) -> Vec<String> {
    let mut taken: BTreeSet<String> = named.iter().flatten().cloned().collect();
    let mut k = 0;
    (0..shape.len())
        .map(|i| match &named[i] {
            Some(l) => l.clone(),
            None => loop {
                k += 1;
                let l = format!("{top}+{k}");
                if taken.insert(l.clone()) {
                    break l;
                }
            },
        })
        .collect()
}

/// A block amalgam with the maps of both inputs.
#[derive(Debug, Clone)]
pub struct BlockAmalgam {
    pub block: Block,
    pub map_b: Vec<usize>,
    pub map_c: Vec<usize>,
}

fn certify(kind: BlockAmalgKind, am: &BlockAmalgam, b: &Block, c: &Block, a: &Block) -> Option<String> {
    let d = &am.block;
    let brouwerian = kind != BlockAmalgKind::Lattice;
    match kind {
        BlockAmalgKind::Lattice if !d.is_lattice() => return Some("not a lattice".into()),
        BlockAmalgKind::Brouwerian => {
            if let Some(w) = d.brouwerian_witness() {
                return Some(w);
            }
        }
        BlockAmalgKind::DistributiveLattice if !d.is_distributive() => return Some("not distributive".into()),
        _ => {}
    }
    let dist = kind == BlockAmalgKind::DistributiveLattice;
    sub_block_witness(b, d, &am.map_b, brouwerian && !dist)
        .map(|w| format!("B: {w}"))
        .or_else(|| sub_block_witness(c, d, &am.map_c, brouwerian && !dist).map(|w| format!("C: {w}")))
        .or_else(|| {
            let bad = a.labels().iter().find(|l| {
                am.map_b[b.index_of(l).unwrap()] != am.map_c[c.index_of(l).unwrap()]
            });
            bad.map(|l| format!("{l} has two images"))
        })
        .or_else(|| {
            if dist {
                return None;
            }
            let ib: BTreeSet<usize> = am.map_b.iter().copied().collect();
            let shared = am.map_c.iter().enumerate().find(|&(j, v)| ib.contains(v) && a.index_of(c.label(j)).is_none());
            shared.map(|(j, _)| format!("{} shares an image with B", c.label(j)))
        })
}

/// Amalgam of two blocks over a common sub-block, matched by labels. Tries
/// the poset pushout first, then the smallest certified shape up to
/// `size_bound`; for lattices past the shape cap, the completion by cuts of
/// the pushout.
pub fn block_amalgam(
    kind: BlockAmalgKind,
    b: &Block,
    c: &Block,
    a: &Block,
    size_bound: usize,
) -> Result<BlockAmalgam, AmalgError> {
    let idx = |blk: &Block, l: &str, name: &str| {
        blk.index_of(l).ok_or_else(|| AmalgError::InvalidVFormation(format!("{l} of the common block missing from {name}")))
    };
    let mut agree = Vec::new();
    for l in a.labels() {
        agree.push((idx(b, l, "B")?, idx(c, l, "C")?));
    }
    if kind != BlockAmalgKind::DistributiveLattice {
        let stray = c.labels().iter().find(|l| b.index_of(l).is_some() && a.index_of(l).is_none());
        if let Some(l) = stray {
            return Err(AmalgError::NotReduced(format!("{l} occurs in both blocks outside the common one")));
        }
    }
    let top = b.label(b.top()).to_string();
    let done = |am: BlockAmalgam| -> Result<BlockAmalgam, AmalgError> {
        match certify(kind, &am, b, c, a) {
            None => Ok(am),
            Some(w) => Err(AmalgError::Internal(format!("block amalgam fails certification: {w}"))),
        }
    };
    if c.len() == a.len() {
        let map_c = c.labels().iter().map(|l| b.index_of(l).unwrap()).collect();
        return done(BlockAmalgam { block: b.clone(), map_b: (0..b.len()).collect(), map_c });
    }
    if b.len() == a.len() {
        let map_b = b.labels().iter().map(|l| c.index_of(l).unwrap()).collect();
        return done(BlockAmalgam { block: c.clone(), map_b, map_c: (0..c.len()).collect() });
    }
    let (pl, pleq) = pushout(b, c);
    let by_label = |blk: &Block, d: &Block| -> Vec<usize> { blk.labels().iter().map(|l| d.index_of(l).unwrap()).collect() };
    if pl.len() <= size_bound {
        if let Ok(d) = Block::new(pl.clone(), pleq.clone()) {
            let am = BlockAmalgam { map_b: by_label(b, &d), map_c: by_label(c, &d), block: d };
            if certify(kind, &am, b, c, a).is_none() {
                return Ok(am);
            }
        }
    }
    let class = match kind {
        BlockAmalgKind::Lattice => ShapeClass::Lattice,
        _ => ShapeClass::Brouwerian,
    };
    let req = BlockReq {
        x: Some(b),
        y: Some(c),
        agree,
        class,
        strong: kind != BlockAmalgKind::DistributiveLattice,
        top_join_irreducible: false,
    };
    if let Some(p) = min_block(&req, size_bound) {
        let mut named: Vec<Option<String>> = vec![None; p.shape.len()];
        for (i, &v) in p.mx.iter().enumerate() {
            named[v] = Some(b.label(i).to_string());
        }
        for (j, &v) in p.my.iter().enumerate() {
            if named[v].is_none() {
                named[v] = Some(c.label(j).to_string());
            }
        }
        let labels = fresh_labels(&p.shape, &named, &top);
        let n = labels.len();
        let leq = (0..n * n).map(|k| p.shape.leq(k / n, k % n)).collect();
        let block = Block::new(labels, leq).map_err(|e| AmalgError::Internal(e.to_string()))?;
        return done(BlockAmalgam { block, map_b: p.mx, map_c: p.my });
    }
    if kind == BlockAmalgKind::Lattice && size_bound > SHAPE_CAP {
        let (cl, cleq, _) = completion(&pl, &pleq);
        if cl.len() <= size_bound {
            if let Ok(d) = Block::new(cl, cleq) {
                let am = BlockAmalgam { map_b: by_label(b, &d), map_c: by_label(c, &d), block: d };
                if certify(kind, &am, b, c, a).is_none() {
                    return Ok(am);
                }
            }
        }
    }
    Err(AmalgError::BlockAmalgamBoundExceeded(size_bound))
}
