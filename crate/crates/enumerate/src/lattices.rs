use std::collections::{BTreeSet, HashMap};
use std::sync::{Mutex, OnceLock};

use crate::canon::{min_encoding, order_signature};

/// A finite order on `0..n` as a row-major relation matrix.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Shape {
    pub n: usize,
    pub leq: Vec<bool>,
}

impl Shape {
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.n + y]
    }

    fn lub(&self, x: usize, y: usize) -> Option<usize> {
        let ups: Vec<usize> = (0..self.n).filter(|&z| self.leq(x, z) && self.leq(y, z)).collect();
        ups.iter().copied().find(|&z| ups.iter().all(|&w| self.leq(z, w)))
    }

    fn has_all_joins(&self) -> bool {
        (0..self.n).all(|x| (x + 1..self.n).all(|y| self.lub(x, y).is_some()))
    }

    fn glb(&self, x: usize, y: usize) -> Option<usize> {
        let downs: Vec<usize> = (0..self.n).filter(|&z| self.leq(z, x) && self.leq(z, y)).collect();
        downs.iter().copied().find(|&z| downs.iter().all(|&w| self.leq(w, z)))
    }

    pub fn bottom(&self) -> Option<usize> {
        (0..self.n).find(|&x| (0..self.n).all(|y| self.leq(x, y)))
    }

    pub fn top(&self) -> usize {
        (0..self.n).find(|&x| (0..self.n).all(|y| self.leq(y, x))).expect("topped shape")
    }

    /// Distributivity of a lattice shape.
    pub fn is_distributive(&self) -> bool {
        let r = |x, y| self.lub(x, y).unwrap();
        let m = |x, y| self.glb(x, y).unwrap();
        (0..self.n).all(|x| (0..self.n).all(|y| (0..self.n).all(|z| m(x, r(y, z)) == r(m(x, y), m(x, z)))))
    }

    fn atoms(&self, bot: usize) -> usize {
        (0..self.n)
            .filter(|&x| x != bot && (0..self.n).all(|y| y == bot || y == x || !(self.leq(y, x))))
            .count()
    }

    fn without(&self, x: usize) -> Shape {
        let keep: Vec<usize> = (0..self.n).filter(|&y| y != x).collect();
        let n = keep.len();
        let mut leq = vec![false; n * n];
        for (i, &a) in keep.iter().enumerate() {
            for (j, &b) in keep.iter().enumerate() {
                leq[i * n + j] = self.leq(a, b);
            }
        }
        Shape { n, leq }
    }

    fn canonical(&self) -> Shape {
        let n = self.n;
        let enc = min_encoding(&order_signature(n, &self.leq), |perm| {
            let mut out = vec![0u8; n * n];
            for x in 0..n {
                for y in 0..n {
                    out[perm[x] * n + perm[y]] = u8::from(self.leq(x, y));
                }
            }
            out
        });
        Shape { n, leq: enc.into_iter().map(|b| b == 1).collect() }
    }
}

/// Orders on `0..m` with bottom 0 and top m-1 in which `x < y` implies
/// `x < y` as indices; every finite bounded order has such a labelling.
fn bounded_orders(m: usize) -> Vec<Shape> {
    if m == 1 {
        return vec![Shape { n: 1, leq: vec![true] }];
    }
    fn go(i: usize, m: usize, leq: &mut Vec<bool>, out: &mut Vec<Shape>) {
        if i == m - 1 {
            for x in 0..m {
                leq[x * m + m - 1] = true;
            }
            out.push(Shape { n: m, leq: leq.clone() });
            for x in 0..m - 1 {
                leq[x * m + m - 1] = false;
            }
            return;
        }
        // strict down-set of i among 1..i, down-closed
        for mask in 0u32..1 << (i - 1) {
            let down: Vec<usize> = (1..i).filter(|&x| mask >> (x - 1) & 1 == 1).collect();
            let closed = down.iter().all(|&x| (1..x).all(|y| !leq[y * m + x] || down.contains(&y)));
            if !closed {
                continue;
            }
            leq[i] = true;
            for &x in &down {
                leq[x * m + i] = true;
            }
            go(i + 1, m, leq, out);
            for &x in &down {
                leq[x * m + i] = false;
            }
        }
    }
    let mut leq = vec![false; m * m];
    for x in 0..m {
        leq[x * m + x] = true;
    }
    let mut out = Vec::new();
    go(1, m, &mut leq, &mut out);
    out
}

fn cache() -> &'static Mutex<HashMap<usize, Vec<Shape>>> {
    static C: OnceLock<Mutex<HashMap<usize, Vec<Shape>>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Lattices with `m` elements, one per isomorphism type, in canonical order.
pub fn lattices(m: usize) -> Vec<Shape> {
    if m == 0 {
        return Vec::new();
    }
    if let Some(v) = cache().lock().unwrap().get(&m) {
        return v.clone();
    }
    let set: BTreeSet<Shape> =
        bounded_orders(m).into_iter().filter(Shape::has_all_joins).map(|s| s.canonical()).collect();
    let v: Vec<Shape> = set.into_iter().collect();
    cache().lock().unwrap().insert(m, v.clone());
    v
}

/// Distributive lattices with `m` elements, as down-set lattices of posets
/// with exactly `m` down-sets.
pub fn distributive_lattices(m: usize) -> Vec<Shape> {
    if m == 0 {
        return Vec::new();
    }
    // below[i]: strict down-set of poset element i as a bitmask
    fn downsets(below: &[u32]) -> Vec<u32> {
        let mut out = vec![0u32];
        for (i, &b) in below.iter().enumerate() {
            let ext: Vec<u32> = out.iter().filter(|&&d| d & b == b).map(|&d| d | 1 << i).collect();
            out.extend(ext);
        }
        out
    }
    fn go(below: &mut Vec<u32>, m: usize, out: &mut BTreeSet<Shape>) {
        let ds = downsets(below);
        if ds.len() > m {
            return;
        }
        if ds.len() == m {
            let n = ds.len();
            let leq = (0..n * n).map(|k| ds[k / n] & ds[k % n] == ds[k / n]).collect();
            out.insert(Shape { n, leq }.canonical());
            return;
        }
        for &d in &ds {
            below.push(d);
            go(below, m, out);
            below.pop();
        }
    }
    let mut out = BTreeSet::new();
    go(&mut Vec::new(), m, &mut out);
    out.into_iter().collect()
}

/// Finite join-semilattices with a top and `m` elements: the lattices of size
/// m, then the lattices of size m+1 with at least two atoms, bottom removed.
pub fn topped_semilattices(m: usize) -> Vec<Shape> {
    let mut out = lattices(m);
    for l in lattices(m + 1) {
        let bot = l.bottom().expect("lattice");
        if l.n > 1 && l.atoms(bot) >= 2 {
            out.push(l.without(bot).canonical());
        }
    }
    out
}
