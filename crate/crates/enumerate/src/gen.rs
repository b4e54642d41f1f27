use std::collections::BTreeSet;

use ircl_chains::{from_emp, Emp, Layer, Tie};
use ircl_core::{Elem, FinResLat};
use ircl_decomp::{build_algebra, Block, DecompSystem};

use crate::canon::{canonical_form, CanonicalForm};
use crate::lattices::{distributive_lattices, lattices, topped_semilattices, Shape};
use crate::EnumError;

/// Number of elements a layer code contributes.
fn weight(c: char) -> usize {
    if c == 'L' || c == 'R' {
        2
    } else {
        1
    }
}

/// Every word over `- + L R` whose layers hold `m` elements.
fn all_words(m: usize) -> Vec<String> {
    if m == 0 {
        return vec![String::new()];
    }
    let mut out = Vec::new();
    for c in ['-', '+', 'L', 'R'] {
        if weight(c) <= m {
            out.extend(all_words(m - weight(c)).into_iter().map(|w| format!("{c}{w}")));
        }
    }
    out
}

/// Layer sequence of a word (bottom to top, unit appended) with default or
/// supplied names; pair layers take the positive name first.
pub fn word_emp(word: &str, names: Option<&[&str]>) -> Result<Emp, EnumError> {
    let mut labels: Vec<String> = Vec::new();
    let mut layers = Vec::new();
    let mut k = 0;
    let mut name = |labels: &mut Vec<String>, sign: char| -> Result<Elem, EnumError> {
        let l = match names {
            Some(ns) => ns.get(k).ok_or_else(|| EnumError::BadParams(format!("too few names for {word}")))?.to_string(),
            None => format!("{sign}{k}"),
        };
        k += 1;
        labels.push(l);
        Ok(labels.len() - 1)
    };
    for c in word.chars() {
        layers.push(match c {
            '-' => Layer::Neg(name(&mut labels, 'b')?),
            '+' => Layer::Pos(name(&mut labels, 'a')?),
            'L' | 'R' => {
                let pos = name(&mut labels, 'a')?;
                let neg = name(&mut labels, 'b')?;
                Layer::Pair { pos, neg, tie: if c == 'L' { Tie::L } else { Tie::R } }
            }
            _ => return Err(EnumError::BadParams(format!("layer code `{c}`"))),
        });
    }
    labels.push("1".into());
    layers.push(Layer::Unit(labels.len() - 1));
    Emp::from_layers(labels, layers).map_err(|e| EnumError::BadParams(e.to_string()))
}

pub fn chain_from_word(word: &str, names: Option<&[&str]>) -> Result<FinResLat, EnumError> {
    from_emp(&word_emp(word, names)?).map_err(|e| EnumError::Internal(e.to_string()))
}

/// Layer words of the idempotent chains with `n` elements, in lexicographic
/// order over `+ - L R`; only words passing the layer invariants are kept.
pub fn chain_words(n: usize) -> Vec<String> {
    if n == 0 {
        return Vec::new();
    }
    let mut ws: Vec<String> = all_words(n - 1).into_iter().filter(|w| word_emp(w, None).is_ok()).collect();
    ws.sort();
    ws
}

/// All idempotent residuated chains with `n` elements, one per isomorphism type.
pub fn enumerate_chains(n: usize) -> impl Iterator<Item = FinResLat> {
    chain_words(n).into_iter().map(|w| chain_from_word(&w, None).expect("valid word"))
}

fn block_from_shape(shape: &Shape, top: &str) -> Block {
    let t = shape.top();
    let mut k = 0;
    let labels = (0..shape.n)
        .map(|x| {
            if x == t {
                top.to_string()
            } else {
                k += 1;
                format!("{top}.{k}")
            }
        })
        .collect();
    Block::new(labels, shape.leq.clone()).expect("shape is a topped join-semilattice")
}

/// Quasi-involutive idempotent chains with `k` elements.
fn skeletons(k: usize) -> Vec<FinResLat> {
    enumerate_chains(k).filter(|s| s.is_quasi_involutive()).collect()
}

/// Block shapes admissible over skeleton element `s` with `m` elements.
fn admissible(skel: &FinResLat, s: Elem, m: usize) -> Vec<Shape> {
    if m == 1 {
        return lattices(1);
    }
    if !skel.is_central(s) {
        return Vec::new();
    }
    if skel.leq(s, skel.unit()) {
        distributive_lattices(m)
    } else {
        topped_semilattices(m)
    }
}

/// Decomposition systems of the conic idempotent algebras with `n` elements.
pub fn conic_systems(n: usize) -> Vec<DecompSystem> {
    let mut out = Vec::new();
    for k in 1..=n {
        for skel in skeletons(k) {
            let order = {
                let mut v: Vec<Elem> = skel.elems().collect();
                v.sort_by_key(|&x| skel.elems().filter(|&y| skel.lt(y, x)).count());
                v
            };
            let mut sizes = vec![1; k];
            distribute(&skel, &order, 0, n - k, &mut sizes, &mut out);
        }
    }
    out
}

fn distribute(skel: &FinResLat, order: &[Elem], i: usize, left: usize, sizes: &mut Vec<usize>, out: &mut Vec<DecompSystem>) {
    if i == order.len() {
        if left == 0 {
            choose_shapes(skel, order, sizes, 0, &mut Vec::new(), out);
        }
        return;
    }
    for extra in 0..=left {
        sizes[i] = 1 + extra;
        distribute(skel, order, i + 1, left - extra, sizes, out);
    }
    sizes[i] = 1;
}

fn choose_shapes(
    skel: &FinResLat,
    order: &[Elem],
    sizes: &[usize],
    i: usize,
    chosen: &mut Vec<Shape>,
    out: &mut Vec<DecompSystem>,
) {
    if i == order.len() {
        let mut blocks: Vec<Option<Block>> = vec![None; skel.len()];
        for (pos, &s) in order.iter().enumerate() {
            blocks[s] = Some(block_from_shape(&chosen[pos], skel.label(s)));
        }
        if let Ok(d) = DecompSystem::new(skel.clone(), blocks.into_iter().map(Option::unwrap).collect()) {
            out.push(d);
        }
        return;
    }
    for sh in admissible(skel, order[i], sizes[i]) {
        chosen.push(sh);
        choose_shapes(skel, order, sizes, i + 1, chosen, out);
        chosen.pop();
    }
}

/// All conic idempotent residuated lattices with `n` elements, one per
/// isomorphism type; the decomposition is canonical, so distinct systems give
/// non-isomorphic algebras.
pub fn enumerate_conic(n: usize) -> impl Iterator<Item = FinResLat> {
    conic_systems(n).into_iter().map(|d| build_algebra(&d).expect("valid system builds"))
}

/// Conic idempotent algebras with `n > 1` elements whose unit is join-irreducible.
pub fn enumerate_semiconic_fsi(n: usize) -> impl Iterator<Item = FinResLat> {
    enumerate_conic(n).filter(|a| {
        let u = a.unit();
        a.len() > 1 && a.elems().all(|x| a.elems().all(|y| x == u || y == u || a.join(x, y) != u))
    })
}

/// Idempotent residuated lattices with `n` elements, by filling product
/// tables over every lattice and unit position; isomorphic copies removed.
pub fn enumerate_idempotent_raw(n: usize) -> Vec<FinResLat> {
    let mut seen: BTreeSet<CanonicalForm> = BTreeSet::new();
    let mut out = Vec::new();
    for lat in lattices(n) {
        let bot = lat.bottom().expect("lattice");
        for u in 0..n {
            let mut t = vec![usize::MAX; n * n];
            for x in 0..n {
                t[x * n + x] = x;
                t[u * n + x] = x;
                t[x * n + u] = x;
            }
            if u == bot && n > 1 {
                continue;
            }
            for x in 0..n {
                t[bot * n + x] = bot;
                t[x * n + bot] = bot;
            }
            fill(&lat, 0, &mut t, &mut |t| {
                let labels = (0..n).map(|i| if i == u { "1".to_string() } else { format!("e{i}") }).collect();
                if let Ok(a) = FinResLat::from_order(labels, lat.leq.clone(), t.to_vec(), u) {
                    if seen.insert(canonical_form(&a)) {
                        out.push(a);
                    }
                }
            });
        }
    }
    out
}

/// Backtracking over free cells, keeping the table monotone in each argument.
fn fill(lat: &Shape, cell: usize, t: &mut Vec<usize>, emit: &mut dyn FnMut(&[usize])) {
    let n = lat.n;
    if cell == n * n {
        emit(t);
        return;
    }
    if t[cell] != usize::MAX {
        if monotone_at(lat, t, cell) {
            fill(lat, cell + 1, t, emit);
        }
        return;
    }
    for v in 0..n {
        t[cell] = v;
        if monotone_at(lat, t, cell) {
            fill(lat, cell + 1, t, emit);
        }
    }
    t[cell] = usize::MAX;
}

fn monotone_at(lat: &Shape, t: &[usize], cell: usize) -> bool {
    let n = lat.n;
    let (x, y) = (cell / n, cell % n);
    let v = t[cell];
    let fits = |p: usize, q: usize, w: usize| (!lat.leq(p, q) || lat.leq(w, v)) && (!lat.leq(q, p) || lat.leq(v, w));
    (0..n).all(|z| {
        let col = t[z * n + y];
        let row = t[x * n + z];
        (col == usize::MAX || fits(z, x, col)) && (row == usize::MAX || fits(z, y, row))
    })
}
