use ircl_chains::to_emp;
use ircl_core::FinResLat;

/// Byte encoding of an algebra up to isomorphism: chains by their layer
/// sequence, everything else by the least table encoding over relabellings.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm(pub Vec<u8>);

/// Least `encode(perm)` over the permutations that keep elements sorted by
/// `sig`; `perm[old] = new`.
pub(crate) fn min_encoding(sig: &[u64], encode: impl Fn(&[usize]) -> Vec<u8>) -> Vec<u8> {
    let n = sig.len();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&x| sig[x]);
    let mut groups: Vec<Vec<usize>> = Vec::new();
    for &x in &order {
        match groups.last_mut() {
            Some(g) if sig[g[0]] == sig[x] => g.push(x),
            _ => groups.push(vec![x]),
        }
    }
    let mut perm = vec![0; n];
    let mut best: Option<Vec<u8>> = None;
    fn go(
        gi: usize,
        start: usize,
        groups: &mut [Vec<usize>],
        perm: &mut [usize],
        best: &mut Option<Vec<u8>>,
        encode: &dyn Fn(&[usize]) -> Vec<u8>,
    ) {
        if gi == groups.len() {
            let e = encode(perm);
            if best.as_ref().is_none_or(|b| e < *b) {
                *best = Some(e);
            }
            return;
        }
        let len = groups[gi].len();
        permute(&mut groups[gi].clone(), 0, &mut |g: &[usize]| {
            for (k, &x) in g.iter().enumerate() {
                perm[x] = start + k;
            }
            go(gi + 1, start + len, groups, perm, best, encode);
        });
    }
    go(0, 0, &mut groups, &mut perm, &mut best, &encode);
    best.unwrap_or_default()
}

fn permute(xs: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
    if k == xs.len() {
        f(xs);
        return;
    }
    for i in k..xs.len() {
        xs.swap(k, i);
        permute(xs, k + 1, f);
        xs.swap(k, i);
    }
}

/// Isomorphism-invariant key per element of an order: (#below, #above).
pub(crate) fn order_signature(n: usize, leq: &[bool]) -> Vec<u64> {
    (0..n)
        .map(|x| {
            let below = (0..n).filter(|&y| leq[y * n + x]).count() as u64;
            let above = (0..n).filter(|&y| leq[x * n + y]).count() as u64;
            below << 32 | above
        })
        .collect()
}

fn table_encoding(a: &FinResLat) -> Vec<u8> {
    let n = a.len();
    let mut sig = order_signature(n, a.order_matrix());
    for x in a.elems() {
        let fixed = a.elems().filter(|&y| a.mult(x, y) == x).count() as u64;
        sig[x] = sig[x] << 8 | fixed << 1 | u64::from(x == a.unit());
    }
    min_encoding(&sig, |perm| {
        let mut inv = vec![0; n];
        for (x, &p) in perm.iter().enumerate() {
            inv[p] = x;
        }
        let mut out = Vec::with_capacity(2 * n * n + 1);
        out.push(perm[a.unit()] as u8);
        for i in 0..n {
            for j in 0..n {
                out.push(u8::from(a.leq(inv[i], inv[j])));
            }
        }
        for i in 0..n {
            for j in 0..n {
                out.push(perm[a.mult(inv[i], inv[j])] as u8);
            }
        }
        out
    })
}

pub fn canonical_form(a: &FinResLat) -> CanonicalForm {
    if a.is_chain() && a.is_idempotent() {
        if let Ok(p) = to_emp(a) {
            let mut v = vec![b'C'];
            v.extend(p.encode());
            return CanonicalForm(v);
        }
    }
    let mut v = vec![b'G'];
    v.extend(table_encoding(a));
    CanonicalForm(v)
}

pub fn is_isomorphic(a: &FinResLat, b: &FinResLat) -> bool {
    a.len() == b.len() && canonical_form(a) == canonical_form(b)
}
