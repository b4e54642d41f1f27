use std::collections::BTreeSet;

use ircl_core::{is_embedding, Elem, FinResLat};

use crate::emp::{from_emp, to_emp, Emp, Layer, LayerSeq, Tie};
use crate::ChainError;

/// Shape of a vertical crown. Only finite crowns are realized; the infinite
/// shapes exist for reporting and are never produced by recognition.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum CrownKind {
    Z,
    N,
    NDual,
    Finite(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CrownType {
    pub kind: CrownKind,
    /// Indices (from 1) of the pair layers that are left-zero.
    pub left: BTreeSet<usize>,
}

impl CrownType {
    pub fn finite(n: usize, left: impl IntoIterator<Item = usize>) -> Self {
        CrownType { kind: CrownKind::Finite(n), left: left.into_iter().collect() }
    }
}

/// Labels and layers of the finite crown: a central negative bottom `b0`, pair
/// layers `(a_i, b_i)` for `i = 1..n`, a central positive `a_{n+1}`, then `1`.
pub fn crown_layers(n: usize, left: &BTreeSet<usize>) -> (Vec<String>, LayerSeq) {
    let mut labels = vec!["b0".to_string()];
    let mut layers = vec![Layer::Neg(0)];
    for i in 1..=n {
        let pos = labels.len();
        labels.push(format!("a{i}"));
        labels.push(format!("b{i}"));
        let tie = if left.contains(&i) { Tie::L } else { Tie::R };
        layers.push(Layer::Pair { pos, neg: pos + 1, tie });
    }
    layers.push(Layer::Pos(labels.len()));
    labels.push(format!("a{}", n + 1));
    layers.push(Layer::Unit(labels.len()));
    labels.push("1".to_string());
    (labels, layers)
}

pub fn crown_emp(ty: &CrownType) -> Result<Emp, ChainError> {
    match ty.kind {
        CrownKind::Finite(n) => {
            if ty.left.iter().any(|&i| i == 0 || i > n) {
                return Err(ChainError::Internal("left-zero index outside 1..n".into()));
            }
            let (labels, layers) = crown_layers(n, &ty.left);
            Emp::from_layers(labels, layers).map_err(ChainError::InvalidEmp)
        }
        _ => Err(ChainError::InfiniteCrown),
    }
}

pub fn crown_algebra(ty: &CrownType) -> Result<FinResLat, ChainError> {
    from_emp(&crown_emp(ty)?)
}

/// Recognize a finite vertical crown by its layer shape.
pub fn is_vertical_crown(p: &Emp) -> Option<CrownType> {
    let layers = p.layers();
    let k = layers.len();
    if k < 3 {
        return None;
    }
    if !matches!(layers[0], Layer::Neg(_)) || !matches!(layers[k - 2], Layer::Pos(_)) {
        return None;
    }
    let mut left = BTreeSet::new();
    for (i, l) in layers[1..k - 2].iter().enumerate() {
        match l {
            Layer::Pair { tie: Tie::L, .. } => {
                left.insert(i + 1);
            }
            Layer::Pair { tie: Tie::R, .. } => {}
            _ => return None,
        }
    }
    Some(CrownType { kind: CrownKind::Finite(k - 3), left })
}

/// Least superset of `seeds ∪ {1}` closed under `x^⋆` and the same-layer partner.
pub fn generate_subalgebra(a: &FinResLat, seeds: &[Elem]) -> Result<Vec<Elem>, ChainError> {
    if let Some(w) = a.chain_witness() {
        return Err(ChainError::NotAChain(w));
    }
    if let Some(w) = a.idempotent_witness() {
        return Err(ChainError::NotIdempotent(w));
    }
    let mut mem = vec![false; a.len()];
    let mut stack = vec![a.unit()];
    stack.extend_from_slice(seeds);
    while let Some(x) = stack.pop() {
        if mem[x] {
            continue;
        }
        mem[x] = true;
        stack.push(a.star_low_unchecked(x));
        stack.push(a.partner_unchecked(x));
    }
    Ok(a.elems().filter(|&x| mem[x]).collect())
}

fn side_condition(a: &FinResLat) -> Option<String> {
    let u = a.unit();
    for x in a.elems().filter(|&x| x != u) {
        if a.inv_ell(x) == u || a.inv_r(x) == u {
            return Some(format!("{} has inverse 1", a.label(x)));
        }
        for y in a.elems().filter(|&y| y != u) {
            if a.join(x, y) == u || a.meet(x, y) == u {
                return Some(format!("{} and {} join or meet to 1", a.label(x), a.label(y)));
            }
        }
    }
    None
}

/// Nested sum over the index chain `0 < 1 < ... < k-1`: summand `j` sits at the
/// unit of summand `i` for `i < j`. Non-unit elements keep summand order, the
/// unit comes last and takes the label of the first summand's unit. Returns the
/// sum with the embedding of each summand.
pub fn nested_sum(summands: &[FinResLat]) -> Result<(FinResLat, Vec<Vec<Elem>>), ChainError> {
    if summands.is_empty() {
        return Err(ChainError::Internal("nested sum of no summands".into()));
    }
    for (i, s) in summands.iter().enumerate() {
        if let Some(w) = s.conic_witness() {
            return Err(ChainError::SideConditionViolated { index: i, witness: format!("not conic at {w}") });
        }
        if i + 1 < summands.len() {
            if let Some(w) = side_condition(s) {
                return Err(ChainError::SideConditionViolated { index: i, witness: w });
            }
        }
    }
    // (summand, local element) for every new index
    let mut origin: Vec<(usize, Elem)> = Vec::new();
    let mut maps: Vec<Vec<Elem>> = Vec::new();
    for (i, s) in summands.iter().enumerate() {
        let mut m = vec![usize::MAX; s.len()];
        for x in s.elems().filter(|&x| x != s.unit()) {
            m[x] = origin.len();
            origin.push((i, x));
        }
        maps.push(m);
    }
    let unit = origin.len();
    origin.push((0, summands[0].unit()));
    for (i, s) in summands.iter().enumerate() {
        maps[i][s.unit()] = unit;
    }
    let n = origin.len();
    let mut labels: Vec<String> = Vec::with_capacity(n);
    let mut seen = std::collections::HashSet::new();
    for &(i, x) in &origin {
        let l = summands[i].label(x).to_string();
        if !seen.insert(l.clone()) {
            return Err(ChainError::LabelClash(l));
        }
        labels.push(l);
    }
    let le = |p: usize, q: usize| -> bool {
        if p == q {
            return true;
        }
        if p == unit {
            let (j, y) = origin[q];
            return summands[j].leq(summands[j].unit(), y);
        }
        if q == unit {
            let (i, x) = origin[p];
            return summands[i].leq(x, summands[i].unit());
        }
        let ((i, x), (j, y)) = (origin[p], origin[q]);
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => summands[i].leq(x, y),
            std::cmp::Ordering::Less => summands[i].lt(x, summands[i].unit()),
            std::cmp::Ordering::Greater => summands[j].lt(summands[j].unit(), y),
        }
    };
    let mut leq = vec![false; n * n];
    let mut mult = vec![0; n * n];
    for p in 0..n {
        for q in 0..n {
            leq[p * n + q] = le(p, q);
            mult[p * n + q] = if p == unit {
                q
            } else if q == unit {
                p
            } else {
                let ((i, x), (j, y)) = (origin[p], origin[q]);
                match i.cmp(&j) {
                    std::cmp::Ordering::Equal => maps[i][summands[i].mult(x, y)],
                    std::cmp::Ordering::Less => p,
                    std::cmp::Ordering::Greater => q,
                }
            };
        }
    }
    let sum = FinResLat::from_order(labels, leq, mult, unit)
        .map_err(|e| ChainError::Internal(format!("nested sum is not residuated: {e}")))?;
    Ok((sum, maps))
}

/// Nested sum of enhanced monoidal preorders: the ordinal sum of the layer
/// stacks with the units merged. Element numbering as in [`nested_sum`].
pub fn nested_sum_emp(summands: &[Emp]) -> Result<(Emp, Vec<Vec<Elem>>), ChainError> {
    if summands.is_empty() {
        return Err(ChainError::Internal("nested sum of no summands".into()));
    }
    let mut labels = Vec::new();
    let mut layers: LayerSeq = Vec::new();
    let mut maps = Vec::new();
    let total: usize = summands.iter().map(|s| s.len() - 1).sum();
    for (i, s) in summands.iter().enumerate() {
        if i + 1 < summands.len() {
            if let Some(x) = (0..s.len()).find(|&x| x != s.unit() && s.star(x) == s.unit()) {
                return Err(ChainError::SideConditionViolated {
                    index: i,
                    witness: format!("{} has star 1", s.labels()[x]),
                });
            }
        }
        let mut m = vec![total; s.len()];
        for l in s.layers() {
            let mut map = |e: Elem| {
                if m[e] == total {
                    m[e] = labels.len();
                    labels.push(s.labels()[e].clone());
                }
                m[e]
            };
            let nl = match *l {
                Layer::Unit(_) => continue,
                Layer::Pos(e) => Layer::Pos(map(e)),
                Layer::Neg(e) => Layer::Neg(map(e)),
                Layer::Pair { pos, neg, tie } => {
                    let pos = map(pos);
                    Layer::Pair { pos, neg: map(neg), tie }
                }
            };
            layers.push(nl);
        }
        maps.push(m);
    }
    layers.push(Layer::Unit(total));
    labels.push(summands[0].labels()[summands[0].unit()].clone());
    let mut seen = std::collections::HashSet::new();
    for l in &labels {
        if !seen.insert(l.clone()) {
            return Err(ChainError::LabelClash(l.clone()));
        }
    }
    let emp = Emp::from_layers(labels, layers).map_err(ChainError::InvalidEmp)?;
    Ok((emp, maps))
}

/// One-generated pieces of a ⋆-involutive chain, bottom piece first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrownDecomposition {
    /// Non-unit elements of each piece, ascending by index.
    pub pieces: Vec<Vec<Elem>>,
    pub crowns: Vec<CrownType>,
}

impl CrownDecomposition {
    /// Piece index containing `x`, or `None` for the unit.
    pub fn piece_of(&self, x: Elem) -> Option<usize> {
        self.pieces.iter().position(|p| p.binary_search(&x).is_ok())
    }
}

pub fn crown_decomposition(a: &FinResLat) -> Result<CrownDecomposition, ChainError> {
    if let Some(w) = a.chain_witness() {
        return Err(ChainError::NotAChain(w));
    }
    if let Some(w) = a.star_involutive_witness() {
        return Err(ChainError::NotStarInvolutive(w));
    }
    let emp = to_emp(a)?;
    let u = a.unit();
    let mut covered = vec![false; a.len()];
    covered[u] = true;
    let mut pieces: Vec<Vec<Elem>> = Vec::new();
    for x in a.elems() {
        if covered[x] {
            continue;
        }
        let g: Vec<Elem> = generate_subalgebra(a, &[x])?.into_iter().filter(|&y| y != u).collect();
        for &y in &g {
            if covered[y] {
                return Err(ChainError::Internal(format!(
                    "one-generated subalgebras overlap at {}",
                    a.label(y)
                )));
            }
            covered[y] = true;
        }
        pieces.push(g);
    }
    pieces.sort_by_key(|p| p.iter().map(|&x| emp.layer_of(x)).min());
    let mut crowns = Vec::new();
    let mut subs = Vec::new();
    for p in &pieces {
        let mut set = p.clone();
        set.push(u);
        let (sub, _) = a.subalgebra(&set).ok_or_else(|| ChainError::Internal("piece not closed".into()))?;
        let ty = is_vertical_crown(&to_emp(&sub)?)
            .ok_or_else(|| ChainError::Internal(format!("piece {:?} is not a crown", p)))?;
        crowns.push(ty);
        subs.push(sub);
    }
    // the nested sum of the pieces must give back the algebra
    let (sum, maps) = nested_sum(&subs)?;
    let mut to_a = vec![u; sum.len()];
    for (i, p) in pieces.iter().enumerate() {
        let mut set = p.clone();
        set.push(u);
        set.sort_unstable();
        for (local, &global) in set.iter().enumerate() {
            to_a[maps[i][local]] = global;
        }
    }
    if !is_embedding(&sum, a, &to_a) || sum.len() != a.len() {
        return Err(ChainError::Internal("nested sum of crowns differs from the algebra".into()));
    }
    Ok(CrownDecomposition { pieces, crowns })
}
