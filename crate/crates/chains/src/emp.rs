use std::fmt;

use ircl_core::{Elem, FinResLat};
use thiserror::Error;

use crate::ChainError;

/// Tie kind of a two-element layer, positive element first: `L` means
/// `ab = a, ba = b`; `R` means `ab = b, ba = a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Tie {
    L,
    R,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Layer {
    Unit(Elem),
    Pos(Elem),
    Neg(Elem),
    Pair { pos: Elem, neg: Elem, tie: Tie },
}

impl Layer {
    pub fn elems(&self) -> Vec<Elem> {
        match *self {
            Layer::Unit(e) | Layer::Pos(e) | Layer::Neg(e) => vec![e],
            Layer::Pair { pos, neg, .. } => vec![pos, neg],
        }
    }
    pub fn code(&self) -> u8 {
        match self {
            Layer::Unit(_) => b'1',
            Layer::Pos(_) => b'+',
            Layer::Neg(_) => b'-',
            Layer::Pair { tie: Tie::L, .. } => b'L',
            Layer::Pair { tie: Tie::R, .. } => b'R',
        }
    }
}

/// Layers bottom to top; the last one is the unit.
pub type LayerSeq = Vec<Layer>;

/// Canonical byte encoding of a layer sequence; equal codes iff isomorphic chains.
pub fn encode_layers(layers: &[Layer]) -> Vec<u8> {
    layers.iter().map(Layer::code).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid enhanced monoidal preorder: condition {condition} ({name}) fails: {witness}")]
pub struct EmpError {
    pub condition: u8,
    pub name: &'static str,
    pub witness: String,
}

fn emp_err(condition: u8, name: &'static str, witness: impl Into<String>) -> EmpError {
    EmpError { condition, name, witness: witness.into() }
}

/// An enhanced monoidal preorder, stored by its layer sequence with the
/// preorder, signs and star map derived.
#[derive(Clone)]
pub struct Emp {
    labels: Vec<String>,
    layers: LayerSeq,
    unit: Elem,
    layer_of: Vec<usize>,
    sq: Vec<bool>,
    positive: Vec<bool>,
    negative: Vec<bool>,
    star: Vec<Elem>,
}

impl PartialEq for Emp {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.layers == other.layers && self.unit == other.unit
    }
}
impl Eq for Emp {}

impl fmt::Debug for Emp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Emp[")?;
        for (i, l) in self.layers.iter().enumerate() {
            if i > 0 {
                write!(f, " | ")?;
            }
            let names: Vec<&str> = l.elems().iter().map(|&e| self.labels[e].as_str()).collect();
            write!(f, "{}:{}", l.code() as char, names.join(","))?;
        }
        write!(f, "]")
    }
}

impl Emp {
    /// Build from a layer sequence and check every defining condition.
    pub fn from_layers(labels: Vec<String>, layers: LayerSeq) -> Result<Emp, EmpError> {
        let n = labels.len();
        let mut layer_of = vec![usize::MAX; n];
        for (i, l) in layers.iter().enumerate() {
            for e in l.elems() {
                if e >= n {
                    return Err(emp_err(0, "shape", format!("index {e} out of range")));
                }
                if layer_of[e] != usize::MAX {
                    return Err(emp_err(0, "shape", format!("{} in two layers", labels[e])));
                }
                layer_of[e] = i;
            }
        }
        if let Some(e) = layer_of.iter().position(|&l| l == usize::MAX) {
            return Err(emp_err(0, "shape", format!("{} in no layer", labels[e])));
        }
        let unit = match layers.last() {
            Some(Layer::Unit(u)) => *u,
            _ => return Err(emp_err(1, "unit is the sole maximum", "top layer is not the unit")),
        };
        if let Some(l) = layers[..layers.len() - 1].iter().find(|l| matches!(l, Layer::Unit(_))) {
            return Err(emp_err(1, "unit is the sole maximum", format!("second unit layer {:?}", l.elems())));
        }
        let mut sq = vec![false; n * n];
        let mut positive = vec![false; n];
        let mut negative = vec![false; n];
        for (i, l) in layers.iter().enumerate() {
            match *l {
                Layer::Unit(e) => {
                    positive[e] = true;
                    negative[e] = true;
                }
                Layer::Pos(e) => positive[e] = true,
                Layer::Neg(e) => negative[e] = true,
                Layer::Pair { pos, neg, tie } => {
                    positive[pos] = true;
                    negative[neg] = true;
                    if tie == Tie::L {
                        sq[pos * n + neg] = true;
                        sq[neg * n + pos] = true;
                    }
                }
            }
            for x in l.elems() {
                for (j, m) in layers.iter().enumerate() {
                    if j >= i {
                        for y in m.elems() {
                            if j > i || x == y {
                                sq[x * n + y] = true;
                            }
                        }
                    }
                }
            }
        }
        let star = star_map(&layers, n, unit)?;
        let emp = Emp { labels, layers, unit, layer_of, sq, positive, negative, star };
        verify_relation(&emp.labels, &emp.sq, &emp.positive, &emp.negative, &emp.star, unit)?;
        Ok(emp)
    }

    /// Build from a raw relation, verifying the conditions and recovering layers.
    pub fn from_relation(
        labels: Vec<String>,
        sq: Vec<bool>,
        positive: Vec<bool>,
        negative: Vec<bool>,
        star: Vec<Elem>,
        unit: Elem,
    ) -> Result<Emp, EmpError> {
        let n = labels.len();
        if sq.len() != n * n || positive.len() != n || negative.len() != n || star.len() != n || unit >= n {
            return Err(emp_err(0, "shape", "table sizes"));
        }
        verify_relation(&labels, &sq, &positive, &negative, &star, unit)?;
        let strict = |x: Elem, y: Elem| sq[x * n + y] && !sq[y * n + x];
        // group elements by their strict downset
        let mut elems: Vec<Elem> = (0..n).collect();
        let down = |x: Elem| (0..n).filter(|&y| strict(y, x)).count();
        elems.sort_by_key(|&x| (down(x), x));
        let mut layers: LayerSeq = Vec::new();
        let mut i = 0;
        while i < n {
            let x = elems[i];
            let mut group = vec![x];
            let mut j = i + 1;
            while j < n && down(elems[j]) == down(x) {
                group.push(elems[j]);
                j += 1;
            }
            let layer = match group.as_slice() {
                [e] if *e == unit => Layer::Unit(*e),
                [e] if positive[*e] => Layer::Pos(*e),
                [e] => Layer::Neg(*e),
                [p, q] => {
                    let (pos, neg) = if positive[*p] { (*p, *q) } else { (*q, *p) };
                    let tie = if sq[pos * n + neg] { Tie::L } else { Tie::R };
                    Layer::Pair { pos, neg, tie }
                }
                _ => {
                    return Err(emp_err(6, "layered", format!("layer of {} has {} elements", labels[x], group.len())))
                }
            };
            layers.push(layer);
            i = j;
        }
        let emp = Emp::from_layers(labels, layers)?;
        if emp.sq != sq || emp.star != star {
            return Err(emp_err(6, "layered", "relation differs from its layer normal form"));
        }
        Ok(emp)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn layers(&self) -> &[Layer] {
        &self.layers
    }
    pub fn unit(&self) -> Elem {
        self.unit
    }
    pub fn layer_of(&self, x: Elem) -> usize {
        self.layer_of[x]
    }
    pub fn sq(&self, x: Elem, y: Elem) -> bool {
        self.sq[x * self.len() + y]
    }
    pub fn strict(&self, x: Elem, y: Elem) -> bool {
        self.sq(x, y) && !self.sq(y, x)
    }
    pub fn is_positive(&self, x: Elem) -> bool {
        self.positive[x]
    }
    pub fn is_negative(&self, x: Elem) -> bool {
        self.negative[x]
    }
    pub fn star(&self, x: Elem) -> Elem {
        self.star[x]
    }
    pub fn preorder(&self) -> &[bool] {
        &self.sq
    }
    pub fn encode(&self) -> Vec<u8> {
        encode_layers(&self.layers)
    }
}

fn star_map(layers: &[Layer], n: usize, unit: Elem) -> Result<Vec<Elem>, EmpError> {
    let mut star = vec![unit; n];
    for (i, l) in layers.iter().enumerate() {
        for e in l.elems() {
            if e == unit {
                continue;
            }
            let neg = match *l {
                Layer::Neg(_) => true,
                Layer::Pos(_) => false,
                Layer::Pair { neg, .. } => e == neg,
                Layer::Unit(_) => unreachable!(),
            };
            if neg {
                // least positive strictly above
                let s = layers[i + 1..].iter().find_map(|m| match *m {
                    Layer::Pos(p) | Layer::Unit(p) | Layer::Pair { pos: p, .. } => Some(p),
                    Layer::Neg(_) => None,
                });
                star[e] = s.expect("unit layer is positive");
            } else {
                // greatest negative strictly below
                let s = layers[..i].iter().rev().find_map(|m| match *m {
                    Layer::Neg(q) | Layer::Pair { neg: q, .. } => Some(q),
                    _ => None,
                });
                match s {
                    Some(q) => star[e] = q,
                    None => {
                        return Err(emp_err(5, "star", format!("positive element {e} has no negative below it")))
                    }
                }
            }
        }
    }
    Ok(star)
}

fn verify_relation(
    labels: &[String],
    sq: &[bool],
    positive: &[bool],
    negative: &[bool],
    star: &[Elem],
    unit: Elem,
) -> Result<(), EmpError> {
    let n = labels.len();
    let s = |x: Elem, y: Elem| sq[x * n + y];
    let st = |x: Elem, y: Elem| s(x, y) && !s(y, x);
    let l = |x: Elem| labels[x].as_str();
    for x in 0..n {
        if !s(x, x) {
            return Err(emp_err(2, "preorder", format!("{} not reflexive", l(x))));
        }
        for y in 0..n {
            for z in 0..n {
                if s(x, y) && s(y, z) && !s(x, z) {
                    return Err(emp_err(2, "preorder", format!("{} {} {}", l(x), l(y), l(z))));
                }
            }
        }
    }
    for x in 0..n {
        if !s(x, unit) || (x != unit && s(unit, x)) {
            return Err(emp_err(1, "unit is the sole maximum", l(x).to_string()));
        }
        if !(positive[x] || negative[x]) || (x != unit && positive[x] && negative[x]) {
            return Err(emp_err(3, "cones", l(x).to_string()));
        }
    }
    if !(positive[unit] && negative[unit]) {
        return Err(emp_err(3, "cones", "unit must be in both cones"));
    }
    for x in 0..n {
        for y in 0..n {
            if positive[x] == positive[y] && negative[x] == negative[y] && !s(x, y) && !s(y, x) {
                return Err(emp_err(4, "cones are chains", format!("{} {}", l(x), l(y))));
            }
        }
    }
    if star[unit] != unit {
        return Err(emp_err(5, "star", "unit star"));
    }
    for x in 0..n {
        if x == unit {
            continue;
        }
        let want = if negative[x] {
            // ⊑-smallest positive strictly above x
            let cands: Vec<Elem> = (0..n).filter(|&p| positive[p] && st(x, p)).collect();
            cands.iter().copied().find(|&p| cands.iter().all(|&q| s(p, q)))
        } else {
            let cands: Vec<Elem> = (0..n).filter(|&q| negative[q] && st(q, x)).collect();
            cands.iter().copied().find(|&q| cands.iter().all(|&p| s(p, q)))
        };
        if want != Some(star[x]) {
            return Err(emp_err(5, "star", format!("star of {}", l(x))));
        }
    }
    for x in 0..n {
        for y in 0..n {
            if x != y && !st(x, y) && !st(y, x) {
                if positive[x] == positive[y] {
                    return Err(emp_err(6, "layered", format!("{} {} share a sign", l(x), l(y))));
                }
                for z in 0..n {
                    if st(x, z) != st(y, z) || st(z, x) != st(z, y) {
                        return Err(emp_err(6, "layered", format!("{} {} differ at {}", l(x), l(y), l(z))));
                    }
                }
            }
        }
    }
    Ok(())
}

/// `x ⊑ y` iff `xy = x`.
pub fn monoidal_preorder(a: &FinResLat) -> Vec<bool> {
    let n = a.len();
    (0..n * n).map(|c| a.mult(c / n, c % n) == c / n).collect()
}

/// `x ≤_n y` iff `xy = yx = x`.
pub fn natural_order(a: &FinResLat) -> Vec<bool> {
    let n = a.len();
    (0..n * n)
        .map(|c| {
            let (x, y) = (c / n, c % n);
            a.mult(x, y) == x && a.mult(y, x) == x
        })
        .collect()
}

/// Whether `x <_n y ⇔ x ⊏ y` for all pairs.
pub fn natural_order_agrees(a: &FinResLat) -> bool {
    let n = a.len();
    let sq = monoidal_preorder(a);
    let nat = natural_order(a);
    (0..n).all(|x| {
        (0..n).all(|y| {
            let strict_nat = x != y && nat[x * n + y];
            let strict_sq = sq[x * n + y] && !sq[y * n + x];
            strict_nat == strict_sq
        })
    })
}

pub fn to_emp(a: &FinResLat) -> Result<Emp, ChainError> {
    if let Some(w) = a.chain_witness() {
        return Err(ChainError::NotAChain(w));
    }
    if let Some(w) = a.idempotent_witness() {
        return Err(ChainError::NotIdempotent(w));
    }
    let u = a.unit();
    let positive = a.elems().map(|x| a.leq(u, x)).collect();
    let negative = a.elems().map(|x| a.leq(x, u)).collect();
    let star = a.elems().map(|x| a.star_low_unchecked(x)).collect();
    Emp::from_relation(a.labels().to_vec(), monoidal_preorder(a), positive, negative, star, u)
        .map_err(ChainError::InvalidEmp)
}

pub fn from_emp(p: &Emp) -> Result<FinResLat, ChainError> {
    let n = p.len();
    let mut leq = vec![false; n * n];
    let mut mult = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            let (nx, ny) = (p.is_negative(x), p.is_negative(y));
            let (px, py) = (p.is_positive(x), p.is_positive(y));
            leq[x * n + y] = (nx && ny && p.sq(x, y)) || (px && py && p.sq(y, x)) || (nx && py);
            mult[x * n + y] = if p.strict(x, y) {
                x
            } else if p.strict(y, x) || x == y {
                y
            } else {
                match p.layers[p.layer_of(x)] {
                    Layer::Pair { tie: Tie::L, .. } => x,
                    _ => y,
                }
            };
        }
    }
    FinResLat::from_order(p.labels.clone(), leq, mult, p.unit)
        .map_err(|e| ChainError::Internal(format!("from_emp produced an invalid algebra: {e}")))
}

/// The layer sequence of an idempotent chain.
pub fn layers(p: &Emp) -> LayerSeq {
    p.layers.clone()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairClass {
    L,
    R,
    C,
}

/// Classify a positive `a` and negative `b` as a left-zero pair, right-zero
/// pair, or central inverse pair. The unit classifies as `C`.
pub fn classify_pair(a: &FinResLat, pos: Elem, neg: Elem) -> Result<PairClass, ChainError> {
    let u = a.unit();
    if pos == u || neg == u {
        return Ok(PairClass::C);
    }
    if !a.lt(u, pos) || !a.lt(neg, u) {
        return Err(ChainError::NotConfigured(format!(
            "{} must be positive and {} negative",
            a.label(pos),
            a.label(neg)
        )));
    }
    let (l, r) = (|x| a.inv_ell(x), |x| a.inv_r(x));
    let covers = |x: Elem, y: Elem| a.lt(x, y) && !a.elems().any(|z| a.lt(x, z) && a.lt(z, y));
    let central = |x: Elem| l(x) == r(x);
    let (ab, ba) = (a.mult(pos, neg), a.mult(neg, pos));
    let right = [
        ab == neg && ba == pos,
        covers(l(pos), r(pos)) && r(pos) == neg,
        covers(r(neg), l(neg)) && l(neg) == pos,
        covers(r(r(pos)), pos) && neg == r(pos),
        covers(l(l(neg)), neg) && pos == l(neg),
        pos == l(r(pos)) && !central(pos) && neg == r(pos),
        neg == r(l(neg)) && !central(neg) && pos == l(neg),
    ];
    let left = [
        ab == pos && ba == neg,
        covers(r(pos), l(pos)) && l(pos) == neg,
        covers(l(neg), r(neg)) && r(neg) == pos,
        covers(l(l(pos)), pos) && neg == l(pos),
        covers(r(r(neg)), neg) && pos == r(neg),
        pos == r(l(pos)) && !central(pos) && neg == l(pos),
        neg == l(r(neg)) && !central(neg) && pos == r(neg),
    ];
    for (name, v) in [("R", right), ("L", left)] {
        if v.iter().any(|&b| b) && !v.iter().all(|&b| b) {
            return Err(ChainError::Internal(format!(
                "{name} characterizations disagree on ({}, {}): {v:?}",
                a.label(pos),
                a.label(neg)
            )));
        }
    }
    if right[0] {
        Ok(PairClass::R)
    } else if left[0] {
        Ok(PairClass::L)
    } else if l(pos) == neg && r(pos) == neg {
        Ok(PairClass::C)
    } else {
        Err(ChainError::NotConfigured(format!("({}, {})", a.label(pos), a.label(neg))))
    }
}
