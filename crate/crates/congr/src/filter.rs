use std::collections::BTreeSet;

use ircl_core::{Elem, FinResLat};

/// A subset of the universe, kept as a sorted element list.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CongFilter {
    elems: Vec<Elem>,
}

impl CongFilter {
    pub fn from_elems(mut elems: Vec<Elem>) -> Self {
        elems.sort_unstable();
        elems.dedup();
        CongFilter { elems }
    }

    /// `↑m`.
    pub fn principal_upset(a: &FinResLat, m: Elem) -> Self {
        CongFilter { elems: a.elems().filter(|&x| a.leq(m, x)).collect() }
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }
    pub fn len(&self) -> usize {
        self.elems.len()
    }
    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }
    pub fn contains(&self, x: Elem) -> bool {
        self.elems.binary_search(&x).is_ok()
    }
    pub fn is_subset(&self, other: &CongFilter) -> bool {
        self.elems.iter().all(|&x| other.contains(x))
    }

    /// First violated filter condition, if any.
    pub fn witness(&self, a: &FinResLat) -> Option<String> {
        let l = |x: Elem| a.label(x);
        if !self.contains(a.unit()) {
            return Some("1 missing".into());
        }
        for &x in &self.elems {
            for y in a.elems() {
                if a.leq(x, y) && !self.contains(y) {
                    return Some(format!("not upward closed: {} <= {}", l(x), l(y)));
                }
                let (lam, rho) = a.conjugates(y, x);
                if !self.contains(lam) || !self.contains(rho) {
                    return Some(format!("conjugate of {} by {} missing", l(x), l(y)));
                }
            }
            for &y in &self.elems {
                if !self.contains(a.mult(x, y)) || !self.contains(a.meet(x, y)) {
                    return Some(format!("not closed at {} {}", l(x), l(y)));
                }
            }
        }
        None
    }

    pub fn is_valid(&self, a: &FinResLat) -> bool {
        self.witness(a).is_none()
    }
}

/// A partition given by a class number per element, numbered by first occurrence.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Congruence {
    class: Vec<usize>,
}

impl Congruence {
    pub fn from_classes(raw: &[usize]) -> Self {
        let mut map = std::collections::HashMap::new();
        let class = raw
            .iter()
            .map(|c| {
                let k = map.len();
                *map.entry(*c).or_insert(k)
            })
            .collect();
        Congruence { class }
    }

    pub fn identity(n: usize) -> Self {
        Congruence { class: (0..n).collect() }
    }
    pub fn total(n: usize) -> Self {
        Congruence { class: vec![0; n] }
    }

    pub fn class_of(&self, x: Elem) -> usize {
        self.class[x]
    }
    pub fn related(&self, x: Elem, y: Elem) -> bool {
        self.class[x] == self.class[y]
    }
    pub fn num_classes(&self) -> usize {
        self.class.iter().max().map_or(0, |m| m + 1)
    }
    pub fn classes(&self) -> Vec<Vec<Elem>> {
        let mut out = vec![Vec::new(); self.num_classes()];
        for (x, &c) in self.class.iter().enumerate() {
            out[c].push(x);
        }
        out
    }
    pub fn is_identity(&self) -> bool {
        self.num_classes() == self.class.len()
    }
    pub fn is_total(&self) -> bool {
        self.num_classes() <= 1
    }
    pub fn is_below(&self, other: &Congruence) -> bool {
        (0..self.class.len()).all(|x| (0..self.class.len()).all(|y| !self.related(x, y) || other.related(x, y)))
    }
    pub fn meet(&self, other: &Congruence) -> Congruence {
        let pairs: Vec<(usize, usize)> = self.class.iter().zip(&other.class).map(|(&a, &b)| (a, b)).collect();
        let mut map = std::collections::HashMap::new();
        let raw: Vec<usize> = pairs
            .iter()
            .map(|p| {
                let k = map.len();
                *map.entry(*p).or_insert(k)
            })
            .collect();
        Congruence::from_classes(&raw)
    }

    /// Restriction along an inclusion map.
    pub fn restrict(&self, incl: &[Elem]) -> Congruence {
        let raw: Vec<usize> = incl.iter().map(|&x| self.class[x]).collect();
        Congruence::from_classes(&raw)
    }

    /// First operation that fails to respect the partition, if any.
    pub fn witness(&self, a: &FinResLat) -> Option<String> {
        for x in a.elems() {
            for x2 in a.elems().filter(|&x2| self.related(x, x2)) {
                for y in a.elems() {
                    let ops: [(&str, fn(&FinResLat, Elem, Elem) -> Elem); 5] = [
                        ("meet", FinResLat::meet),
                        ("join", FinResLat::join),
                        ("mult", FinResLat::mult),
                        ("ldiv", FinResLat::ld),
                        ("rdiv", FinResLat::rd),
                    ];
                    for (name, op) in ops {
                        if !self.related(op(a, x, y), op(a, x2, y)) || !self.related(op(a, y, x), op(a, y, x2)) {
                            return Some(format!("{name} with {} at {} ~ {}", a.label(y), a.label(x), a.label(x2)));
                        }
                    }
                }
            }
        }
        None
    }
}

/// Least congruence filter containing `seeds`, by fixpoint closure under
/// upsets, meets, products and both conjugations.
pub fn generate_filter_oracle(a: &FinResLat, seeds: &[Elem]) -> CongFilter {
    let n = a.len();
    let mut mem = vec![false; n];
    let mut list = Vec::new();
    let push = |x: Elem, mem: &mut Vec<bool>, list: &mut Vec<Elem>| {
        if !mem[x] {
            mem[x] = true;
            list.push(x);
        }
    };
    push(a.unit(), &mut mem, &mut list);
    for &s in seeds {
        push(s, &mut mem, &mut list);
    }
    let mut i = 0;
    while i < list.len() {
        let x = list[i];
        for y in a.elems() {
            if a.leq(x, y) {
                push(y, &mut mem, &mut list);
            }
            let (lam, rho) = a.conjugates(y, x);
            push(lam, &mut mem, &mut list);
            push(rho, &mut mem, &mut list);
        }
        for j in 0..=i {
            let y = list[j];
            for z in [a.meet(x, y), a.mult(x, y), a.mult(y, x)] {
                push(z, &mut mem, &mut list);
            }
        }
        i += 1;
    }
    CongFilter::from_elems(list)
}

/// `a θ b` iff `a\b` and `b\a` are in the filter.
pub fn congruence_from_filter(a: &FinResLat, f: &CongFilter) -> Congruence {
    let n = a.len();
    let mut raw = vec![usize::MAX; n];
    for x in 0..n {
        if raw[x] != usize::MAX {
            continue;
        }
        for y in x..n {
            if f.contains(a.ld(x, y)) && f.contains(a.ld(y, x)) {
                raw[y] = x;
            }
        }
    }
    Congruence::from_classes(&raw)
}

/// `↑[1]_θ`.
pub fn filter_from_congruence(a: &FinResLat, theta: &Congruence) -> CongFilter {
    let c = theta.class_of(a.unit());
    CongFilter::from_elems(
        a.elems().filter(|&x| a.elems().any(|y| theta.class_of(y) == c && a.leq(y, x))).collect(),
    )
}

/// Every congruence filter: principal ones closed under joins, sorted by
/// size then members.
pub fn enumerate_filters(a: &FinResLat) -> Vec<CongFilter> {
    let mut set: BTreeSet<CongFilter> = a.elems().map(|x| generate_filter_oracle(a, &[x])).collect();
    loop {
        let list: Vec<CongFilter> = set.iter().cloned().collect();
        let mut grew = false;
        for (i, f) in list.iter().enumerate() {
            for g in &list[i + 1..] {
                let mut seeds = f.elems().to_vec();
                seeds.extend_from_slice(g.elems());
                grew |= set.insert(generate_filter_oracle(a, &seeds));
            }
        }
        if !grew {
            break;
        }
    }
    let mut out: Vec<CongFilter> = set.into_iter().collect();
    out.sort_by(|f, g| f.len().cmp(&g.len()).then_with(|| f.cmp(g)));
    out
}

/// All congruences, in the order of their filters.
pub fn enumerate_congruences(a: &FinResLat) -> Vec<Congruence> {
    enumerate_filters(a).iter().map(|f| congruence_from_filter(a, f)).collect()
}

/// The quotient algebra; each class is labelled `[x]` by its least-index member.
pub fn quotient(a: &FinResLat, theta: &Congruence) -> FinResLat {
    let classes = theta.classes();
    let k = classes.len();
    let rep: Vec<Elem> = classes.iter().map(|c| c[0]).collect();
    let cl = |x: Elem| theta.class_of(x);
    let labels = rep.iter().map(|&x| format!("[{}]", a.label(x))).collect();
    let mut leq = vec![false; k * k];
    let mut mult = vec![0; k * k];
    for i in 0..k {
        for j in 0..k {
            leq[i * k + j] = cl(a.join(rep[i], rep[j])) == j;
            mult[i * k + j] = cl(a.mult(rep[i], rep[j]));
        }
    }
    FinResLat::from_order(labels, leq, mult, cl(a.unit())).expect("quotient by a congruence")
}
