use crate::algebra::{Elem, FinResLat};

impl FinResLat {
    /// Whether `set` is closed under every fundamental operation and contains 1.
    pub fn is_subuniverse(&self, set: &[Elem]) -> bool {
        let mut mem = vec![false; self.len()];
        for &x in set {
            mem[x] = true;
        }
        if !mem[self.unit()] {
            return false;
        }
        for &x in set {
            for &y in set {
                let outs = [
                    self.meet(x, y),
                    self.join(x, y),
                    self.mult(x, y),
                    self.ld(x, y),
                    self.rd(x, y),
                ];
                if outs.iter().any(|&z| !mem[z]) {
                    return false;
                }
            }
        }
        true
    }

    /// Closure of `seeds ∪ {1}` under all fundamental operations.
    pub fn generate(&self, seeds: &[Elem]) -> Vec<Elem> {
        let mut mem = vec![false; self.len()];
        let mut list = vec![self.unit()];
        mem[self.unit()] = true;
        for &s in seeds {
            if !mem[s] {
                mem[s] = true;
                list.push(s);
            }
        }
        let mut i = 0;
        while i < list.len() {
            let x = list[i];
            for j in 0..=i {
                let y = list[j];
                for (a, b) in [(x, y), (y, x)] {
                    for z in [
                        self.meet(a, b),
                        self.join(a, b),
                        self.mult(a, b),
                        self.ld(a, b),
                        self.rd(a, b),
                    ] {
                        if !mem[z] {
                            mem[z] = true;
                            list.push(z);
                        }
                    }
                }
            }
            i += 1;
        }
        list.sort_unstable();
        list
    }

    /// The subalgebra on `set` (any order), elements kept in ascending index
    /// order, together with the inclusion map. `None` if not closed.
    pub fn subalgebra(&self, set: &[Elem]) -> Option<(FinResLat, Vec<Elem>)> {
        let mut elems: Vec<Elem> = set.to_vec();
        elems.sort_unstable();
        elems.dedup();
        if !self.is_subuniverse(&elems) {
            return None;
        }
        let m = elems.len();
        let mut pos = vec![usize::MAX; self.len()];
        for (i, &x) in elems.iter().enumerate() {
            pos[x] = i;
        }
        let labels = elems.iter().map(|&x| self.label(x).to_string()).collect();
        let mut leq = vec![false; m * m];
        let mut mult = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                leq[i * m + j] = self.leq(elems[i], elems[j]);
                mult[i * m + j] = pos[self.mult(elems[i], elems[j])];
            }
        }
        let sub = FinResLat::from_order(labels, leq, mult, pos[self.unit()])
            .expect("closed subset of a residuated lattice is a residuated lattice");
        Some((sub, elems))
    }

    /// All subuniverses, each sorted; found by closing every subset of
    /// generators incrementally.
    pub fn subuniverses(&self) -> Vec<Vec<Elem>> {
        use std::collections::BTreeSet;
        let mut found: BTreeSet<Vec<Elem>> = BTreeSet::new();
        let base = self.generate(&[]);
        let mut stack = vec![base];
        while let Some(s) = stack.pop() {
            if !found.insert(s.clone()) {
                continue;
            }
            for x in self.elems() {
                if s.binary_search(&x).is_err() {
                    let mut seeds = s.clone();
                    seeds.push(x);
                    let g = self.generate(&seeds);
                    if !found.contains(&g) {
                        stack.push(g);
                    }
                }
            }
        }
        found.into_iter().collect()
    }

    /// Direct product with pair labels `(x,y)`; element `(i, j)` has index `i * |b| + j`.
    pub fn product(&self, b: &FinResLat) -> FinResLat {
        let (na, nb) = (self.len(), b.len());
        let n = na * nb;
        let idx = |i: Elem, j: Elem| i * nb + j;
        let mut labels = Vec::with_capacity(n);
        for i in 0..na {
            for j in 0..nb {
                labels.push(format!("({},{})", self.label(i), b.label(j)));
            }
        }
        let mut leq = vec![false; n * n];
        let mut mult = vec![0; n * n];
        for i in 0..na {
            for j in 0..nb {
                for k in 0..na {
                    for l in 0..nb {
                        leq[idx(i, j) * n + idx(k, l)] = self.leq(i, k) && b.leq(j, l);
                        mult[idx(i, j) * n + idx(k, l)] = idx(self.mult(i, k), b.mult(j, l));
                    }
                }
            }
        }
        FinResLat::from_order(labels, leq, mult, idx(self.unit(), b.unit()))
            .expect("product of residuated lattices")
    }
}

/// First operation/pair where `map: src -> dst` fails to commute, if any.
pub fn hom_witness(src: &FinResLat, dst: &FinResLat, map: &[Elem]) -> Option<String> {
    if map.len() != src.len() {
        return Some(format!("map has {} entries for {} elements", map.len(), src.len()));
    }
    if map[src.unit()] != dst.unit() {
        return Some("unit not preserved".to_string());
    }
    for x in src.elems() {
        for y in src.elems() {
            let (fx, fy) = (map[x], map[y]);
            let checks: [(&str, Elem, Elem); 5] = [
                ("meet", map[src.meet(x, y)], dst.meet(fx, fy)),
                ("join", map[src.join(x, y)], dst.join(fx, fy)),
                ("mult", map[src.mult(x, y)], dst.mult(fx, fy)),
                ("ldiv", map[src.ld(x, y)], dst.ld(fx, fy)),
                ("rdiv", map[src.rd(x, y)], dst.rd(fx, fy)),
            ];
            for (op, got, want) in checks {
                if got != want {
                    return Some(format!("{} at ({}, {})", op, src.label(x), src.label(y)));
                }
            }
        }
    }
    None
}

pub fn is_homomorphism(src: &FinResLat, dst: &FinResLat, map: &[Elem]) -> bool {
    hom_witness(src, dst, map).is_none()
}

pub fn is_injective(map: &[Elem]) -> bool {
    let mut seen = std::collections::HashSet::new();
    map.iter().all(|x| seen.insert(*x))
}

pub fn is_embedding(src: &FinResLat, dst: &FinResLat, map: &[Elem]) -> bool {
    is_injective(map) && is_homomorphism(src, dst, map)
}

/// The map sending each element of `src` to the element of `dst` with the
/// same label, if every label is found.
pub fn label_map(src: &FinResLat, dst: &FinResLat) -> Option<Vec<Elem>> {
    src.labels().iter().map(|l| dst.index_of(l)).collect()
}

/// Same algebra up to element numbering, matching elements by label.
pub fn same_by_labels(a: &FinResLat, b: &FinResLat) -> bool {
    a.len() == b.len() && label_map(a, b).is_some_and(|m| is_embedding(a, b, &m))
}
