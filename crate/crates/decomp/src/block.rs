use ircl_core::order_from_covers;

use crate::DecompError;

/// A finite poset with top in which every pair has a join. Meets are partial:
/// a pair without a common lower bound has none.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    labels: Vec<String>,
    leq: Vec<bool>,
    top: usize,
    join: Vec<usize>,
    meet: Vec<Option<usize>>,
}

impl Block {
    pub fn new(labels: Vec<String>, leq: Vec<bool>) -> Result<Block, DecompError> {
        let n = labels.len();
        let bad = |m: String| Err(DecompError::InvalidBlock(m));
        if n == 0 {
            return bad("empty block".into());
        }
        if leq.len() != n * n {
            return bad(format!("order table has {} cells for {n} elements", leq.len()));
        }
        let le = |x: usize, y: usize| leq[x * n + y];
        for x in 0..n {
            if !le(x, x) {
                return bad(format!("{} not reflexive", labels[x]));
            }
            for y in 0..n {
                if x != y && le(x, y) && le(y, x) {
                    return bad(format!("{} and {} antisymmetry", labels[x], labels[y]));
                }
                for z in 0..n {
                    if le(x, y) && le(y, z) && !le(x, z) {
                        return bad(format!("{} {} {} transitivity", labels[x], labels[y], labels[z]));
                    }
                }
            }
        }
        let Some(top) = (0..n).find(|&t| (0..n).all(|x| le(x, t))) else {
            return bad("no top element".into());
        };
        let bound = |x: usize, y: usize, upper: bool| -> Option<usize> {
            let below = |a: usize, b: usize| if upper { le(a, b) } else { le(b, a) };
            let cands: Vec<usize> = (0..n).filter(|&z| below(x, z) && below(y, z)).collect();
            cands.iter().copied().find(|&z| cands.iter().all(|&w| below(z, w)))
        };
        let mut join = vec![0; n * n];
        let mut meet = vec![None; n * n];
        for x in 0..n {
            for y in 0..n {
                match bound(x, y, true) {
                    Some(j) => join[x * n + y] = j,
                    None => return bad(format!("{} and {} have no join", labels[x], labels[y])),
                }
                meet[x * n + y] = bound(x, y, false);
            }
        }
        let mut seen = std::collections::HashSet::new();
        if let Some(l) = labels.iter().find(|l| !seen.insert(l.as_str())) {
            return bad(format!("duplicate label {l}"));
        }
        Ok(Block { labels, leq, top, join, meet })
    }

    pub fn from_covers(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Block, DecompError> {
        let leq = order_from_covers(&labels, covers).map_err(|e| DecompError::InvalidBlock(e.to_string()))?;
        Block::new(labels, leq)
    }

    pub fn trivial(label: &str) -> Block {
        Block::new(vec![label.to_string()], vec![true]).expect("one-point block")
    }

    /// Chain with the labels in ascending order; the last one is the top.
    pub fn chain(labels: &[&str]) -> Block {
        let n = labels.len();
        let leq = (0..n * n).map(|c| c / n <= c % n).collect();
        Block::new(labels.iter().map(|s| s.to_string()).collect(), leq).expect("chain block")
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
    pub fn label(&self, x: usize) -> &str {
        &self.labels[x]
    }
    pub fn index_of(&self, l: &str) -> Option<usize> {
        self.labels.iter().position(|m| m == l)
    }
    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.leq[x * self.len() + y]
    }
    pub fn top(&self) -> usize {
        self.top
    }
    pub fn join(&self, x: usize, y: usize) -> usize {
        self.join[x * self.len() + y]
    }
    pub fn meet(&self, x: usize, y: usize) -> Option<usize> {
        self.meet[x * self.len() + y]
    }
    pub fn bottom(&self) -> Option<usize> {
        (0..self.len()).find(|&b| (0..self.len()).all(|x| self.leq(b, x)))
    }
    pub fn is_trivial(&self) -> bool {
        self.len() == 1
    }
    pub fn is_lattice(&self) -> bool {
        self.bottom().is_some()
    }

    /// A pair of elements with no meet, if any.
    pub fn meet_witness(&self) -> Option<(usize, usize)> {
        let n = self.len();
        (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| self.meet(x, y).is_none())
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.len();
        self.is_lattice()
            && (0..n).all(|x| {
                (0..n).all(|y| {
                    (0..n).all(|z| {
                        let m = |a, b| self.meet(a, b).unwrap();
                        m(x, self.join(y, z)) == self.join(m(x, y), m(x, z))
                    })
                })
            })
    }

    /// Relative pseudocomplement `max{z : z ∧ x ≤ y}`, when the maximum exists.
    pub fn implication(&self, x: usize, y: usize) -> Option<usize> {
        let n = self.len();
        let ok: Vec<usize> = (0..n).filter(|&z| self.meet(z, x).is_some_and(|m| self.leq(m, y))).collect();
        ok.iter().copied().find(|&z| ok.iter().all(|&w| self.leq(w, z)))
    }

    /// A lattice in which every implication exists and satisfies residuation.
    pub fn brouwerian_witness(&self) -> Option<String> {
        if !self.is_lattice() {
            return Some("no bottom element".into());
        }
        let n = self.len();
        for x in 0..n {
            for y in 0..n {
                let Some(i) = self.implication(x, y) else {
                    return Some(format!("{} => {} undefined", self.label(x), self.label(y)));
                };
                for z in 0..n {
                    let lhs = self.leq(self.meet(z, x).unwrap(), y);
                    if lhs != self.leq(z, i) {
                        return Some(format!("residuation at {} {} {}", self.label(x), self.label(y), self.label(z)));
                    }
                }
            }
        }
        None
    }

    pub fn is_brouwerian(&self) -> bool {
        self.brouwerian_witness().is_none()
    }

    /// The sub-block on the given labels (order inherited), if all exist.
    pub fn restrict(&self, keep: &[&str]) -> Result<Block, DecompError> {
        let idx: Vec<usize> = keep
            .iter()
            .map(|l| self.index_of(l).ok_or_else(|| DecompError::InvalidBlock(format!("unknown label {l}"))))
            .collect::<Result<_, _>>()?;
        let m = idx.len();
        let leq = (0..m * m).map(|c| self.leq(idx[c / m], idx[c % m])).collect();
        Block::new(keep.iter().map(|s| s.to_string()).collect(), leq)
    }
}
