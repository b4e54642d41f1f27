use std::collections::HashSet;
use std::fmt;

use thiserror::Error;

/// Index of an element inside a [`FinResLat`].
pub type Elem = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BuildError {
    #[error("empty universe")]
    Empty,
    #[error("duplicate label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown label `{0}`")]
    UnknownLabel(String),
    #[error("element index {0} out of range")]
    OutOfRange(usize),
    #[error("table has {got} cells, expected {expected}")]
    TableShape { expected: usize, got: usize },
    #[error("covers contain a cycle through `{0}`")]
    CyclicCovers(String),
    #[error("order is not transitive at `{0}`, `{1}`, `{2}`")]
    NotTransitive(String, String, String),
    #[error("order is not antisymmetric: `{0}` and `{1}`")]
    NotAntisymmetric(String, String),
    #[error("not a lattice: `{x}` and `{y}` have no {missing}")]
    NotALattice { x: String, y: String, missing: &'static str },
    #[error("unit failure at `{x}`: 1*x = `{left}`, x*1 = `{right}`")]
    UnitFailure { x: String, left: String, right: String },
    #[error("not associative: (`{x}`,`{y}`,`{z}`)")]
    NotAssociative { x: String, y: String, z: String },
    #[error("product not monotone: `{x}` <= `{y}` but `{x}`*`{z}` or `{z}`*`{x}` exceeds the corresponding product with `{y}`")]
    NotMonotone { x: String, y: String, z: String },
    #[error("not residuated: {side} residual at (`{x}`, `{z}`) has no maximum")]
    NotResiduated { side: &'static str, x: String, z: String },
    #[error("supplied {side} residual disagrees with the derived one at (`{x}`, `{z}`)")]
    ResidualMismatch { side: &'static str, x: String, z: String },
}

/// A finite residuated lattice with dense tables.
///
/// Residuals are always derived from the product and the order; a value of this
/// type has passed the full axiom check.
#[derive(Clone)]
pub struct FinResLat {
    n: usize,
    labels: Vec<String>,
    leq: Vec<bool>,
    meet: Vec<Elem>,
    join: Vec<Elem>,
    mult: Vec<Elem>,
    ld: Vec<Elem>,
    rd: Vec<Elem>,
    unit: Elem,
    bot: Elem,
    top: Elem,
}

impl PartialEq for FinResLat {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels
            && self.unit == other.unit
            && self.leq == other.leq
            && self.mult == other.mult
    }
}
impl Eq for FinResLat {}

impl fmt::Debug for FinResLat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinResLat{{")?;
        for x in 0..self.n {
            if x > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.labels[x])?;
        }
        write!(f, "; unit {}}}", self.labels[self.unit])
    }
}

/// Reflexive-transitive closure of a cover relation, rejecting cycles.
pub fn order_from_covers(
    labels: &[String],
    covers: &[(Elem, Elem)],
) -> Result<Vec<bool>, BuildError> {
    let n = labels.len();
    let mut leq = vec![false; n * n];
    for x in 0..n {
        leq[x * n + x] = true;
    }
    for &(a, b) in covers {
        if a >= n {
            return Err(BuildError::OutOfRange(a));
        }
        if b >= n {
            return Err(BuildError::OutOfRange(b));
        }
        if a == b {
            return Err(BuildError::CyclicCovers(labels[a].clone()));
        }
        leq[a * n + b] = true;
    }
    for k in 0..n {
        for i in 0..n {
            if leq[i * n + k] {
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if leq[i * n + j] && leq[j * n + i] {
                return Err(BuildError::CyclicCovers(labels[i].clone()));
            }
        }
    }
    Ok(leq)
}

fn bound_table(n: usize, leq: &[bool], upper: bool) -> Result<Vec<Elem>, (Elem, Elem)> {
    let le = |a: Elem, b: Elem| if upper { leq[a * n + b] } else { leq[b * n + a] };
    let mut out = vec![0; n * n];
    for x in 0..n {
        for y in x..n {
            let mut best = None;
            for z in 0..n {
                if le(x, z) && le(y, z) && (0..n).all(|w| !(le(x, w) && le(y, w)) || le(z, w)) {
                    best = Some(z);
                    break;
                }
            }
            match best {
                Some(z) => {
                    out[x * n + y] = z;
                    out[y * n + x] = z;
                }
                None => return Err((x, y)),
            }
        }
    }
    Ok(out)
}

impl FinResLat {
    /// Validated construction from a full order relation and product table.
    pub fn from_order(
        labels: Vec<String>,
        leq: Vec<bool>,
        mult: Vec<Elem>,
        unit: Elem,
    ) -> Result<Self, BuildError> {
        let n = labels.len();
        if n == 0 {
            return Err(BuildError::Empty);
        }
        let mut seen = HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(BuildError::DuplicateLabel(l.clone()));
            }
        }
        if leq.len() != n * n {
            return Err(BuildError::TableShape { expected: n * n, got: leq.len() });
        }
        if mult.len() != n * n {
            return Err(BuildError::TableShape { expected: n * n, got: mult.len() });
        }
        if unit >= n {
            return Err(BuildError::OutOfRange(unit));
        }
        if let Some(&bad) = mult.iter().find(|&&v| v >= n) {
            return Err(BuildError::OutOfRange(bad));
        }
        let lab = |x: Elem| labels[x].clone();
        for i in 0..n {
            if !leq[i * n + i] {
                return Err(BuildError::NotAntisymmetric(lab(i), lab(i)));
            }
            for j in 0..n {
                if i != j && leq[i * n + j] && leq[j * n + i] {
                    return Err(BuildError::NotAntisymmetric(lab(i), lab(j)));
                }
                if leq[i * n + j] {
                    for k in 0..n {
                        if leq[j * n + k] && !leq[i * n + k] {
                            return Err(BuildError::NotTransitive(lab(i), lab(j), lab(k)));
                        }
                    }
                }
            }
        }
        let join = bound_table(n, &leq, true).map_err(|(x, y)| BuildError::NotALattice {
            x: lab(x),
            y: lab(y),
            missing: "join",
        })?;
        let meet = bound_table(n, &leq, false).map_err(|(x, y)| BuildError::NotALattice {
            x: lab(x),
            y: lab(y),
            missing: "meet",
        })?;
        let top = (0..n).find(|&t| (0..n).all(|x| leq[x * n + t])).expect("finite lattice has a top");
        let bot = (0..n).find(|&b| (0..n).all(|x| leq[b * n + x])).expect("finite lattice has a bottom");

        for x in 0..n {
            let (l, r) = (mult[unit * n + x], mult[x * n + unit]);
            if l != x || r != x {
                return Err(BuildError::UnitFailure { x: lab(x), left: lab(l), right: lab(r) });
            }
        }
        for x in 0..n {
            for y in 0..n {
                let xy = mult[x * n + y];
                for z in 0..n {
                    if mult[xy * n + z] != mult[x * n + mult[y * n + z]] {
                        return Err(BuildError::NotAssociative { x: lab(x), y: lab(y), z: lab(z) });
                    }
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if x == y || !leq[x * n + y] {
                    continue;
                }
                for z in 0..n {
                    if !leq[mult[x * n + z] * n + mult[y * n + z]]
                        || !leq[mult[z * n + x] * n + mult[z * n + y]]
                    {
                        return Err(BuildError::NotMonotone { x: lab(x), y: lab(y), z: lab(z) });
                    }
                }
            }
        }

        // x\z = max{y : xy <= z}, z/y = max{x : xy <= z}
        let mut ld = vec![0; n * n];
        let mut rd = vec![0; n * n];
        for x in 0..n {
            for z in 0..n {
                let cand = (0..n).filter(|&y| leq[mult[x * n + y] * n + z]);
                let mut best: Option<Elem> = None;
                for y in cand {
                    best = Some(match best {
                        None => y,
                        Some(b) => join[b * n + y],
                    });
                }
                match best {
                    Some(b) if leq[mult[x * n + b] * n + z] => ld[x * n + z] = b,
                    _ => {
                        return Err(BuildError::NotResiduated { side: "left", x: lab(x), z: lab(z) })
                    }
                }
                let cand = (0..n).filter(|&w| leq[mult[w * n + x] * n + z]);
                let mut best: Option<Elem> = None;
                for w in cand {
                    best = Some(match best {
                        None => w,
                        Some(b) => join[b * n + w],
                    });
                }
                match best {
                    Some(b) if leq[mult[b * n + x] * n + z] => rd[z * n + x] = b,
                    _ => {
                        return Err(BuildError::NotResiduated { side: "right", x: lab(x), z: lab(z) })
                    }
                }
            }
        }
        // cell-by-cell adjointness
        for x in 0..n {
            for y in 0..n {
                let p = mult[x * n + y];
                for z in 0..n {
                    let a = leq[p * n + z];
                    if a != leq[y * n + ld[x * n + z]] {
                        return Err(BuildError::NotResiduated { side: "left", x: lab(x), z: lab(z) });
                    }
                    if a != leq[x * n + rd[z * n + y]] {
                        return Err(BuildError::NotResiduated { side: "right", x: lab(y), z: lab(z) });
                    }
                }
            }
        }
        Ok(FinResLat { n, labels, leq, meet, join, mult, ld, rd, unit, bot, top })
    }

    /// Construction from covers; the order is their reflexive-transitive closure.
    pub fn from_covers(
        labels: Vec<String>,
        covers: &[(Elem, Elem)],
        mult: Vec<Elem>,
        unit: Elem,
    ) -> Result<Self, BuildError> {
        let leq = order_from_covers(&labels, covers)?;
        Self::from_order(labels, leq, mult, unit)
    }

    /// Construction with caller-supplied residual tables, which must equal the
    /// derived ones.
    pub fn with_residuals(
        labels: Vec<String>,
        leq: Vec<bool>,
        mult: Vec<Elem>,
        unit: Elem,
        ld: &[Elem],
        rd: &[Elem],
    ) -> Result<Self, BuildError> {
        let a = Self::from_order(labels, leq, mult, unit)?;
        let n = a.n;
        for x in 0..n {
            for z in 0..n {
                if ld.get(x * n + z) != Some(&a.ld[x * n + z]) {
                    return Err(BuildError::ResidualMismatch {
                        side: "left",
                        x: a.labels[x].clone(),
                        z: a.labels[z].clone(),
                    });
                }
                if rd.get(z * n + x) != Some(&a.rd[z * n + x]) {
                    return Err(BuildError::ResidualMismatch {
                        side: "right",
                        x: a.labels[x].clone(),
                        z: a.labels[z].clone(),
                    });
                }
            }
        }
        Ok(a)
    }

    /// The one-element algebra.
    pub fn trivial(label: &str) -> Self {
        Self::from_order(vec![label.to_string()], vec![true], vec![0], 0).expect("trivial algebra")
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
    #[inline]
    pub fn unit(&self) -> Elem {
        self.unit
    }
    #[inline]
    pub fn bottom(&self) -> Elem {
        self.bot
    }
    #[inline]
    pub fn top(&self) -> Elem {
        self.top
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn label(&self, x: Elem) -> &str {
        &self.labels[x]
    }
    pub fn index_of(&self, label: &str) -> Option<Elem> {
        self.labels.iter().position(|l| l == label)
    }
    pub fn elems(&self) -> std::ops::Range<Elem> {
        0..self.n
    }
    #[inline]
    pub fn leq(&self, x: Elem, y: Elem) -> bool {
        self.leq[x * self.n + y]
    }
    #[inline]
    pub fn lt(&self, x: Elem, y: Elem) -> bool {
        x != y && self.leq(x, y)
    }
    #[inline]
    pub fn comparable(&self, x: Elem, y: Elem) -> bool {
        self.leq(x, y) || self.leq(y, x)
    }
    #[inline]
    pub fn meet(&self, x: Elem, y: Elem) -> Elem {
        self.meet[x * self.n + y]
    }
    #[inline]
    pub fn join(&self, x: Elem, y: Elem) -> Elem {
        self.join[x * self.n + y]
    }
    #[inline]
    pub fn mult(&self, x: Elem, y: Elem) -> Elem {
        self.mult[x * self.n + y]
    }
    /// Left division `x\z`.
    #[inline]
    pub fn ld(&self, x: Elem, z: Elem) -> Elem {
        self.ld[x * self.n + z]
    }
    /// Right division `z/y`.
    #[inline]
    pub fn rd(&self, z: Elem, y: Elem) -> Elem {
        self.rd[z * self.n + y]
    }
    pub fn order_matrix(&self) -> &[bool] {
        &self.leq
    }
    pub fn mult_table(&self) -> &[Elem] {
        &self.mult
    }

    /// Pairs `(x, y)` with `y` covering `x`, in index order.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for x in 0..self.n {
            for y in 0..self.n {
                if self.lt(x, y) && !(0..self.n).any(|z| self.lt(x, z) && self.lt(z, y)) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    /// Same algebra with new labels.
    pub fn relabel(&self, labels: Vec<String>) -> Result<Self, BuildError> {
        Self::from_order(labels, self.leq.clone(), self.mult.clone(), self.unit)
    }

    /// The algebra transported along a permutation: old element `x` becomes `perm[x]`.
    pub fn permute(&self, perm: &[Elem]) -> Self {
        let n = self.n;
        let mut inv = vec![0; n];
        for (x, &p) in perm.iter().enumerate() {
            inv[p] = x;
        }
        let labels = (0..n).map(|p| self.labels[inv[p]].clone()).collect();
        let mut leq = vec![false; n * n];
        let mut mult = vec![0; n * n];
        for p in 0..n {
            for q in 0..n {
                leq[p * n + q] = self.leq(inv[p], inv[q]);
                mult[p * n + q] = perm[self.mult(inv[p], inv[q])];
            }
        }
        Self::from_order(labels, leq, mult, perm[self.unit]).expect("permutation preserves validity")
    }
}
