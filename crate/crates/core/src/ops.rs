use std::collections::BTreeMap;

use thiserror::Error;

use crate::algebra::{Elem, FinResLat};
use crate::report::Report;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoreError {
    #[error("algebra is not conic: `{0}` is incomparable with the unit")]
    NotConic(String),
    #[error("algebra is not idempotent at `{0}`")]
    NotIdempotent(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Positive,
    Negative,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedElement {
    pub elem: Elem,
    pub sign: Option<Sign>,
    pub central: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BlockKind {
    Trivial,
    Brouwerian,
    Lattice,
    ProperPrelattice,
}

impl FinResLat {
    /// `x^ℓ = 1/x`.
    #[inline]
    pub fn inv_ell(&self, x: Elem) -> Elem {
        self.rd(self.unit(), x)
    }

    /// `x^r = x\1`.
    #[inline]
    pub fn inv_r(&self, x: Elem) -> Elem {
        self.ld(x, self.unit())
    }

    pub fn is_conic_idempotent(&self) -> bool {
        self.elems().all(|x| self.comparable(x, self.unit()) && self.mult(x, x) == x)
    }

    fn require_conic_idempotent(&self) -> Result<(), CoreError> {
        for x in self.elems() {
            if !self.comparable(x, self.unit()) {
                return Err(CoreError::NotConic(self.label(x).to_string()));
            }
            if self.mult(x, x) != x {
                return Err(CoreError::NotIdempotent(self.label(x).to_string()));
            }
        }
        Ok(())
    }

    #[inline]
    pub fn star_low_unchecked(&self, x: Elem) -> Elem {
        self.meet(self.inv_ell(x), self.inv_r(x))
    }
    #[inline]
    pub fn star_high_unchecked(&self, x: Elem) -> Elem {
        self.join(self.inv_ell(x), self.inv_r(x))
    }
    #[inline]
    pub fn partner_unchecked(&self, x: Elem) -> Elem {
        if self.inv_ell(x) == self.inv_r(x) {
            x
        } else {
            self.star_high_unchecked(x)
        }
    }

    /// `x^⋆ = x^ℓ ∧ x^r`.
    pub fn star_low(&self, x: Elem) -> Result<Elem, CoreError> {
        self.require_conic_idempotent()?;
        Ok(self.star_low_unchecked(x))
    }
    /// `x^* = x^ℓ ∨ x^r`.
    pub fn star_high(&self, x: Elem) -> Result<Elem, CoreError> {
        self.require_conic_idempotent()?;
        Ok(self.star_high_unchecked(x))
    }
    /// Same-layer partner: `x` itself when central, `x^*` otherwise.
    pub fn partner(&self, x: Elem) -> Result<Elem, CoreError> {
        self.require_conic_idempotent()?;
        Ok(self.partner_unchecked(x))
    }

    /// `γ(x) = x^{ℓr} ∧ x^{rℓ}`.
    #[inline]
    pub fn gamma(&self, x: Elem) -> Elem {
        let lr = self.inv_r(self.inv_ell(x));
        let rl = self.inv_ell(self.inv_r(x));
        self.meet(lr, rl)
    }

    pub fn is_central(&self, x: Elem) -> bool {
        self.elems().all(|y| self.mult(x, y) == self.mult(y, x))
    }

    pub fn sign(&self, x: Elem) -> Option<Sign> {
        let u = self.unit();
        match (self.leq(x, u), self.leq(u, x)) {
            (true, true) => Some(Sign::Both),
            (true, false) => Some(Sign::Negative),
            (false, true) => Some(Sign::Positive),
            (false, false) => None,
        }
    }

    pub fn signed(&self, x: Elem) -> SignedElement {
        SignedElement { elem: x, sign: self.sign(x), central: self.is_central(x) }
    }

    /// Conjugates `(λ_x(a), ρ_x(a)) = (x\(ax) ∧ 1, (xa)/x ∧ 1)`.
    pub fn conjugates(&self, x: Elem, a: Elem) -> (Elem, Elem) {
        let u = self.unit();
        let lam = self.meet(self.ld(x, self.mult(a, x)), u);
        let rho = self.meet(self.rd(self.mult(x, a), x), u);
        (lam, rho)
    }

    /// The set of inverse elements `{x^ℓ} ∪ {x^r}`, ascending by index.
    pub fn inverses(&self) -> Vec<Elem> {
        let mut seen = vec![false; self.len()];
        for x in self.elems() {
            seen[self.inv_ell(x)] = true;
            seen[self.inv_r(x)] = true;
        }
        self.elems().filter(|&x| seen[x]).collect()
    }

    /// γ is a closure operator with `γ(x)γ(y) ≤ γ(xy)` and image equal to the inverses.
    pub fn verify_nucleus(&self) -> Report {
        let mut rep = Report::new("nucleus");
        let l = |x: Elem| self.label(x).to_string();
        let mut w = None;
        'a: for x in self.elems() {
            if !self.leq(x, self.gamma(x)) || self.gamma(self.gamma(x)) != self.gamma(x) {
                w = Some(l(x).to_string());
                break;
            }
            for y in self.elems() {
                if self.leq(x, y) && !self.leq(self.gamma(x), self.gamma(y)) {
                    w = Some(format!("{} {}", l(x), l(y)));
                    break 'a;
                }
            }
        }
        rep.check("closure operator", w);
        let mut w = None;
        'b: for x in self.elems() {
            for y in self.elems() {
                let lhs = self.mult(self.gamma(x), self.gamma(y));
                if !self.leq(lhs, self.gamma(self.mult(x, y))) {
                    w = Some(format!("{} {}", l(x), l(y)));
                    break 'b;
                }
            }
        }
        rep.check("gamma(x)gamma(y) <= gamma(xy)", w);
        let mut image: Vec<Elem> = self.elems().map(|x| self.gamma(x)).collect();
        image.sort_unstable();
        image.dedup();
        let inv = self.inverses();
        rep.check(
            "image equals inverses",
            (image != inv).then(|| format!("image {:?} inverses {:?}", image, inv)),
        );
        rep
    }

    pub fn is_quasi_involutive(&self) -> bool {
        self.is_conic_idempotent() && self.elems().all(|x| self.gamma(x) == x)
    }

    /// The subalgebra of inverse elements, with the inclusion map into `self`.
    pub fn skeleton(&self) -> Result<(FinResLat, Vec<Elem>), CoreError> {
        self.require_conic_idempotent()?;
        let inv = self.inverses();
        Ok(self.subalgebra(&inv).expect("inverse elements form a subalgebra"))
    }

    /// γ-fibers keyed by skeleton element; members ascending by index.
    pub fn blocks(&self) -> BTreeMap<Elem, Vec<Elem>> {
        let mut out: BTreeMap<Elem, Vec<Elem>> = BTreeMap::new();
        for x in self.elems() {
            out.entry(self.gamma(x)).or_default().push(x);
        }
        out
    }

    pub fn block_kind(&self, s: Elem) -> BlockKind {
        let block: Vec<Elem> = self.elems().filter(|&x| self.gamma(x) == s).collect();
        if block.len() <= 1 {
            return BlockKind::Trivial;
        }
        let has_bottom = block.iter().any(|&b| block.iter().all(|&x| self.leq(b, x)));
        if !has_bottom {
            BlockKind::ProperPrelattice
        } else if self.leq(s, self.unit()) {
            BlockKind::Brouwerian
        } else {
            BlockKind::Lattice
        }
    }

    /// Pairs inside one block whose meet leaves the block, if any.
    pub fn block_meet_witness(&self, s: Elem) -> Option<(Elem, Elem)> {
        let block: Vec<Elem> = self.elems().filter(|&x| self.gamma(x) == s).collect();
        for (i, &x) in block.iter().enumerate() {
            for &y in &block[i + 1..] {
                if self.gamma(self.meet(x, y)) != s {
                    return Some((x, y));
                }
            }
        }
        None
    }
}
