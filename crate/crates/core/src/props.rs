use crate::algebra::{Elem, FinResLat};
use crate::report::Report;

/// Boolean property flags; always recomputed from the algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct PropertyFlags {
    pub idempotent: bool,
    pub commutative: bool,
    pub integral: bool,
    pub conic: bool,
    pub chain: bool,
    pub distributive: bool,
    pub quasi_involutive: bool,
    pub star_involutive: bool,
    pub rigid: bool,
    pub conjunctive: bool,
    pub semiconic: bool,
}

impl PropertyFlags {
    /// All flags; `semiconic` is decided by the supplied predicate since it
    /// needs the congruence lattice.
    pub fn compute(a: &FinResLat, semiconic: impl Fn(&FinResLat) -> bool) -> Self {
        PropertyFlags {
            idempotent: a.is_idempotent(),
            commutative: a.is_commutative(),
            integral: a.is_integral(),
            conic: a.is_conic(),
            chain: a.is_chain(),
            distributive: a.is_distributive(),
            quasi_involutive: a.is_quasi_involutive(),
            star_involutive: a.is_star_involutive(),
            rigid: a.is_rigid(),
            conjunctive: a.is_conjunctive(),
            semiconic: semiconic(a),
        }
    }

    pub fn as_pairs(&self) -> [(&'static str, bool); 11] {
        [
            ("idempotent", self.idempotent),
            ("commutative", self.commutative),
            ("integral", self.integral),
            ("conic", self.conic),
            ("chain", self.chain),
            ("distributive", self.distributive),
            ("quasi_involutive", self.quasi_involutive),
            ("star_involutive", self.star_involutive),
            ("rigid", self.rigid),
            ("conjunctive", self.conjunctive),
            ("semiconic", self.semiconic),
        ]
    }
}

impl FinResLat {
    fn l(&self, xs: &[Elem]) -> String {
        xs.iter().map(|&x| self.label(x)).collect::<Vec<_>>().join(" ")
    }

    fn first_failing(&self, f: impl Fn(Elem) -> bool) -> Option<String> {
        self.elems().find(|&x| !f(x)).map(|x| self.l(&[x]))
    }

    fn first_failing_pair(&self, f: impl Fn(Elem, Elem) -> bool) -> Option<String> {
        for x in self.elems() {
            for y in self.elems() {
                if !f(x, y) {
                    return Some(self.l(&[x, y]));
                }
            }
        }
        None
    }

    fn conic_idempotent_witness(&self) -> Option<String> {
        self.idempotent_witness()
            .map(|w| format!("not idempotent at {w}"))
            .or_else(|| self.conic_witness().map(|w| format!("not conic at {w}")))
    }

    pub fn idempotent_witness(&self) -> Option<String> {
        self.first_failing(|x| self.mult(x, x) == x)
    }
    pub fn commutative_witness(&self) -> Option<String> {
        self.first_failing_pair(|x, y| self.mult(x, y) == self.mult(y, x))
    }
    pub fn integral_witness(&self) -> Option<String> {
        (self.top() != self.unit()).then(|| format!("top is {}", self.label(self.top())))
    }
    pub fn conic_witness(&self) -> Option<String> {
        self.first_failing(|x| self.comparable(x, self.unit()))
    }
    pub fn chain_witness(&self) -> Option<String> {
        self.first_failing_pair(|x, y| self.comparable(x, y))
    }
    pub fn distributive_witness(&self) -> Option<String> {
        for x in self.elems() {
            for y in self.elems() {
                for z in self.elems() {
                    if self.meet(x, self.join(y, z)) != self.join(self.meet(x, y), self.meet(x, z)) {
                        return Some(self.l(&[x, y, z]));
                    }
                }
            }
        }
        None
    }
    pub fn quasi_involutive_witness(&self) -> Option<String> {
        self.conic_idempotent_witness()
            .or_else(|| self.first_failing(|x| self.gamma(x) == x))
    }
    pub fn star_involutive_witness(&self) -> Option<String> {
        self.conic_idempotent_witness().or_else(|| {
            self.first_failing(|x| self.star_low_unchecked(self.star_low_unchecked(x)) == x)
        })
    }
    pub fn rigid_witness(&self) -> Option<String> {
        self.conic_idempotent_witness().or_else(|| {
            let ss = |x: Elem| self.star_low_unchecked(self.star_low_unchecked(x));
            self.first_failing(|x| {
                let (r, l) = (self.inv_r(x), self.inv_ell(x));
                ss(r) == r && ss(l) == l
            })
        })
    }
    pub fn conjunctive_witness(&self) -> Option<String> {
        self.conic_idempotent_witness().or_else(|| {
            self.first_failing_pair(|x, y| {
                self.gamma(self.meet(x, y)) == self.meet(self.gamma(x), self.gamma(y))
            })
        })
    }

    pub fn is_idempotent(&self) -> bool {
        self.idempotent_witness().is_none()
    }
    pub fn is_commutative(&self) -> bool {
        self.commutative_witness().is_none()
    }
    pub fn is_integral(&self) -> bool {
        self.integral_witness().is_none()
    }
    pub fn is_conic(&self) -> bool {
        self.conic_witness().is_none()
    }
    pub fn is_chain(&self) -> bool {
        self.chain_witness().is_none()
    }
    pub fn is_distributive(&self) -> bool {
        self.distributive_witness().is_none()
    }
    pub fn is_star_involutive(&self) -> bool {
        self.star_involutive_witness().is_none()
    }
    pub fn is_rigid(&self) -> bool {
        self.rigid_witness().is_none()
    }
    pub fn is_conjunctive(&self) -> bool {
        self.conjunctive_witness().is_none()
    }

    /// Conjunctivity decided by block shape: every block is closed under meet.
    pub fn blocks_are_lattices(&self) -> bool {
        self.is_conic_idempotent()
            && self.inverses().into_iter().all(|s| self.block_meet_witness(s).is_none())
    }

    /// Both routes to conjunctivity, which must agree on conic idempotent input.
    pub fn conjunctive_cross_check(&self) -> Report {
        let mut rep = Report::new("conjunctive");
        let a = self.is_conjunctive();
        let b = self.blocks_are_lattices();
        rep.check(
            "identity agrees with block shape",
            (a != b).then(|| format!("identity {a}, blocks {b}")),
        );
        rep
    }

    /// Every predicate with its witness (`None` when it holds).
    pub fn predicate_witnesses(&self) -> Vec<(&'static str, Option<String>)> {
        vec![
            ("idempotent", self.idempotent_witness()),
            ("commutative", self.commutative_witness()),
            ("integral", self.integral_witness()),
            ("conic", self.conic_witness()),
            ("chain", self.chain_witness()),
            ("distributive", self.distributive_witness()),
            ("quasi_involutive", self.quasi_involutive_witness()),
            ("star_involutive", self.star_involutive_witness()),
            ("rigid", self.rigid_witness()),
            ("conjunctive", self.conjunctive_witness()),
        ]
    }
}
