use std::collections::{BTreeSet, HashSet};

use ircl_core::{hom_witness, is_injective, label_map, Elem, FinResLat, Report};

use crate::AmalgError;

/// Two embeddings out of a common subalgebra.
#[derive(Debug, Clone)]
pub struct VFormation {
    pub a: FinResLat,
    pub b: FinResLat,
    pub c: FinResLat,
    pub fb: Vec<Elem>,
    pub fc: Vec<Elem>,
}

fn embedding_witness(src: &FinResLat, dst: &FinResLat, map: &[Elem]) -> Option<String> {
    if map.len() != src.len() || map.iter().any(|&x| x >= dst.len()) {
        return Some("map has the wrong shape".into());
    }
    hom_witness(src, dst, map).or_else(|| (!is_injective(map)).then(|| "not injective".into()))
}

impl VFormation {
    pub fn new(a: FinResLat, b: FinResLat, c: FinResLat, fb: Vec<Elem>, fc: Vec<Elem>) -> Result<Self, AmalgError> {
        if let Some(w) = embedding_witness(&a, &b, &fb) {
            return Err(AmalgError::InvalidVFormation(format!("fB: {w}")));
        }
        if let Some(w) = embedding_witness(&a, &c, &fc) {
            return Err(AmalgError::InvalidVFormation(format!("fC: {w}")));
        }
        Ok(VFormation { a, b, c, fb, fc })
    }

    /// Embeddings matched by labels.
    pub fn by_labels(a: FinResLat, b: FinResLat, c: FinResLat) -> Result<Self, AmalgError> {
        let missing = |x: &str| AmalgError::InvalidVFormation(format!("a label of A is missing from {x}"));
        let fb = label_map(&a, &b).ok_or_else(|| missing("B"))?;
        let fc = label_map(&a, &c).ok_or_else(|| missing("C"))?;
        VFormation::new(a, b, c, fb, fc)
    }

    /// Swaps the roles of B and C.
    pub fn mirrored(&self) -> VFormation {
        VFormation { a: self.a.clone(), b: self.c.clone(), c: self.b.clone(), fb: self.fc.clone(), fc: self.fb.clone() }
    }

    /// A is a literal common subalgebra: the maps are label-preserving and B
    /// and C share no other labels.
    pub fn reduced_witness(&self) -> Option<String> {
        for x in self.a.elems() {
            let l = self.a.label(x);
            if self.b.label(self.fb[x]) != l || self.c.label(self.fc[x]) != l {
                return Some(format!("{l} is not mapped to itself"));
            }
        }
        let al: HashSet<&str> = self.a.labels().iter().map(String::as_str).collect();
        self.b
            .labels()
            .iter()
            .find(|l| !al.contains(l.as_str()) && self.c.index_of(l).is_some())
            .map(|l| format!("{l} occurs in B and C outside A"))
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced_witness().is_none()
    }

    /// An isomorphic V-formation in reduced form: images of A take A's
    /// labels, clashing labels of B and C get primes.
    pub fn reduced(&self) -> VFormation {
        let mut taken: HashSet<String> = self.a.labels().iter().cloned().collect();
        let relabel = |alg: &FinResLat, f: &[Elem], taken: &mut HashSet<String>| -> FinResLat {
            let labels: Vec<String> = alg
                .elems()
                .map(|x| match f.iter().position(|&y| y == x) {
                    Some(p) => self.a.label(p).to_string(),
                    None => {
                        let mut l = alg.label(x).to_string();
                        while taken.contains(&l) {
                            l.push('\'');
                        }
                        taken.insert(l.clone());
                        l
                    }
                })
                .collect();
            alg.relabel(labels).expect("labels are distinct")
        };
        let b = relabel(&self.b, &self.fb, &mut taken);
        let c = relabel(&self.c, &self.fc, &mut taken);
        VFormation { a: self.a.clone(), b, c, fb: self.fb.clone(), fc: self.fc.clone() }
    }
}

/// A candidate amalgam with its maps. `strong` claims that the images meet
/// exactly in the image of A.
#[derive(Debug, Clone)]
pub struct AmalgamCert {
    pub d: FinResLat,
    pub gb: Vec<Elem>,
    pub gc: Vec<Elem>,
    pub strong: bool,
}

impl AmalgamCert {
    /// Whether the images of B and C meet exactly in the image of A.
    pub fn images_meet_in_a(&self, v: &VFormation) -> bool {
        let ib: BTreeSet<Elem> = self.gb.iter().copied().collect();
        let ic: BTreeSet<Elem> = self.gc.iter().copied().collect();
        let ia: BTreeSet<Elem> = v.fb.iter().map(|&x| self.gb[x]).collect();
        ib.intersection(&ic).copied().collect::<BTreeSet<_>>() == ia
    }
}

fn verify(v: &VFormation, cert: &AmalgamCert, one_sided: bool) -> Report {
    let mut rep = Report::new(if one_sided { "1-amalgam" } else { "amalgam" });
    let shape = |m: &[Elem], src: &FinResLat| {
        (m.len() != src.len() || m.iter().any(|&x| x >= cert.d.len())).then(|| "map has the wrong shape".to_string())
    };
    if let Some(w) = shape(&cert.gb, &v.b).or_else(|| shape(&cert.gc, &v.c)) {
        rep.fail("maps well formed", w);
        return rep;
    }
    rep.check("gB homomorphism", hom_witness(&v.b, &cert.d, &cert.gb));
    rep.check("gC homomorphism", hom_witness(&v.c, &cert.d, &cert.gc));
    if !one_sided {
        rep.check("gB injective", (!is_injective(&cert.gb)).then(|| "two elements share an image".into()));
    }
    rep.check("gC injective", (!is_injective(&cert.gc)).then(|| "two elements share an image".into()));
    let square = v.a.elems().find(|&x| cert.gb[v.fb[x]] != cert.gc[v.fc[x]]);
    rep.check("square commutes", square.map(|x| v.a.label(x).to_string()));
    if cert.strong {
        rep.check("strong intersection", (!cert.images_meet_in_a(v)).then(|| "images share an element outside A".into()));
    }
    rep
}

/// All amalgam conditions, plus the intersection condition when the
/// certificate claims to be strong.
pub fn verify_amalgam(v: &VFormation, cert: &AmalgamCert) -> Report {
    verify(v, cert, false)
}

/// As `verify_amalgam`, but gB need only be a homomorphism.
pub fn verify_one_sided(v: &VFormation, cert: &AmalgamCert) -> Report {
    verify(v, cert, true)
}
