use ircl_core::{Elem, FinResLat, Report};

use crate::ChainError;

/// The `{∧, ∨, ℓ, r, 1}`-reduct of an idempotent residuated chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdGaloisConn {
    pub labels: Vec<String>,
    /// `leq[x * n + y]`
    pub leq: Vec<bool>,
    pub ell: Vec<Elem>,
    pub r: Vec<Elem>,
    pub unit: Elem,
}

impl IdGaloisConn {
    pub fn len(&self) -> usize {
        self.labels.len()
    }
    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }
    fn le(&self, x: Elem, y: Elem) -> bool {
        self.leq[x * self.len() + y]
    }

    /// The chain `0 < 1 < ... < n-1` with the given inverse maps.
    pub fn on_chain(labels: Vec<String>, ell: Vec<Elem>, r: Vec<Elem>, unit: Elem) -> Self {
        let n = labels.len();
        let leq = (0..n * n).map(|c| c / n <= c % n).collect();
        IdGaloisConn { labels, leq, ell, r, unit }
    }

    fn bound(&self, x: Elem, y: Elem, upper: bool) -> Option<Elem> {
        let n = self.len();
        let le = |a, b| if upper { self.le(a, b) } else { self.le(b, a) };
        (0..n).find(|&z| le(x, z) && le(y, z) && (0..n).all(|w| !(le(x, w) && le(y, w)) || le(z, w)))
    }
}

/// Checks the five defining conditions, each with a witness on failure.
pub fn verify_igc(g: &IdGaloisConn) -> Report {
    let n = g.len();
    let mut rep = Report::new("idempotent Galois connection");
    let lab = |x: Elem| g.labels[x].as_str();
    if g.leq.len() != n * n || g.ell.len() != n || g.r.len() != n || g.unit >= n
        || g.ell.iter().chain(g.r.iter()).any(|&v| v >= n)
    {
        rep.fail("shape", "table sizes or indices out of range");
        return rep;
    }

    // 1. lattice
    let mut w = None;
    'order: for x in 0..n {
        if !g.le(x, x) {
            w = Some(format!("{} not <= itself", lab(x)));
            break;
        }
        for y in 0..n {
            if x != y && g.le(x, y) && g.le(y, x) {
                w = Some(format!("{} {} antisymmetry", lab(x), lab(y)));
                break 'order;
            }
            for z in 0..n {
                if g.le(x, y) && g.le(y, z) && !g.le(x, z) {
                    w = Some(format!("{} {} {} transitivity", lab(x), lab(y), lab(z)));
                    break 'order;
                }
            }
            if g.bound(x, y, true).is_none() || g.bound(x, y, false).is_none() {
                w = Some(format!("{} {} lack a bound", lab(x), lab(y)));
                break 'order;
            }
        }
    }
    let lattice_ok = w.is_none();
    rep.check("1 lattice", w);
    if !lattice_ok {
        return rep;
    }
    let join = |x, y| g.bound(x, y, true).unwrap();
    let meet = |x, y| g.bound(x, y, false).unwrap();
    let (l, r) = (&g.ell, &g.r);

    // 2. unit fixed
    rep.check(
        "2 unit self-inverse",
        (l[g.unit] != g.unit || r[g.unit] != g.unit).then(|| "1^l or 1^r differs from 1".to_string()),
    );

    // 3. Galois connection
    let mut w = None;
    'gal: for x in 0..n {
        if !g.le(x, r[l[x]]) || !g.le(x, l[r[x]]) {
            w = Some(format!("{} not below its double inverse", lab(x)));
            break;
        }
        if l[r[l[x]]] != l[x] || r[l[r[x]]] != r[x] {
            w = Some(format!("{} triple inverse", lab(x)));
            break;
        }
        for y in 0..n {
            let j = join(x, y);
            if l[j] != meet(l[x], l[y]) || r[j] != meet(r[x], r[y]) {
                w = Some(format!("{} {} join not sent to meet", lab(x), lab(y)));
                break 'gal;
            }
        }
    }
    rep.check("3 Galois connection", w);

    // 4. total order
    let mut w = None;
    'tot: for x in 0..n {
        for y in 0..n {
            if !g.le(x, y) && !g.le(y, x) {
                w = Some(format!("{} {}", lab(x), lab(y)));
                break 'tot;
            }
        }
    }
    rep.check("4 total order", w);

    // 5. nothing strictly between x^r and x^l
    let mut w = None;
    'split: for x in 0..n {
        let (lo, hi) = (meet(l[x], r[x]), join(l[x], r[x]));
        for y in 0..n {
            if !g.le(y, lo) && !g.le(hi, y) {
                w = Some(format!("{} lies between the inverses of {}", lab(y), lab(x)));
                break 'split;
            }
        }
    }
    rep.check("5 splitting pair", w);
    rep
}

/// The residuated chain determined by an idempotent Galois connection.
pub fn residuated_from_igc(g: &IdGaloisConn) -> Result<FinResLat, ChainError> {
    let rep = verify_igc(g);
    if let Some(c) = rep.first_failure() {
        return Err(ChainError::InvalidIgc(format!("{}: {}", c.name, c.witness.clone().unwrap_or_default())));
    }
    let n = g.len();
    let (l, r) = (&g.ell, &g.r);
    let le = |x: Elem, y: Elem| g.le(x, y);
    let meet = |x: Elem, y: Elem| if le(x, y) { x } else { y };
    let join = |x: Elem, y: Elem| if le(x, y) { y } else { x };
    let mut mult = vec![0; n * n];
    let mut ld = vec![0; n * n];
    let mut rd = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            mult[x * n + y] = if le(x, l[y]) { meet(x, y) } else { join(x, y) };
            ld[x * n + y] = if le(x, y) { join(r[x], y) } else { meet(r[x], y) };
            rd[y * n + x] = if le(x, y) { join(l[x], y) } else { meet(l[x], y) };
        }
    }
    FinResLat::with_residuals(g.labels.clone(), g.leq.clone(), mult, g.unit, &ld, &rd)
        .map_err(|e| ChainError::Internal(format!("residuated_from_igc produced an invalid algebra: {e}")))
}

/// The forgetful map to the Galois connection reduct.
pub fn igc_reduct(a: &FinResLat) -> Result<IdGaloisConn, ChainError> {
    if let Some(w) = a.chain_witness() {
        return Err(ChainError::NotAChain(w));
    }
    if let Some(w) = a.idempotent_witness() {
        return Err(ChainError::NotIdempotent(w));
    }
    Ok(IdGaloisConn {
        labels: a.labels().to_vec(),
        leq: a.order_matrix().to_vec(),
        ell: a.elems().map(|x| a.inv_ell(x)).collect(),
        r: a.elems().map(|x| a.inv_r(x)).collect(),
        unit: a.unit(),
    })
}
