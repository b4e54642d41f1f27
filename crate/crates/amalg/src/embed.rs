use ircl_core::{Elem, FinResLat};

type Op = fn(&FinResLat, Elem, Elem) -> Elem;
const OPS: [Op; 5] = [FinResLat::meet, FinResLat::join, FinResLat::mult, FinResLat::ld, FinResLat::rd];

/// Partial map under construction, with forced values propagated.
#[derive(Clone)]
struct State {
    img: Vec<Option<Elem>>,
    used: Vec<bool>,
}

impl State {
    fn set(&mut self, x: Elem, v: Elem, injective: bool) -> bool {
        match self.img[x] {
            Some(w) => w == v,
            None => {
                if injective && self.used[v] {
                    return false;
                }
                self.img[x] = Some(v);
                self.used[v] = true;
                true
            }
        }
    }
}

/// Closes the partial map under all operations; false on a conflict.
fn propagate(src: &FinResLat, dst: &FinResLat, st: &mut State, injective: bool) -> bool {
    loop {
        let assigned: Vec<Elem> = src.elems().filter(|&x| st.img[x].is_some()).collect();
        let mut changed = false;
        for &x in &assigned {
            for &y in &assigned {
                let (gx, gy) = (st.img[x].unwrap(), st.img[y].unwrap());
                for op in OPS {
                    let z = op(src, x, y);
                    let w = op(dst, gx, gy);
                    let fresh = st.img[z].is_none();
                    if !st.set(z, w, injective) {
                        return false;
                    }
                    changed |= fresh;
                }
            }
        }
        if !changed {
            return true;
        }
    }
}

fn search(
    src: &FinResLat,
    dst: &FinResLat,
    st: State,
    injective: bool,
    f: &mut dyn FnMut(&[Elem]) -> bool,
) -> bool {
    let Some(x) = src.elems().find(|&x| st.img[x].is_none()) else {
        let map: Vec<Elem> = st.img.iter().map(|v| v.unwrap()).collect();
        return f(&map);
    };
    for v in dst.elems() {
        if injective && st.used[v] {
            continue;
        }
        let mut next = st.clone();
        next.set(x, v, injective);
        if propagate(src, dst, &mut next, injective) && !search(src, dst, next, injective, f) {
            return false;
        }
    }
    true
}

/// Calls `f` on every homomorphism (embedding if `injective`) extending
/// `pre`, in lexicographic order of images; `f` returns false to stop.
pub(crate) fn for_each_hom(
    src: &FinResLat,
    dst: &FinResLat,
    pre: &[Option<Elem>],
    injective: bool,
    f: &mut dyn FnMut(&[Elem]) -> bool,
) {
    let mut st = State { img: vec![None; src.len()], used: vec![false; dst.len()] };
    if !st.set(src.unit(), dst.unit(), injective) {
        return;
    }
    for (x, p) in pre.iter().enumerate() {
        if let Some(v) = *p {
            if !st.set(x, v, injective) {
                return;
            }
        }
    }
    if propagate(src, dst, &mut st, injective) {
        search(src, dst, st, injective, f);
    }
}

/// Every embedding extending the partial map `pre` (empty for none), in
/// lexicographic order.
pub fn embeddings(src: &FinResLat, dst: &FinResLat, pre: &[Option<Elem>]) -> Vec<Vec<Elem>> {
    let mut out = Vec::new();
    for_each_hom(src, dst, pre, true, &mut |m| {
        out.push(m.to_vec());
        true
    });
    out
}

pub(crate) fn first_embedding(src: &FinResLat, dst: &FinResLat, pre: &[Option<Elem>]) -> Option<Vec<Elem>> {
    let mut out = None;
    for_each_hom(src, dst, pre, true, &mut |m| {
        out = Some(m.to_vec());
        false
    });
    out
}
