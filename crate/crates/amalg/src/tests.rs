use std::collections::BTreeSet;

use ircl_core::{is_embedding, Elem, FinResLat};
use ircl_decomp::{build_algebra, extract_system, Block, DecompSystem};
use ircl_enumerate::{chain_from_word, enumerate_chains, enumerate_conic, is_isomorphic, sugihara, triple};
use proptest::prelude::*;

use crate::blocks::{block_amalgam, sub_block_witness, BlockAmalgKind};
use crate::embed::embeddings;
use crate::*;

fn relabel(x: &FinResLat, f: impl Fn(&str) -> String) -> FinResLat {
    x.relabel(x.labels().iter().map(|l| f(l)).collect()).unwrap()
}

fn perms(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in perms(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Every injective map, tested one by one.
fn brute_embeddings(src: &FinResLat, dst: &FinResLat) -> BTreeSet<Vec<Elem>> {
    let (m, n) = (src.len(), dst.len());
    let mut out = BTreeSet::new();
    if m > n {
        return out;
    }
    for p in perms(n) {
        let map: Vec<Elem> = p[..m].to_vec();
        if is_embedding(src, dst, &map) {
            out.insert(map);
        }
    }
    out
}

fn chains_upto(n: usize) -> Vec<FinResLat> {
    (1..=n).flat_map(enumerate_chains).collect()
}

#[test]
fn embedding_engine_matches_brute_force() {
    let pool = chains_upto(5);
    for s in pool.iter().filter(|s| s.len() <= 4) {
        for d in &pool {
            let fast: BTreeSet<Vec<Elem>> = embeddings(s, d, &[]).into_iter().collect();
            assert_eq!(fast, brute_embeddings(s, d), "{:?} into {:?}", s.labels(), d.labels());
        }
    }
}

/// Every V-formation `A <= B`, `A -> C` over the pool, reduced.
fn vformations(pool: &[FinResLat]) -> Vec<VFormation> {
    let mut out = Vec::new();
    for b in pool {
        for sub in b.subuniverses() {
            let (a, incl) = b.subalgebra(&sub).unwrap();
            for c in pool {
                for fc in embeddings(&a, c, &[]) {
                    let v = VFormation::new(a.clone(), b.clone(), c.clone(), incl.clone(), fc).unwrap();
                    out.push(v.reduced());
                }
            }
        }
    }
    out
}

#[test]
fn degenerate_formation_gives_b() {
    let b = sugihara(5).unwrap();
    let (a, incl) = b.subalgebra(&[0, 1, b.unit()]).unwrap();
    let v = VFormation::new(a.clone(), b.clone(), a.clone(), incl.clone(), a.elems().collect()).unwrap();
    let cert = AmalgamCert { d: b.clone(), gb: b.elems().collect(), gc: incl, strong: true };
    assert!(verify_amalgam(&v, &cert).passed());
    let built = amalgamate_star_inv_chains(&v.reduced()).unwrap();
    assert!(is_isomorphic(&built.d, &b));
}

#[test]
fn two_sugihara5_over_sugihara3_give_sugihara7() {
    let b = sugihara(5).unwrap();
    let c = relabel(&b, |l| if l != "1" && l.ends_with('1') { format!("{l}'") } else { l.to_string() });
    let set: Vec<Elem> = ["b2", "a2", "1"].iter().map(|l| b.index_of(l).unwrap()).collect();
    let a = b.subalgebra(&set).unwrap().0;
    let v = VFormation::by_labels(a, b, c).unwrap();
    assert!(v.is_reduced());
    let cert = amalgamate_star_inv_chains(&v).unwrap();
    assert!(cert.strong && verify_amalgam(&v, &cert).passed());
    assert!(is_isomorphic(&cert.d, &sugihara(7).unwrap()));
}

#[test]
fn one_crown_algebras_sharing_the_unit() {
    let b = ircl_enumerate::noncomm_sugihara(1, &BTreeSet::from([1])).unwrap();
    let c = relabel(&ircl_enumerate::noncomm_sugihara(2, &BTreeSet::new()).unwrap(), |l| {
        if l == "1" { l.to_string() } else { format!("{l}'") }
    });
    let v = VFormation::by_labels(FinResLat::trivial("1"), b.clone(), c.clone()).unwrap();
    let cert = amalgamate_star_inv_chains(&v).unwrap();
    assert_eq!(cert.d.len(), b.len() + c.len() - 1);
    assert!(verify_amalgam(&v, &cert).passed());
}

#[test]
fn star_involutive_construction_over_small_pool() {
    let pool: Vec<FinResLat> = chains_upto(5).into_iter().filter(|c| c.is_star_involutive()).collect();
    let vs = vformations(&pool);
    assert!(vs.len() > 30);
    for v in &vs {
        let cert = amalgamate_star_inv_chains(v).unwrap();
        assert!(cert.strong && cert.images_meet_in_a(v));
        assert!(verify_amalgam(v, &cert).passed());
        assert_eq!(cert.d.len(), v.b.len() + v.c.len() - v.a.len());
        assert!(cert.d.is_star_involutive());
        let mirror = amalgamate_star_inv_chains_with(&v.mirrored(), MergeOrder::CFirst).unwrap();
        assert!(is_isomorphic(&mirror.d, &cert.d));
    }
}

#[test]
fn construction_rejects_bad_input() {
    let t = triple("fig_APfails").unwrap();
    let v = VFormation::by_labels(t.a, t.b, t.c).unwrap();
    assert!(matches!(amalgamate_star_inv_chains(&v), Err(AmalgError::NotStarInvolutive(_))));
    let b = sugihara(3).unwrap();
    let v = VFormation::by_labels(FinResLat::trivial("1"), b.clone(), b).unwrap();
    assert!(matches!(amalgamate_star_inv_chains(&v), Err(AmalgError::NotReduced(_))));
}

fn v_block(top: &str, atoms: &[&str]) -> Block {
    let mut labels: Vec<String> = atoms.iter().map(|s| s.to_string()).collect();
    labels.push(top.into());
    let covers: Vec<(usize, usize)> = (0..atoms.len()).map(|i| (i, atoms.len())).collect();
    Block::from_covers(labels, &covers).unwrap()
}

#[test]
fn block_amalgam_examples() {
    let t = Block::trivial("t");
    let x = Block::chain(&["x", "t"]);
    let y = Block::chain(&["y", "t"]);
    let same = block_amalgam(BlockAmalgKind::Lattice, &x, &t, &t, 5).unwrap();
    assert_eq!(same.block, x);
    for kind in [BlockAmalgKind::Lattice, BlockAmalgKind::Brouwerian] {
        let am = block_amalgam(kind, &x, &y, &t, 5).unwrap();
        assert_eq!(am.block.len(), 3);
        let br = kind == BlockAmalgKind::Brouwerian;
        assert!(sub_block_witness(&x, &am.block, &am.map_b, br).is_none());
        assert!(sub_block_witness(&y, &am.block, &am.map_c, br).is_none());
    }
    // a square and a 2-chain over the top: the pushout lacks meets
    let p = Block::from_covers(vec!["p0".into(), "p1".into(), "p2".into(), "t".into()], &[(0, 1), (0, 2), (1, 3), (2, 3)]).unwrap();
    let am = block_amalgam(BlockAmalgKind::Lattice, &p, &y, &t, 8).unwrap();
    assert!(am.block.is_lattice() && am.block.len() == 5);
    assert!(matches!(block_amalgam(BlockAmalgKind::Lattice, &p, &y, &t, 4), Err(AmalgError::BlockAmalgamBoundExceeded(4))));
}

/// Strong lattice amalgams of small lattices: the search result is
/// minimal, checked against every lattice of smaller size by brute force.
#[test]
fn block_amalgam_is_minimal() {
    let t = Block::trivial("t");
    let cases = [(Block::chain(&["x1", "x2", "t"]), Block::chain(&["y", "t"])), (v_block("t", &["p1", "p2"]), Block::chain(&["y", "t"]))];
    for (x, y) in cases {
        let x = Block::new(x.labels().to_vec(), (0..x.len() * x.len()).map(|c| x.leq(c / x.len(), c % x.len())).collect()).unwrap();
        let x = if x.is_lattice() { x } else { continue };
        let am = block_amalgam(BlockAmalgKind::Lattice, &x, &y, &t, 9).unwrap();
        for m in x.len() + y.len() - 1..am.block.len() {
            for s in ircl_enumerate::lattices(m) {
                let s = Block::new((0..m).map(|i| i.to_string()).collect(), s.leq.clone()).unwrap();
                let fits = (0..s.len().pow(x.len() as u32)).any(|code| {
                    let mx: Vec<usize> = (0..x.len()).map(|i| code / s.len().pow(i as u32) % s.len()).collect();
                    sub_block_witness(&x, &s, &mx, false).is_none()
                        && (0..s.len().pow(y.len() as u32)).any(|c2| {
                            let my: Vec<usize> = (0..y.len()).map(|i| c2 / s.len().pow(i as u32) % s.len()).collect();
                            sub_block_witness(&y, &s, &my, false).is_none()
                                && my.iter().enumerate().all(|(j, v)| j == y.top() || !mx.contains(v))
                        })
                });
                assert!(!fits, "smaller amalgam of size {m} exists");
            }
        }
    }
}

fn conic_with_unit_block(atom: &str) -> FinResLat {
    let s = chain_from_word("-+", Some(&["b", "a"])).unwrap();
    let blocks = s
        .elems()
        .map(|t| if t == s.unit() { Block::chain(&[atom, "1"]) } else { Block::trivial(s.label(t)) })
        .collect();
    build_algebra(&DecompSystem::new(s, blocks).unwrap()).unwrap()
}

#[test]
fn brouwerian_blocks_under_one_amalgamate_to_three_elements() {
    let b = conic_with_unit_block("x");
    let c = conic_with_unit_block("y");
    let a = sugihara(3).unwrap();
    let a = relabel(&a, |l| match l {
        "b1" => "b".into(),
        "a1" => "a".into(),
        _ => l.into(),
    });
    let v = VFormation::by_labels(a, b, c).unwrap();
    let cert = amalgamate_rigid_conjunctive_conic(&v, 12).unwrap();
    let sys = extract_system(&cert.d).unwrap();
    let u = sys.skeleton().unit();
    assert_eq!(sys.block(u).len(), 3);
    assert!(cert.d.is_commutative());
}

fn rigid_conjunctive_upto(n: usize) -> Vec<FinResLat> {
    (1..=n).flat_map(enumerate_conic).filter(|a| a.is_rigid() && a.is_conjunctive()).collect()
}

#[test]
fn rigid_conjunctive_construction_over_small_pool() {
    let pool = rigid_conjunctive_upto(5);
    let vs = vformations(&pool);
    assert!(vs.len() > 50);
    for v in &vs {
        let cert = amalgamate_rigid_conjunctive_conic(v, 12).unwrap();
        assert!(verify_amalgam(v, &cert).passed() && cert.strong);
        assert!(cert.d.is_rigid() && cert.d.is_conjunctive());
        if v.b.is_commutative() && v.c.is_commutative() {
            assert!(cert.d.is_commutative());
        }
    }
}

#[test]
fn all_singleton_blocks_reduce_to_chains() {
    let pool: Vec<FinResLat> = chains_upto(5).into_iter().filter(|c| c.is_star_involutive()).collect();
    for v in vformations(&pool).iter().take(200) {
        let x = amalgamate_rigid_conjunctive_conic(v, 12).unwrap();
        let y = amalgamate_star_inv_chains(v).unwrap();
        assert!(is_isomorphic(&x.d, &y.d));
    }
}

/// Amalgam existence by trying every map pair into every chain.
fn brute_chain_amalgam(v: &VFormation, bound: usize) -> Option<usize> {
    for d in chains_upto(bound) {
        let bs = brute_embeddings(&v.b, &d);
        let cs = brute_embeddings(&v.c, &d);
        if bs.iter().any(|gb| cs.iter().any(|gc| v.a.elems().all(|x| gb[v.fb[x]] == gc[v.fc[x]]))) {
            return Some(d.len());
        }
    }
    None
}

#[test]
fn chain_search_matches_brute_force() {
    let pool = chains_upto(4);
    let vs = vformations(&pool);
    for v in vs.iter().step_by(7) {
        let out = search_amalgam(v, AmalgClass::Chains, 6, false);
        let brute = brute_chain_amalgam(v, 6);
        assert_eq!(out.cert.as_ref().map(|c| c.d.len()), brute, "{:?} {:?}", v.b.labels(), v.c.labels());
        if let Some(c) = out.cert {
            assert!(verify_amalgam(v, &c).passed());
        }
    }
}

#[test]
fn conic_search_finds_minimal_amalgams() {
    let pool = rigid_conjunctive_upto(4);
    let vs = vformations(&pool);
    for v in vs.iter().step_by(5) {
        let built = amalgamate_rigid_conjunctive_conic(v, 12).unwrap();
        let out = search_amalgam(v, AmalgClass::Conic, built.d.len(), false);
        let cert = out.cert.expect("rigid conjunctive formations amalgamate");
        assert!(verify_amalgam(v, &cert).passed());
        assert!(cert.d.len() <= built.d.len());
        // nothing smaller among conic algebras, by trying every map pair
        for m in v.b.len().max(v.c.len())..cert.d.len() {
            for d in enumerate_conic(m) {
                let bs = brute_embeddings(&v.b, &d);
                let cs = brute_embeddings(&v.c, &d);
                assert!(!bs.iter().any(|gb| cs.iter().any(|gc| v.a.elems().all(|x| gb[v.fb[x]] == gc[v.fc[x]]))));
            }
        }
    }
}

#[test]
fn sugihara_pair_has_a_five_element_amalgam() {
    let b = sugihara(5).unwrap();
    let c = relabel(&b, |l| if l != "1" && l.ends_with('1') { format!("{l}'") } else { l.to_string() });
    let set: Vec<Elem> = ["b2", "a2", "1"].iter().map(|l| b.index_of(l).unwrap()).collect();
    let a = b.subalgebra(&set).unwrap().0;
    let v = VFormation::by_labels(a, b, c).unwrap();
    let out = search_amalgam(&v, AmalgClass::Chains, 7, false);
    let cert = out.cert.unwrap();
    assert_eq!(cert.d.len(), 5);
    assert!(!cert.strong);
}

#[test]
fn small_bound_negative_results() {
    let t = triple("fig_APfails").unwrap();
    let v = VFormation::by_labels(t.a, t.b, t.c).unwrap();
    let out = search_amalgam(&v, AmalgClass::Chains, 8, false);
    assert!(out.cert.is_none() && out.candidates > 0);
    let t = triple("fig_APfailsVar").unwrap();
    let v = VFormation::by_labels(t.a, t.b, t.c).unwrap();
    assert!(search_amalgam(&v, AmalgClass::Chains, 8, true).cert.is_none());
    assert!(search_amalgam(&v, AmalgClass::ConicFsi, 8, true).cert.is_none());
}

#[test]
fn fig_apfails_candidates_fail_verification() {
    let t = triple("fig_APfails").unwrap();
    let v = VFormation::by_labels(t.a, t.b, t.c).unwrap();
    for d in chains_upto(7) {
        for gb in embeddings(&v.b, &d, &[]) {
            let gc: Vec<Elem> = (0..v.c.len()).map(|i| i.min(d.len() - 1)).collect();
            let cert = AmalgamCert { d: d.clone(), gb, gc, strong: false };
            assert!(!verify_amalgam(&v, &cert).passed());
        }
    }
}

#[test]
fn failure_arguments_replay() {
    for f in ircl_enumerate::TRIPLES {
        let rep = check_failure_argument_to(f, 7).unwrap();
        assert!(rep.passed(), "{f}: {:?}", rep.first_failure());
    }
    assert!(matches!(check_failure_argument("fig_nope"), Err(AmalgError::UnknownFigure(_))));
}

#[test]
fn reduced_form_relabels_clashes() {
    let b = sugihara(5).unwrap();
    let set: Vec<Elem> = ["b2", "a2", "1"].iter().map(|l| b.index_of(l).unwrap()).collect();
    let (a, incl) = b.subalgebra(&set).unwrap();
    let v = VFormation::new(a, b.clone(), b.clone(), incl.clone(), incl).unwrap();
    assert!(!v.is_reduced());
    let r = v.reduced();
    assert!(r.is_reduced());
    assert!(is_isomorphic(&r.c, &b));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn construction_is_strong_on_random_formations(i in 0usize..10_000, j in 0usize..10_000, k in 0usize..64) {
        let pool: Vec<FinResLat> = chains_upto(6).into_iter().filter(|c| c.is_star_involutive()).collect();
        let b = &pool[i % pool.len()];
        let c = &pool[j % pool.len()];
        let subs = b.subuniverses();
        let (a, incl) = b.subalgebra(&subs[k % subs.len()]).unwrap();
        if let Some(fc) = embeddings(&a, c, &[]).into_iter().next() {
            let v = VFormation::new(a, b.clone(), c.clone(), incl, fc).unwrap().reduced();
            let cert = amalgamate_star_inv_chains(&v).unwrap();
            prop_assert!(verify_amalgam(&v, &cert).passed());
            prop_assert!(cert.images_meet_in_a(&v));
        }
    }
}
