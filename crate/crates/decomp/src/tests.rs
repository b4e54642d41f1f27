use ircl_chains::{from_emp, Emp, Layer, Tie};
use ircl_core::{is_embedding, label_map, same_by_labels, BlockKind, Elem, FinResLat};

use super::*;

/// Chain from a layer word over `-` `+` `L` `R` with the given labels.
fn chain(word: &str, names: &[&str]) -> FinResLat {
    let mut labels: Vec<String> = Vec::new();
    let mut layers = Vec::new();
    let mut it = names.iter();
    for c in word.chars() {
        let mut next = || {
            labels.push(it.next().unwrap().to_string());
            labels.len() - 1
        };
        layers.push(match c {
            '-' => Layer::Neg(next()),
            '+' => Layer::Pos(next()),
            _ => {
                let pos = next();
                let neg = next();
                Layer::Pair { pos, neg, tie: if c == 'L' { Tie::L } else { Tie::R } }
            }
        });
    }
    labels.push("1".into());
    layers.push(Layer::Unit(labels.len() - 1));
    from_emp(&Emp::from_layers(labels, layers).unwrap()).unwrap()
}

fn sugihara(k: usize) -> FinResLat {
    let mut names = Vec::new();
    for i in (1..=k).rev() {
        names.push(format!("b{i}"));
        names.push(format!("a{i}"));
    }
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    chain(&"-+".repeat(k), &refs)
}

/// Block shapes over a top label `t`.
fn shape(kind: &str, t: &str) -> Block {
    let l = |s: &str| format!("{t}{s}");
    match kind {
        "1" => Block::trivial(t),
        "2" => Block::chain(&[&l("_0"), t]),
        "3" => Block::chain(&[&l("_0"), &l("_1"), t]),
        // two atoms under the top, no bottom
        "V" => Block::from_covers(vec![l("_x"), l("_y"), t.into()], &[(0, 2), (1, 2)]).unwrap(),
        "B4" => Block::from_covers(vec![l("_0"), l("_x"), l("_y"), t.into()], &[(0, 1), (0, 2), (1, 3), (2, 3)])
            .unwrap(),
        "M3" => Block::from_covers(
            vec![l("_0"), l("_x"), l("_y"), l("_z"), t.into()],
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)],
        )
        .unwrap(),
        _ => panic!("{kind}"),
    }
}

fn system(skel: &FinResLat, kinds: &[(&str, &str)]) -> Result<DecompSystem, DecompError> {
    let blocks = skel
        .elems()
        .map(|s| {
            let name = skel.label(s);
            let k = kinds.iter().find(|(n, _)| *n == name).map_or("1", |(_, k)| *k);
            shape(k, name)
        })
        .collect();
    DecompSystem::new(skel.clone(), blocks)
}

/// Skeleton of the figure algebras: a* < b* < 1 < b < a.
fn sug5() -> FinResLat {
    chain("-+-+", &["a*", "a", "b*", "b"])
}

fn fig_b_system() -> DecompSystem {
    let s = sug5();
    let blocks = s
        .elems()
        .map(|t| match s.label(t) {
            "a" => Block::from_covers(vec!["b1".into(), "b2".into(), "a".into()], &[(0, 2), (1, 2)]).unwrap(),
            "b" => Block::from_covers(vec!["b1'".into(), "b2'".into(), "b".into()], &[(0, 2), (1, 2)]).unwrap(),
            l => Block::trivial(l),
        })
        .collect();
    DecompSystem::new(s, blocks).unwrap()
}

fn el(a: &FinResLat, l: &str) -> Elem {
    a.index_of(l).unwrap()
}

#[test]
fn all_singleton_blocks_give_the_skeleton() {
    for k in 0..4 {
        let s = sugihara(k);
        let d = DecompSystem::trivial_over(s.clone());
        assert!(same_by_labels(&build_algebra(&d).unwrap(), &s));
        assert!(extract_system(&s).unwrap().same_as(&d));
    }
}

#[test]
fn figure_b_from_its_system() {
    let b = build_algebra(&fig_b_system()).unwrap();
    // the drawn Hasse diagram
    let labels = ["a*", "b*", "1", "b1'", "b2'", "b", "b1", "b2", "a"];
    let covers = [(0, 1), (1, 2), (2, 3), (2, 4), (3, 5), (4, 5), (5, 6), (5, 7), (6, 8), (7, 8)];
    let leq = ircl_core::order_from_covers(&labels.map(String::from), &covers).unwrap();
    for (i, x) in labels.iter().enumerate() {
        for (j, y) in labels.iter().enumerate() {
            assert_eq!(b.leq(el(&b, x), el(&b, y)), leq[i * 9 + j], "{x} {y}");
        }
    }
    assert!(b.is_commutative() && b.is_rigid());
    assert!(!b.is_conjunctive());
    assert!(!b.blocks_are_lattices());
    assert_eq!(b.gamma(el(&b, "b1'")), el(&b, "b"));
    assert_eq!(b.gamma(el(&b, "b1")), el(&b, "a"));
    assert_eq!(b.block_kind(el(&b, "a")), BlockKind::ProperPrelattice);
    assert_eq!(b.meet(el(&b, "b1"), el(&b, "b2")), el(&b, "b"));

    let d = extract_system(&b).unwrap();
    let mut sk: Vec<&str> = d.skeleton().labels().iter().map(String::as_str).collect();
    sk.sort_unstable();
    assert_eq!(sk, vec!["1", "a", "a*", "b", "b*"]);
    let a_idx = d.skeleton().index_of("a").unwrap();
    let mut blk: Vec<&str> = d.block(a_idx).labels().iter().map(String::as_str).collect();
    blk.sort_unstable();
    assert_eq!(blk, vec!["a", "b1", "b2"]);
    assert_eq!(d.lower_cover(a_idx), d.skeleton().index_of("b"));
    assert!(d.same_as(&fig_b_system()));
}

#[test]
fn figure_c_block_of_d_is_proper() {
    let s = chain("-+-+-+", &["a*", "a", "c*", "c", "d*", "d"]);
    let d = system(&s, &[("a", "V"), ("d", "V")]).unwrap();
    let c = build_algebra(&d).unwrap();
    assert_eq!(c.block_kind(el(&c, "d")), BlockKind::ProperPrelattice);
    assert_eq!(c.block_kind(el(&c, "c")), BlockKind::Trivial);
    assert_eq!(c.meet(el(&c, "d_x"), el(&c, "d_y")), c.unit());
    assert_eq!(c.meet(el(&c, "a_x"), el(&c, "a_y")), el(&c, "c"));
}

#[test]
fn figure_a_is_a_subsystem_of_b() {
    let sa = sugihara(1).relabel(vec!["a*".into(), "a".into(), "1".into()]).unwrap();
    assert_eq!(sa.label(sa.unit()), "1");
    let da = DecompSystem::trivial_over(sa);
    let db = fig_b_system();
    assert!(is_subsystem(&da, &db));
    assert!(is_subsystem(&db, &db));
    let (a, b) = (build_algebra(&da).unwrap(), build_algebra(&db).unwrap());
    assert!(is_embedding(&a, &b, &label_map(&a, &b).unwrap()));
}

#[test]
fn dropped_lower_cover_fails_condition_four() {
    let db = fig_b_system();
    let s = sug5();
    let keep: Vec<Elem> = ["a*", "1", "a"].iter().map(|l| el(&s, l)).collect();
    let (sub, _) = s.subalgebra(&keep).unwrap();
    let blocks = sub
        .elems()
        .map(|t| match sub.label(t) {
            "a" => db.block(el(db.skeleton(), "a")).clone(),
            l => Block::trivial(l),
        })
        .collect();
    let d = DecompSystem::new(sub, blocks).unwrap();
    let rep = subsystem_report(&d, &db);
    let failed: Vec<&str> = rep.failures().map(|c| c.name.as_str()).collect();
    assert_eq!(failed, vec!["4 lower covers present"], "{rep}");
    // and the built algebra is indeed not a subalgebra
    let (a, b) = (build_algebra(&d).unwrap(), build_algebra(&db).unwrap());
    assert!(!is_embedding(&a, &b, &label_map(&a, &b).unwrap()));
}

#[test]
fn invalid_systems_rejected() {
    let one = FinResLat::trivial("1");
    let err = system(&one, &[("1", "V")]).unwrap_err();
    assert!(matches!(err, DecompError::InvalidSystem(_)), "{err}");
    // bottom of the skeleton needs a lattice block
    let s = sugihara(1);
    assert!(system(&s, &[("b1", "V")]).is_err());
    // negative blocks must be Brouwerian
    assert!(system(&s, &[("1", "M3")]).is_err());
    assert!(system(&s, &[("1", "B4")]).is_ok());
    // positive blocks may be any lattice, or a prelattice above a lower cover
    assert!(system(&s, &[("a1", "M3")]).is_ok());
    assert!(system(&s, &[("a1", "V")]).is_ok());
    // non-central elements have trivial blocks
    let crown = chain("-R+", &["b0", "a1", "b1", "a2"]);
    assert!(system(&crown, &[("a1", "2")]).is_err());
    assert!(system(&crown, &[("a2", "2")]).is_ok());
    // top label must match
    let blocks = vec![Block::trivial("x"), Block::trivial("1"), Block::trivial("a1")];
    assert!(DecompSystem::new(s, blocks).is_err());
}

/// Quasi-involutive chains up to five elements with a few labelled skeletons.
fn skeletons() -> Vec<FinResLat> {
    let mut out = vec![FinResLat::trivial("1")];
    for (w, names) in [
        ("-", vec!["s0"]),
        ("-+", vec!["s0", "s1"]),
        ("--", vec!["s0", "s1"]),
        ("-R", vec!["s0", "s1", "s2"]),
        ("-L", vec!["s0", "s1", "s2"]),
        ("-+-+", vec!["s0", "s1", "s2", "s3"]),
        ("-R+", vec!["s0", "s1", "s2", "s3"]),
        ("-+-", vec!["s0", "s1", "s2"]),
    ] {
        let c = chain(w, &names);
        if c.is_quasi_involutive() {
            out.push(c);
        }
    }
    out
}

/// Every system over the pool skeletons with blocks from a small shape list,
/// up to `max` elements.
fn pool(max: usize) -> Vec<DecompSystem> {
    let kinds = ["1", "2", "3", "V", "B4", "M3"];
    let mut out = Vec::new();
    for s in skeletons() {
        let n = s.len();
        let mut choice = vec![0usize; n];
        loop {
            let size: usize = choice.iter().map(|&k| shape(kinds[k], "t").len()).sum();
            if size <= max {
                let spec: Vec<(&str, &str)> = s.elems().map(|t| (s.label(t), kinds[choice[t]])).collect();
                if let Ok(d) = system(&s, &spec) {
                    out.push(d);
                }
            }
            let mut i = 0;
            while i < n {
                choice[i] += 1;
                if choice[i] < kinds.len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    out
}

#[test]
fn build_and_extract_are_inverse_on_the_pool() {
    let systems = pool(8);
    assert!(systems.len() > 100, "{}", systems.len());
    for d in &systems {
        let a = build_algebra(d).unwrap();
        assert!(a.is_conic_idempotent());
        assert!(a.verify_nucleus().passed());
        let e = extract_system(&a).unwrap();
        assert!(e.same_as(d), "{:?}", d.skeleton());
        assert!(same_by_labels(&build_algebra(&e).unwrap(), &a));
        // x^r ∨ y = γ(x)^r ∨ y
        for x in a.elems() {
            for y in a.elems() {
                assert_eq!(a.join(a.inv_r(x), y), a.join(a.inv_r(a.gamma(x)), y));
                assert_eq!(a.join(a.inv_ell(x), y), a.join(a.inv_ell(a.gamma(x)), y));
            }
        }
        assert_eq!(a.is_conjunctive(), a.blocks_are_lattices());
        let conj = (0..d.skeleton().len()).all(|s| d.block(s).is_lattice());
        assert_eq!(a.is_conjunctive(), conj);
    }
}

/// Sub-systems obtained by restricting to a skeleton subuniverse and to
/// subsets of each block that contain its top.
fn restrictions(d: &DecompSystem) -> Vec<DecompSystem> {
    let s = d.skeleton();
    let mut out = Vec::new();
    for su in s.subuniverses() {
        let (sub, incl) = s.subalgebra(&su).unwrap();
        let options: Vec<Vec<Block>> = incl
            .iter()
            .map(|&t| {
                let b = d.block(t);
                let others: Vec<usize> = (0..b.len()).filter(|&x| x != b.top()).collect();
                (0..1usize << others.len())
                    .filter_map(|mask| {
                        let mut keep: Vec<&str> =
                            others.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| b.label(x)).collect();
                        keep.push(b.label(b.top()));
                        b.restrict(&keep).ok()
                    })
                    .collect()
            })
            .collect();
        let mut idx = vec![0usize; incl.len()];
        loop {
            let blocks = idx.iter().zip(&options).map(|(&i, o)| o[i].clone()).collect();
            if let Ok(r) = DecompSystem::new(sub.clone(), blocks) {
                out.push(r);
            }
            let mut i = 0;
            while i < idx.len() {
                idx[i] += 1;
                if idx[i] < options[i].len() {
                    break;
                }
                idx[i] = 0;
                i += 1;
            }
            if i == idx.len() {
                break;
            }
        }
    }
    out
}

#[test]
fn subsystems_are_exactly_subalgebras() {
    let mut checked = 0;
    let mut positive = 0;
    for d in pool(7) {
        let b = build_algebra(&d).unwrap();
        for r in restrictions(&d) {
            let a = build_algebra(&r).unwrap();
            let m = label_map(&a, &b).unwrap();
            let sub = is_embedding(&a, &b, &m);
            assert_eq!(is_subsystem(&r, &d), sub, "{}", subsystem_report(&r, &d));
            checked += 1;
            positive += sub as usize;
        }
        // and every subuniverse of the algebra arises this way
        for u in b.subuniverses() {
            let (a, _) = b.subalgebra(&u).unwrap();
            assert!(is_subsystem(&extract_system(&a).unwrap(), &d));
        }
    }
    assert!(checked > positive && positive > 0);
}

#[test]
fn sugihara_is_central_sgsm() {
    for k in 0..4 {
        let a = sugihara(k);
        assert_eq!(is_sgsm(&a), Ok(true));
        assert_eq!(is_central_sgsm(&a), Ok(true));
        assert!(sgsm_report(&a).unwrap().passed());
    }
}

#[test]
fn negative_block_breaks_only_centrality() {
    let s = sugihara(1);
    let a = build_algebra(&system(&s, &[("b1", "2")]).unwrap()).unwrap();
    assert_eq!(is_sgsm(&a), Ok(true));
    assert_eq!(is_central_sgsm(&a), Ok(false));
    assert!(central_identity_witness(&a).is_some());
    let a = build_algebra(&system(&s, &[("1", "2")]).unwrap()).unwrap();
    assert_eq!(is_central_sgsm(&a), Ok(true));
    let a = build_algebra(&system(&s, &[("a1", "2")]).unwrap()).unwrap();
    assert_eq!(is_sgsm(&a), Ok(false));
}

#[test]
fn figure_b_is_not_sgsm() {
    let b = build_algebra(&fig_b_system()).unwrap();
    assert_eq!(is_sgsm(&b), Ok(false));
    assert!(sgsm_identity_witness(&b).is_some());
}

#[test]
fn sgsm_requires_commutativity() {
    let crown = chain("-R+", &["b0", "a1", "b1", "a2"]);
    assert!(matches!(is_sgsm(&crown), Err(DecompError::NotCommutative(_))));
}

#[test]
fn sgsm_routes_agree_on_commutative_pool() {
    for d in pool(8) {
        let a = build_algebra(&d).unwrap();
        if a.is_commutative() {
            assert!(sgsm_report(&a).unwrap().passed());
        }
    }
}

#[test]
fn block_operations() {
    let b = shape("B4", "t");
    assert!(b.is_brouwerian() && b.is_distributive());
    assert_eq!(b.implication(b.index_of("t_x").unwrap(), b.index_of("t_0").unwrap()), b.index_of("t_y"));
    let m = shape("M3", "t");
    assert!(m.is_lattice() && !m.is_distributive() && !m.is_brouwerian());
    let v = shape("V", "t");
    assert!(!v.is_lattice());
    assert_eq!(v.meet_witness(), Some((0, 1)));
    assert!(Block::from_covers(vec!["x".into(), "y".into()], &[]).is_err());
}
