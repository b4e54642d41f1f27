use ircl_chains::{from_emp, to_emp};
use ircl_core::{same_by_labels, FinResLat};
use ircl_enumerate::{enumerate_chains, enumerate_conic, library, sugihara, NAMES};
use proptest::prelude::*;

use crate::*;

fn fixed_names() -> impl Iterator<Item = &'static str> {
    NAMES.iter().copied().filter(|n| !n.contains(':'))
}

fn roundtrip(a: &FinResLat) {
    let f = AlgebraFile::from_algebra("x", a);
    let s = to_json(&f);
    let g = parse_json(&s).unwrap();
    assert_eq!(g, f);
    let b = g.to_algebra().unwrap();
    assert!(b == *a, "parse of serialize differs for {:?}", a.labels());
    assert_eq!(to_json(&AlgebraFile::from_algebra("x", &b)), s);
}

#[test]
fn json_roundtrip_on_library_and_small_algebras() {
    for n in fixed_names() {
        roundtrip(&library(n).unwrap());
    }
    for n in 1..=5 {
        for a in enumerate_chains(n).chain(enumerate_conic(n)) {
            roundtrip(&a);
        }
    }
}

#[test]
fn emp_text_roundtrip_on_chains() {
    for n in 1..=6 {
        for a in enumerate_chains(n) {
            let p = to_emp(&a).unwrap();
            let text = emp_text(&p).unwrap();
            let q = parse_emp(&text).unwrap();
            assert_eq!(emp_text(&q).unwrap(), text);
            assert!(same_by_labels(&from_emp(&q).unwrap(), &a));
        }
    }
}

#[test]
fn emp_json_kind_roundtrip() {
    let a = sugihara(5).unwrap();
    let f = AlgebraFile::from_emp("s5", &to_emp(&a).unwrap()).unwrap();
    assert_eq!(f.kind, FileKind::Emp);
    assert!(f.mult.is_none());
    let s = to_json(&f);
    assert!(s.contains("\"layers\""));
    let b = parse_json(&s).unwrap().to_algebra().unwrap();
    assert!(b == a);
}

#[test]
fn emp_text_errors() {
    assert_eq!(parse_emp("").unwrap_err().code, EXIT_INPUT);
    assert_eq!(parse_emp("-b\n+1\n").unwrap_err().code, EXIT_INPUT);
    assert_eq!(parse_emp("+1\n+a -b X\n").unwrap_err().code, EXIT_INPUT);
    assert_eq!(parse_emp("+1\n-b\n-b\n").unwrap_err().code, EXIT_INPUT);
    // a pair layer with nothing below is not a valid EMP
    assert_eq!(parse_emp("+1\n+a -b L\n").unwrap_err().code, EXIT_VERIFY);
    let p = parse_emp("# comment\n+1\n\n+a\n-b\n").unwrap();
    assert_eq!(p.len(), 3);
}

#[test]
fn table_errors_are_classified() {
    let a = sugihara(3).unwrap();
    let mut f = AlgebraFile::from_algebra("s3", &a);
    f.unit = "nope".into();
    assert_eq!(f.to_algebra().unwrap_err().code, EXIT_INPUT);
    let mut f = AlgebraFile::from_algebra("s3", &a);
    f.mult.as_mut().unwrap().get_mut("a1").unwrap().insert("b1".into(), "a1".into());
    assert_eq!(f.to_algebra().unwrap_err().code, EXIT_VERIFY);
    let mut f = AlgebraFile::from_algebra("s3", &a);
    f.covers.push(("b1".into(), "a1".into()));
    assert_eq!(f.to_algebra().unwrap_err().code, EXIT_INPUT);
    assert_eq!(parse_json("{").unwrap_err().code, EXIT_INPUT);
}

#[test]
fn trivial_renders_a_single_node() {
    let t = FinResLat::trivial("1");
    for dot in [hasse(&t), flow(&t), emp_view(&to_emp(&t).unwrap())] {
        assert_eq!(dot.matches("label=\"1\"").count(), 1, "{dot}");
    }
    assert!(!hasse(&t).contains("->"));
}

#[test]
fn samemondiff_views_differ() {
    let l = Input::Algebra { name: "l".into(), algebra: library("fig_samemondiff_left").unwrap() };
    let r = Input::Algebra { name: "r".into(), algebra: library("fig_samemondiff_right").unwrap() };
    let (dl, dr) = (render(&l, View::Emp).unwrap(), render(&r, View::Emp).unwrap());
    assert_ne!(dl, dr);
    // the third layer from the bottom is positive on one side and negative on the other
    assert!(dl.contains("label=\"a3\""));
    assert!(dr.contains("label=\"b3\""));
}

#[test]
fn flow_view_of_a_left_pair() {
    // 1 > (a, b) tie L > b0: a^r = b, b^l = a and both are squares
    let a = parse_emp("+1\n+a -b L\n-b0\n").unwrap();
    let alg = from_emp(&a).unwrap();
    let dot = flow(&alg);
    let (ia, ib) = (alg.index_of("a").unwrap(), alg.index_of("b").unwrap());
    assert!(dot.contains(&format!("n{ia} [label=\"a\", shape=square]")));
    assert!(dot.contains(&format!("n{ib} [label=\"b\", shape=square]")));
    assert!(dot.contains(&format!("  n{ia} -> n{};\n", alg.inv_r(ia))));
    assert!(dot.contains(&format!("  n{ib} -> n{} [style=dashed];\n", alg.inv_ell(ib))));
    assert!(dot.contains(&format!("n{} [label=\"1\", shape=circle]", alg.unit())));
}

#[test]
fn emp_view_needs_a_chain() {
    let i = Input::Algebra { name: "x".into(), algebra: library("fig_APfails2_B").unwrap() };
    assert_eq!(render(&i, View::Emp).unwrap_err().code, EXIT_INPUT);
}

proptest! {
    #[test]
    fn emp_text_roundtrip_random_words(word in proptest::collection::vec(0u8..4, 0..6)) {
        let w: String = word.iter().map(|&c| ['-', '+', 'L', 'R'][c as usize]).collect();
        if let Ok(a) = ircl_enumerate::chain_from_word(&w, None) {
            let text = emp_text(&to_emp(&a).unwrap()).unwrap();
            let b = from_emp(&parse_emp(&text).unwrap()).unwrap();
            prop_assert!(same_by_labels(&a, &b));
        }
    }
}
