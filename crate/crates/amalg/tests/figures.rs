use std::collections::BTreeSet;

use ircl_amalg::*;
use ircl_enumerate::{is_isomorphic, noncomm_sugihara, sugihara, triple, TRIPLES};

fn formation(name: &str) -> VFormation {
    let t = triple(name).unwrap();
    VFormation::by_labels(t.a, t.b, t.c).unwrap()
}

#[test]
fn figure_formations_are_reduced() {
    for name in TRIPLES {
        assert!(formation(name).is_reduced(), "{name}");
    }
}

#[test]
fn figures_have_no_small_amalgams() {
    let runs = [
        ("fig_APfails", AmalgClass::Chains, false),
        ("fig_APfailsVar", AmalgClass::Chains, true),
        ("fig_APfailsVar", AmalgClass::ConicFsi, true),
        ("fig_APfails2", AmalgClass::Conic, false),
        ("fig_APfails3", AmalgClass::ConicFsi, true),
    ];
    for (name, class, one_sided) in runs {
        let out = search_amalgam(&formation(name), class, 10, one_sided);
        assert!(out.cert.is_none(), "{name} {}", class.name());
        assert_eq!(out.bound, 10);
    }
}

#[test]
fn the_first_figure_still_has_a_one_sided_amalgam() {
    let v = formation("fig_APfails");
    assert!(search_amalgam(&v, AmalgClass::Chains, 9, false).cert.is_none());
    let one = search_amalgam(&v, AmalgClass::Chains, 9, true).cert.expect("1-amalgam");
    assert!(verify_one_sided(&v, &one).passed());
}

#[test]
fn failure_arguments_reach_their_contradictions() {
    for name in TRIPLES {
        let rep = check_failure_argument(name).unwrap();
        assert!(rep.passed(), "{rep}");
        assert!(rep.checks.iter().any(|c| c.name.starts_with("contradiction")), "{rep}");
    }
    assert!(matches!(check_failure_argument("fig_nothing"), Err(AmalgError::UnknownFigure(_))));
}

#[test]
fn crowns_amalgamate_over_the_unit() {
    // every pair of one-crown algebras with up to two tie layers
    let mut crowns = Vec::new();
    for k in 1..=2usize {
        for mask in 0u32..1 << k {
            let j: BTreeSet<usize> = (1..=k).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            crowns.push(noncomm_sugihara(k, &j).unwrap());
        }
    }
    for b in &crowns {
        for c in &crowns {
            let c = c.relabel(c.labels().iter().map(|l| if l == "1" { l.clone() } else { format!("{l}'") }).collect()).unwrap();
            let v = VFormation::by_labels(ircl_core::FinResLat::trivial("1"), b.clone(), c.clone()).unwrap();
            let cert = amalgamate_star_inv_chains(&v).unwrap();
            assert!(cert.strong && verify_amalgam(&v, &cert).passed());
            assert_eq!(cert.d.len(), b.len() + c.len() - 1);
            let other = amalgamate_star_inv_chains_with(&v, MergeOrder::CFirst).unwrap();
            assert!(verify_amalgam(&v, &other).passed());
        }
    }
}

#[test]
fn sugihara_chains_over_their_common_part() {
    for (m, n) in [(3, 5), (5, 5), (5, 7), (7, 7)] {
        let b = sugihara(m).unwrap();
        let c = sugihara(n).unwrap();
        let c = c.relabel(c.labels().iter().map(|l| if l == "1" { l.clone() } else { format!("{l}'") }).collect()).unwrap();
        let v = VFormation::by_labels(ircl_core::FinResLat::trivial("1"), b.clone(), c).unwrap();
        let cert = amalgamate_star_inv_chains(&v).unwrap();
        assert!(is_isomorphic(&cert.d, &sugihara(m + n - 1).unwrap()), "{m} {n}");
    }
}
