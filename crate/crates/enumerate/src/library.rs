use std::collections::BTreeSet;

use ircl_chains::{crown_algebra, CrownType};
use ircl_core::FinResLat;
use ircl_decomp::{build_algebra, Block, DecompSystem};

use crate::gen::chain_from_word;
use crate::EnumError;

/// Odd Sugihara chain with `n = 2k+1` elements:
/// `b_k < ... < b_1 < 1 < a_1 < ... < a_k`.
pub fn sugihara(n: usize) -> Result<FinResLat, EnumError> {
    if n.is_multiple_of(2) {
        return Err(EnumError::BadParams(format!("sugihara needs an odd size, got {n}")));
    }
    let k = n / 2;
    let names: Vec<String> = (1..=k).rev().flat_map(|i| [format!("b{i}"), format!("a{i}")]).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    chain_from_word(&"-+".repeat(k), Some(&refs))
}

/// Finite non-commutative analogue: the vertical crown with `k` tie layers
/// `(a_i, b_i)`, left-zero exactly for `i ∈ J`, between a central bottom `b0`
/// and a central `a_{k+1}`.
pub fn noncomm_sugihara(k: usize, left: &BTreeSet<usize>) -> Result<FinResLat, EnumError> {
    crown_algebra(&CrownType::finite(k, left.iter().copied())).map_err(|e| EnumError::BadParams(e.to_string()))
}

/// A common subalgebra with its two extensions; A's labels occur in B and C.
#[derive(Debug, Clone)]
pub struct LibraryTriple {
    pub name: &'static str,
    pub a: FinResLat,
    pub b: FinResLat,
    pub c: FinResLat,
}

fn word(w: &str, names: &[&str]) -> FinResLat {
    chain_from_word(w, Some(names)).expect("library word")
}

fn v_block(top: &str, atoms: &[&str]) -> Block {
    let mut labels: Vec<String> = atoms.iter().map(|s| s.to_string()).collect();
    labels.push(top.into());
    let covers: Vec<(usize, usize)> = (0..atoms.len()).map(|i| (i, atoms.len())).collect();
    Block::from_covers(labels, &covers).expect("atoms under a top")
}

/// Build from a skeleton word plus blocks on named skeleton elements.
fn conic(w: &str, names: &[&str], blocks: &[(&str, &[&str])]) -> FinResLat {
    let s = word(w, names);
    let bs = s
        .elems()
        .map(|t| {
            let l = s.label(t);
            match blocks.iter().find(|(top, _)| *top == l) {
                Some((top, atoms)) => v_block(top, atoms),
                None => Block::trivial(l),
            }
        })
        .collect();
    build_algebra(&DecompSystem::new(s, bs).expect("library system")).expect("library system builds")
}

fn sug3(neg: &str, pos: &str) -> FinResLat {
    word("-+", &[neg, pos])
}

pub const TRIPLES: [&str; 4] = ["fig_APfails", "fig_APfailsVar", "fig_APfails2", "fig_APfails3"];

pub fn triple(name: &str) -> Result<LibraryTriple, EnumError> {
    let t = match name {
        "fig_APfails" => LibraryTriple {
            name: "fig_APfails",
            a: FinResLat::trivial("1"),
            b: word("-L", &["b2", "a3", "b3"]),
            c: word("-LL", &["b1'", "a2'", "b2'", "a3'", "b3'"]),
        },
        "fig_APfailsVar" => LibraryTriple {
            name: "fig_APfailsVar",
            a: sug3("b", "a"),
            b: word("-R-+", &["bB'", "aB", "bB", "b", "a"]),
            c: word("-L-+", &["bC'", "aC", "bC", "b", "a"]),
        },
        "fig_APfails2" => LibraryTriple {
            name: "fig_APfails2",
            a: sug3("a*", "a"),
            b: conic("-+-+", &["a*", "a", "b*", "b"], &[("a", &["b1", "b2"]), ("b", &["b1'", "b2'"])]),
            c: fig_c(),
        },
        "fig_APfails3" => LibraryTriple {
            name: "fig_APfails3",
            a: sug3("a*", "a"),
            b: conic("-+-+", &["a*", "a", "b*", "b"], &[("a", &["b1", "b2", "b3"]), ("b", &["b1'", "b2'", "b3'"])]),
            c: fig_c(),
        },
        _ => return Err(EnumError::UnknownName(name.into())),
    };
    Ok(t)
}

fn fig_c() -> FinResLat {
    conic("-+-+-+", &["a*", "a", "c*", "c", "d*", "d"], &[("a", &["c1", "c2"]), ("d", &["d1", "d2"])])
}

/// Single named algebras, in listing order.
pub const NAMES: [&str; 20] = [
    "fig_APfails_A",
    "fig_APfails_B",
    "fig_APfails_C",
    "fig_APfailsVar_A",
    "fig_APfailsVar_B",
    "fig_APfailsVar_C",
    "fig_APfails2_A",
    "fig_APfails2_B",
    "fig_APfails2_C",
    "fig_APfails3_A",
    "fig_APfails3_B",
    "fig_APfails3_C",
    "fig_samemon_left",
    "fig_samemon_right",
    "fig_samemondiff_left",
    "fig_samemondiff_right",
    "fig_connectedcomponents_A",
    "fig_connectedcomponents_C",
    "sugihara:N",
    "noncomm_sugihara:K:J",
];

/// Look up a named algebra. Parametric forms: `sugihara:5` or `sugihara(5)`;
/// `noncomm_sugihara:2:1,2` or `noncomm_sugihara(2,{1,2})`.
pub fn library(name: &str) -> Result<FinResLat, EnumError> {
    let name = name.trim();
    if let Some(rest) = name.strip_prefix("noncomm_sugihara") {
        let (k, j) = parse_noncomm(rest).ok_or_else(|| EnumError::BadParams(name.into()))?;
        return noncomm_sugihara(k, &j);
    }
    if let Some(rest) = name.strip_prefix("sugihara") {
        let n = rest.trim_start_matches([':', '(']).trim_end_matches(')');
        let n: usize = n.parse().map_err(|_| EnumError::BadParams(name.into()))?;
        return sugihara(n);
    }
    let dash = ["-R+-L", "-R--L"];
    let a = match name {
        "fig_samemon_left" => word(dash[0], &["b1", "a2", "b2", "c3", "b4", "a5", "b5"]),
        "fig_samemon_right" => word(dash[1], &["b1", "a2", "b2", "c3", "b4", "a5", "b5"]),
        "fig_samemondiff_left" | "fig_connectedcomponents_A" => {
            word(dash[0], &["b1", "a2", "b2", "a3", "b4", "a5", "b5"])
        }
        "fig_samemondiff_right" | "fig_connectedcomponents_C" => {
            word(dash[1], &["b1", "a2", "b2", "b3", "b4", "a5", "b5"])
        }
        _ => {
            let (base, part) = name.rsplit_once('_').ok_or_else(|| EnumError::UnknownName(name.into()))?;
            let t = triple(base).map_err(|_| EnumError::UnknownName(name.into()))?;
            match part {
                "A" => t.a,
                "B" => t.b,
                "C" => t.c,
                _ => return Err(EnumError::UnknownName(name.into())),
            }
        }
    };
    Ok(a)
}

fn parse_noncomm(rest: &str) -> Option<(usize, BTreeSet<usize>)> {
    let s: String = rest.chars().filter(|c| !"(){} ".contains(*c)).collect();
    let s = s.strip_prefix(':').unwrap_or(&s);
    let mut parts = s.splitn(2, [':', ',']);
    let k = parts.next()?.parse().ok()?;
    let j = match parts.next() {
        None | Some("") => BTreeSet::new(),
        Some(js) => js.split(',').map(|x| x.parse().ok()).collect::<Option<BTreeSet<usize>>>()?,
    };
    Some((k, j))
}
