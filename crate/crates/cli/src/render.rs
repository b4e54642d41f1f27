use std::fmt::Write;

use ircl_chains::{Emp, Layer, Tie};
use ircl_core::FinResLat;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum View {
    Hasse,
    Emp,
    Flow,
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Cover digraph drawn bottom-up.
pub fn hasse(a: &FinResLat) -> String {
    let mut s = String::from("digraph hasse {\n  rankdir=BT;\n  node [shape=plaintext];\n");
    for x in a.elems() {
        let _ = writeln!(s, "  n{x} [label={}];", quote(a.label(x)));
    }
    for (x, y) in a.covers() {
        let _ = writeln!(s, "  n{x} -> n{y} [dir=none];");
    }
    s.push_str("}\n");
    s
}

/// Layers top to bottom, positive column on the left, negative on the right.
/// Consecutive layers are joined column by column; pairs get a dashed tie
/// edge marked L or R.
pub fn emp_view(p: &Emp) -> String {
    let l = |e: usize| quote(&p.labels()[e]);
    let mut s = String::from("digraph emp {\n  rankdir=TB;\n  newrank=true;\n  node [shape=plaintext];\n");
    let top_down: Vec<&Layer> = p.layers().iter().rev().collect();
    let mut left = Vec::new();
    let mut right = Vec::new();
    for (i, layer) in top_down.iter().enumerate() {
        let (pos, neg) = match **layer {
            Layer::Unit(e) | Layer::Pos(e) => (Some(e), None),
            Layer::Neg(e) => (None, Some(e)),
            Layer::Pair { pos, neg, .. } => (Some(pos), Some(neg)),
        };
        let lhs = match pos {
            Some(e) => {
                let _ = writeln!(s, "  n{e} [label={}];", l(e));
                format!("n{e}")
            }
            None => {
                let _ = writeln!(s, "  pl{i} [label=\"\", style=invis, width=0];");
                format!("pl{i}")
            }
        };
        let rhs = match neg {
            Some(e) => {
                let _ = writeln!(s, "  n{e} [label={}];", l(e));
                format!("n{e}")
            }
            None => {
                let _ = writeln!(s, "  pr{i} [label=\"\", style=invis, width=0];");
                format!("pr{i}")
            }
        };
        let _ = writeln!(s, "  {{ rank=same; {lhs}; {rhs}; }}");
        match **layer {
            Layer::Pair { tie, .. } => {
                let t = if tie == Tie::L { "L" } else { "R" };
                let _ = writeln!(s, "  {lhs} -> {rhs} [dir=none, style=dashed, label={t}];");
            }
            _ => {
                let _ = writeln!(s, "  {lhs} -> {rhs} [style=invis];");
            }
        }
        left.push((lhs, pos.is_some()));
        right.push((rhs, neg.is_some()));
    }
    for col in [&left, &right] {
        for w in col.windows(2) {
            let style = if w[0].1 && w[1].1 { "" } else { " [style=invis]" };
            let _ = writeln!(s, "  {} -> {}{style};", w[0].0, w[1].0);
        }
    }
    s.push_str("}\n");
    s
}

/// Inverse flow: solid `x -> x^r`, dashed `x -> x^l`; central elements are
/// circles, the others squares.
pub fn flow(a: &FinResLat) -> String {
    let mut s = String::from("digraph flow {\n");
    for x in a.elems() {
        let shape = if a.is_central(x) { "circle" } else { "square" };
        let _ = writeln!(s, "  n{x} [label={}, shape={shape}];", quote(a.label(x)));
    }
    for x in a.elems() {
        let _ = writeln!(s, "  n{x} -> n{};", a.inv_r(x));
        let _ = writeln!(s, "  n{x} -> n{} [style=dashed];", a.inv_ell(x));
    }
    s.push_str("}\n");
    s
}
