//! Graphviz export for models and tests.

use std::fmt::Write as _;

use crate::format::Model;
use crate::lts::Lts;
use crate::ta::{ClockConstraint, TimedAutomaton};

fn guard_text(g: ClockConstraint) -> &'static str {
    match g {
        ClockConstraint::LtM => "c<M",
        ClockConstraint::EqM => "c=M",
        ClockConstraint::LeM => "c<=M",
    }
}

fn node_shape(name: &str, test: bool) -> &'static str {
    match (test, name) {
        (true, "pass") => "doublecircle",
        (true, "fail") => "box",
        _ => "circle",
    }
}

fn write_preamble(out: &mut String, initial: &str) {
    out.push_str("digraph model {\n");
    out.push_str("  rankdir=LR;\n");
    out.push_str("  __init [shape=none, label=\"\", width=0, height=0];\n");
    let _ = writeln!(out, "  __init -> \"{initial}\";");
}

fn write_lts(out: &mut String, lts: &Lts, test: bool) {
    write_preamble(out, &lts.initial);
    for s in &lts.states {
        let _ = writeln!(out, "  \"{s}\" [shape={}];", node_shape(s, test));
    }
    for t in &lts.transitions {
        let _ = writeln!(out, "  \"{}\" -> \"{}\" [label=\"{}\"];", t.source, t.target, t.action);
    }
    out.push_str("}\n");
}

fn write_ta(out: &mut String, ta: &TimedAutomaton, test: bool) {
    write_preamble(out, &ta.initial);
    for l in &ta.locations {
        match ta.invariants.get(l) {
            Some(inv) => {
                let _ = writeln!(
                    out,
                    "  \"{l}\" [shape={}, label=\"{l}\\n{}\"];",
                    node_shape(l, test),
                    guard_text(*inv)
                );
            }
            None => {
                let _ = writeln!(out, "  \"{l}\" [shape={}];", node_shape(l, test));
            }
        }
    }
    for t in &ta.transitions {
        let reset = if t.resets_clock { ", {c}" } else { "" };
        let _ = writeln!(
            out,
            "  \"{}\" -> \"{}\" [label=\"{}, {}{}\"];",
            t.source,
            t.target,
            t.action,
            guard_text(t.guard),
            reset
        );
    }
    out.push_str("}\n");
}

/// Renders a model as a deterministic DOT graph. Plain transition systems
/// show no δ-loops (quiescence is derived); lifted automata and tests show
/// their δ-edges.
pub fn export_dot(model: &Model) -> String {
    let mut out = String::new();
    match model {
        Model::Lts(m) => write_lts(&mut out, m, false),
        Model::Test(t) => write_lts(&mut out, t.as_lts(), true),
        Model::TimedAutomaton(ta) => write_ta(&mut out, ta, false),
        Model::TimedTest(t) => write_ta(&mut out, t.as_ta(), true),
    }
    out
}
