//! Small example models used throughout the tests, docs, and the shipped
//! corpus: one specification and three candidate implementations over the
//! alphabet `inputs {i}`, `outputs {o, op}`.

use std::collections::BTreeSet;

use crate::action::{Action, Alphabet};
use crate::lts::{DeltaStyle, Lts, Transition};
use crate::testing::TestCase;

fn alphabet() -> Alphabet {
    Alphabet::new(vec!["i"], vec!["o", "op"])
}

fn build(states: &[&str], transitions: &[(&str, Action, &str)]) -> Lts {
    Lts {
        states: states.iter().map(|s| s.to_string()).collect(),
        initial: "s0".to_string(),
        alphabet: alphabet(),
        transitions: transitions
            .iter()
            .map(|(s, a, t)| Transition::new(*s, a.clone(), *t))
            .collect(),
        delta_style: DeltaStyle::Derived,
    }
}

fn i() -> Action {
    Action::input("i")
}
fn o() -> Action {
    Action::output("o")
}
fn op() -> Action {
    Action::output("op")
}

/// Specification: branches nondeterministically on `i?`, may answer `o!`,
/// or accept a second `i?` and then answer `o!` or `op!`.
pub fn lts_a() -> Lts {
    build(
        &["s0", "s1", "s2", "s3", "s4", "s5", "s6"],
        &[
            ("s0", i(), "s1"),
            ("s0", i(), "s2"),
            ("s1", o(), "s3"),
            ("s2", i(), "s4"),
            ("s4", op(), "s5"),
            ("s4", o(), "s6"),
        ],
    )
}

/// Input-enabled completion of [`lts_a`]: extra `i?` edges at s1 and `i?`
/// self-loops at the remaining states.
pub fn iots_b() -> Lts {
    build(
        &["s0", "s1", "s2", "s3", "s4", "s5", "s6"],
        &[
            ("s0", i(), "s1"),
            ("s0", i(), "s2"),
            ("s1", o(), "s3"),
            ("s2", i(), "s4"),
            ("s4", op(), "s5"),
            ("s4", o(), "s6"),
            ("s1", i(), "s2"),
            ("s3", i(), "s3"),
            ("s4", i(), "s4"),
            ("s5", i(), "s5"),
            ("s6", i(), "s6"),
        ],
    )
}

/// Conforming implementation: like the specification but never emits `op!`.
pub fn iots_c() -> Lts {
    build(
        &["s0", "s1", "s2", "s3", "s4", "s6"],
        &[
            ("s0", i(), "s1"),
            ("s0", i(), "s2"),
            ("s1", o(), "s3"),
            ("s2", i(), "s4"),
            ("s4", o(), "s6"),
            ("s1", i(), "s1"),
            ("s3", i(), "s3"),
            ("s4", i(), "s4"),
            ("s6", i(), "s6"),
        ],
    )
}

/// Nonconforming implementation: goes quiescent where the specification
/// requires an output after the second `i?`.
pub fn iots_d() -> Lts {
    build(
        &["s0", "s1", "s2", "s3", "s4"],
        &[
            ("s0", i(), "s1"),
            ("s0", i(), "s2"),
            ("s1", o(), "s3"),
            ("s2", i(), "s4"),
            ("s1", i(), "s1"),
            ("s3", i(), "s3"),
            ("s4", i(), "s4"),
        ],
    )
}

/// A two-level test case for [`lts_a`]: stimulate `i?`, then observe.
pub fn test_for_a() -> TestCase {
    let lts = Lts {
        states: ["n0", "n1", "pass", "fail"]
            .iter()
            .map(|s| s.to_string())
            .collect::<BTreeSet<_>>(),
        initial: "n0".to_string(),
        alphabet: alphabet(),
        transitions: [
            ("n0", i(), "n1"),
            ("n0", o(), "fail"),
            ("n0", op(), "fail"),
            ("n1", Action::Delta, "pass"),
            ("n1", o(), "pass"),
            ("n1", op(), "fail"),
        ]
        .iter()
        .map(|(s, a, t)| Transition::new(*s, a.clone(), *t))
        .collect(),
        delta_style: DeltaStyle::Explicit,
    };
    TestCase::from_lts(lts).expect("sample test is structurally valid")
}
