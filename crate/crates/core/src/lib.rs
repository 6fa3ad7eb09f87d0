//! Conformance checking for labelled transition systems with quiescence,
//! and its timed counterpart over single-clock automata.
//!
//! The library covers:
//!
//! - untimed semantics: after-sets, in/out-sets, bounded suspension traces,
//!   and the `ioco` conformance check with minimal counterexample witnesses
//!   ([`lts`], [`conformance`]);
//! - canonic single-clock timed automata with an exact symbolic delay
//!   quotient and the `tioco` check over it ([`ta`], [`conformance`]);
//! - the lifting operator that turns a transition system into a canonic
//!   timed automaton where outputs happen before a bound `M` and quiescence
//!   exactly at `M`, plus the projection back ([`lift`]);
//! - tree-shaped test cases with pass/fail sinks for both paradigms:
//!   validation, exhaustive and randomized generation, lifting, and
//!   execution ([`testing`]);
//! - randomized model generation and the oracle batteries that machine-check
//!   the conformance-preservation and test-correspondence properties at desk
//!   scale ([`lab`]);
//! - a line-oriented text format with canonical serialization and DOT
//!   export ([`format`], [`dot`]).
//!
//! All values are immutable after construction and every operation is a
//! pure function, so concurrent reads are safe throughout.

pub mod action;
pub mod conformance;
pub mod dot;
pub mod error;
pub mod format;
pub mod lab;
pub mod lift;
pub mod lts;
pub mod rational;
pub mod samples;
pub mod ta;
pub mod testing;

pub use action::{Action, Alphabet};
pub use conformance::{
    check_ioco, check_tioco_m, check_tioco_via_projection, ConformanceVerdict,
    TimedConformanceVerdict,
};
pub use dot::export_dot;
pub use error::ModelError;
pub use format::{parse, serialize, FormatError, Model};
pub use lift::{lift, lift_trace, project_ta, project_trace};
pub use lts::{DeltaStyle, Lts, StateSet, SuspensionTrace, Transition};
pub use rational::Rational;
pub use ta::{
    ClockConstraint, DelayClass, LocationSet, SymbolicOut, TimedAutomaton, TimedStep, TimedTrace,
    TimedTransition,
};
pub use testing::{
    generate_tests, generate_tests_ta, lift_suite, lift_test, run_suite, run_suite_ta,
    run_test_lts, run_test_ta, validate_test_lts, validate_test_ta, GenerationMode, SuiteReport,
    TestCase, TestSuite, TimedSuiteReport, TimedTestCase, TimedTestSuite, Verdict, TimedVerdict,
};
