//! Line-oriented text format for models and tests, with canonical
//! serialization.
//!
//! ```text
//! lts                     ta                      test lts
//! inputs: a, b            M: 3/2                  inputs: a
//! outputs: x, y           inputs: a               outputs: x
//! init: s0                outputs: x              init: n0
//! s0 a? s1                init: s0                n0 a? n1
//! s1 x! s2                inv s0: c<=M            n0 x! fail
//!                         s0 a? [c<M] {c} s1      n1 delta pass
//!                         s0 delta [c=M] {c} s0   n1 x! pass
//! ```
//!
//! `#` starts a comment, blank lines are ignored. The `?`/`!` suffix must
//! match the label's declared kind. `delta` transitions are allowed in `ta`
//! files (as self-loops) and in test files; a plain `lts` never writes them
//! because quiescence is derived. Timed test files use the `test ta` header
//! and leave the `pass`/`fail` sinks without an `inv` line. Serialization is
//! canonical: headers in fixed order, then invariants and transitions in
//! sorted order, so equal values serialize byte-identically.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use thiserror::Error;

use crate::action::{Action, Alphabet, DELTA_NAME, FAIL_STATE, PASS_STATE};
use crate::error::ModelError;
use crate::lts::{DeltaStyle, Lts, Transition};
use crate::rational::Rational;
use crate::ta::{ClockConstraint, TimedAutomaton, TimedTransition};
use crate::testing::{TestCase, TimedTestCase};

/// Any value the text format can carry.
#[derive(Clone, Debug, PartialEq)]
pub enum Model {
    Lts(Lts),
    TimedAutomaton(TimedAutomaton),
    Test(TestCase),
    TimedTest(TimedTestCase),
}

/// Parse failure with location, or a model-invariant violation.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Lts,
    Ta,
    TestLts,
    TestTa,
}

impl Kind {
    fn timed(self) -> bool {
        matches!(self, Kind::Ta | Kind::TestTa)
    }

    fn test(self) -> bool {
        matches!(self, Kind::TestLts | Kind::TestTa)
    }
}

/// Non-blank lines with comments stripped, keyed by 1-based line number.
fn content_lines(text: &str) -> Vec<(usize, String)> {
    text.lines()
        .enumerate()
        .filter_map(|(i, raw)| {
            let content = match raw.find('#') {
                Some(p) => &raw[..p],
                None => raw,
            };
            if content.trim().is_empty() {
                None
            } else {
                Some((i + 1, content.to_string()))
            }
        })
        .collect()
}

/// Whitespace-separated tokens with their 1-based starting column.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &line[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &line[s..]));
    }
    out
}

fn parse_header<'a>(
    lines: &'a [(usize, String)],
    idx: usize,
    key: &str,
) -> Result<(usize, &'a str), FormatError> {
    let (line_no, content) = lines
        .get(idx)
        .ok_or_else(|| syntax(lines.last().map(|l| l.0).unwrap_or(1), 1, format!("missing `{key}:` header")))?;
    let trimmed = content.trim();
    match trimmed.strip_prefix(&format!("{key}:")) {
        Some(rest) => Ok((*line_no, rest.trim())),
        None => Err(syntax(*line_no, 1, format!("expected `{key}:` header, found `{trimmed}`"))),
    }
}

fn parse_name_list(line_no: usize, rest: &str) -> Result<BTreeSet<String>, FormatError> {
    let mut set = BTreeSet::new();
    if rest.is_empty() {
        return Ok(set);
    }
    for name in rest.split(',') {
        let name = name.trim();
        if name.is_empty() {
            return Err(syntax(line_no, 1, "empty label name in list"));
        }
        if !set.insert(name.to_string()) {
            return Err(syntax(line_no, 1, format!("duplicate label `{name}`")));
        }
    }
    Ok(set)
}

fn parse_label(
    line: usize,
    column: usize,
    tok: &str,
    alphabet: &Alphabet,
    delta_allowed: bool,
) -> Result<Action, FormatError> {
    if tok == DELTA_NAME {
        if !delta_allowed {
            return Err(syntax(
                line,
                column,
                "`delta` transitions are not allowed in plain `lts` files",
            ));
        }
        return Ok(Action::Delta);
    }
    if let Some(name) = tok.strip_suffix('?') {
        if alphabet.inputs.contains(name) {
            return Ok(Action::input(name));
        }
        if alphabet.outputs.contains(name) {
            return Err(syntax(line, column, format!("label `{name}` is declared as an output, not an input")));
        }
        return Err(syntax(line, column, format!("undeclared input `{name}`")));
    }
    if let Some(name) = tok.strip_suffix('!') {
        if alphabet.outputs.contains(name) {
            return Ok(Action::output(name));
        }
        if alphabet.inputs.contains(name) {
            return Err(syntax(line, column, format!("label `{name}` is declared as an input, not an output")));
        }
        return Err(syntax(line, column, format!("undeclared output `{name}`")));
    }
    Err(syntax(
        line,
        column,
        format!("label `{tok}` must end in `?` (input), `!` (output), or be `delta`"),
    ))
}

fn parse_guard(line: usize, column: usize, tok: &str) -> Result<ClockConstraint, FormatError> {
    match tok {
        "[c<M]" => Ok(ClockConstraint::LtM),
        "[c=M]" => Ok(ClockConstraint::EqM),
        _ => Err(syntax(line, column, format!("guard `{tok}` must be `[c<M]` or `[c=M]`"))),
    }
}

/// Parses one model file.
pub fn parse(text: &str) -> Result<Model, FormatError> {
    let lines = content_lines(text);
    let (first_no, first) = lines
        .first()
        .ok_or_else(|| syntax(1, 1, "empty model file"))?;
    let kind = match first.trim() {
        "lts" => Kind::Lts,
        "ta" => Kind::Ta,
        "test lts" => Kind::TestLts,
        "test ta" => Kind::TestTa,
        other => {
            return Err(syntax(
                *first_no,
                1,
                format!("expected `lts`, `ta`, `test lts`, or `test ta`, found `{other}`"),
            ))
        }
    };

    let mut idx = 1;
    let bound = if kind.timed() {
        let (line_no, rest) = parse_header(&lines, idx, "M")?;
        idx += 1;
        let m: Rational = rest
            .parse()
            .map_err(|e| syntax(line_no, 1, format!("{e}")))?;
        Some(m)
    } else {
        None
    };
    let (in_line, in_rest) = parse_header(&lines, idx, "inputs")?;
    let inputs = parse_name_list(in_line, in_rest)?;
    idx += 1;
    let (out_line, out_rest) = parse_header(&lines, idx, "outputs")?;
    let outputs = parse_name_list(out_line, out_rest)?;
    idx += 1;
    let (init_line, init) = parse_header(&lines, idx, "init")?;
    if init.is_empty() {
        return Err(syntax(init_line, 1, "missing initial state name"));
    }
    let initial = init.to_string();
    idx += 1;

    let alphabet = Alphabet { inputs, outputs };
    let delta_allowed = kind.timed() || kind.test();

    let mut lts_transitions: BTreeSet<Transition> = BTreeSet::new();
    let mut ta_transitions: BTreeSet<TimedTransition> = BTreeSet::new();
    let mut invariants: std::collections::BTreeMap<String, ClockConstraint> = Default::default();
    let mut states: BTreeSet<String> = BTreeSet::new();
    states.insert(initial.clone());

    for (line_no, content) in &lines[idx..] {
        let line_no = *line_no;
        if let Some(rest) = content.trim().strip_prefix("inv ") {
            if !kind.timed() {
                return Err(syntax(line_no, 1, "`inv` lines are only allowed in timed files"));
            }
            let (loc, constraint) = rest
                .split_once(':')
                .ok_or_else(|| syntax(line_no, 1, "expected `inv <location>: c<=M`"))?;
            let loc = loc.trim().to_string();
            if constraint.trim() != "c<=M" {
                return Err(syntax(line_no, 1, format!("invariant must be `c<=M`, found `{}`", constraint.trim())));
            }
            if invariants.insert(loc.clone(), ClockConstraint::LeM).is_some() {
                return Err(syntax(line_no, 1, format!("duplicate invariant for `{loc}`")));
            }
            states.insert(loc);
            continue;
        }

        let toks = tokens(content);
        if !kind.timed() {
            if toks.len() != 3 {
                return Err(syntax(
                    line_no,
                    toks.first().map(|t| t.0).unwrap_or(1),
                    "expected `source label target`",
                ));
            }
            let action = parse_label(line_no, toks[1].0, toks[1].1, &alphabet, delta_allowed)?;
            let t = Transition::new(toks[0].1, action, toks[2].1);
            states.insert(t.source.clone());
            states.insert(t.target.clone());
            if !lts_transitions.insert(t) {
                return Err(syntax(line_no, toks[0].0, "duplicate transition"));
            }
        } else {
            if toks.len() != 4 && toks.len() != 5 {
                return Err(syntax(
                    line_no,
                    toks.first().map(|t| t.0).unwrap_or(1),
                    "expected `source label [guard] {c} target`",
                ));
            }
            let action = parse_label(line_no, toks[1].0, toks[1].1, &alphabet, true)?;
            let guard = parse_guard(line_no, toks[2].0, toks[2].1)?;
            let (resets_clock, target_tok) = if toks.len() == 5 {
                if toks[3].1 != "{c}" {
                    return Err(syntax(line_no, toks[3].0, format!("reset `{}` must be `{{c}}`", toks[3].1)));
                }
                (true, toks[4])
            } else {
                (false, toks[3])
            };
            let t = TimedTransition {
                source: toks[0].1.to_string(),
                action,
                guard,
                resets_clock,
                target: target_tok.1.to_string(),
            };
            states.insert(t.source.clone());
            states.insert(t.target.clone());
            if !ta_transitions.insert(t) {
                return Err(syntax(line_no, toks[0].0, "duplicate transition"));
            }
        }
    }

    match kind {
        Kind::Lts => {
            let lts = Lts {
                states,
                initial,
                alphabet,
                transitions: lts_transitions,
                delta_style: DeltaStyle::Derived,
            };
            let violations = lts.validate();
            if !violations.is_empty() {
                return Err(ModelError::Invalid(violations.join("; ")).into());
            }
            Ok(Model::Lts(lts))
        }
        Kind::TestLts => {
            states.insert(PASS_STATE.to_string());
            states.insert(FAIL_STATE.to_string());
            let lts = Lts {
                states,
                initial,
                alphabet,
                transitions: lts_transitions,
                delta_style: DeltaStyle::Explicit,
            };
            Ok(Model::Test(TestCase::from_lts(lts)?))
        }
        Kind::Ta => {
            let ta = TimedAutomaton {
                locations: states,
                initial,
                alphabet,
                bound: bound.expect("timed kind parsed a bound"),
                invariants,
                transitions: ta_transitions,
            };
            let violations = ta.validate_canonic();
            if !violations.is_empty() {
                return Err(ModelError::NotCanonic(violations.join("; ")).into());
            }
            Ok(Model::TimedAutomaton(ta))
        }
        Kind::TestTa => {
            states.insert(PASS_STATE.to_string());
            states.insert(FAIL_STATE.to_string());
            let ta = TimedAutomaton {
                locations: states,
                initial,
                alphabet,
                bound: bound.expect("timed kind parsed a bound"),
                invariants,
                transitions: ta_transitions,
            };
            Ok(Model::TimedTest(TimedTestCase::from_ta(ta)?))
        }
    }
}

// ---------------------------------------------------------------------------
// Serialization
// ---------------------------------------------------------------------------

fn write_alphabet(out: &mut String, alphabet: &Alphabet) {
    let inputs: Vec<&str> = alphabet.inputs.iter().map(|s| s.as_str()).collect();
    let outputs: Vec<&str> = alphabet.outputs.iter().map(|s| s.as_str()).collect();
    if inputs.is_empty() {
        out.push_str("inputs:\n");
    } else {
        let _ = writeln!(out, "inputs: {}", inputs.join(", "));
    }
    if outputs.is_empty() {
        out.push_str("outputs:\n");
    } else {
        let _ = writeln!(out, "outputs: {}", outputs.join(", "));
    }
}

fn write_lts_body(out: &mut String, lts: &Lts, include_delta: bool) {
    let _ = writeln!(out, "init: {}", lts.initial);
    for t in &lts.transitions {
        if t.action.is_delta() && !include_delta {
            continue;
        }
        let _ = writeln!(out, "{} {} {}", t.source, t.action.file_token(), t.target);
    }
}

/// Serializes a plain transition system.
///
/// A model with materialized δ-edges serializes iff those edges are exactly
/// the derived view (one self-loop per quiescent state), which holds for
/// every projection of a lifted automaton; the δ-edges are then dropped and
/// re-derived on parse.
pub fn serialize_lts(lts: &Lts) -> Result<String, ModelError> {
    if lts.delta_style == DeltaStyle::Explicit {
        let delta_edges: BTreeSet<(String, String)> = lts
            .transitions
            .iter()
            .filter(|t| t.action.is_delta())
            .map(|t| (t.source.clone(), t.target.clone()))
            .collect();
        let derived: BTreeSet<(String, String)> = lts
            .states
            .iter()
            .filter(|s| {
                !lts.transitions
                    .iter()
                    .any(|t| &&t.source == s && t.action.is_output())
            })
            .map(|s| (s.clone(), s.clone()))
            .collect();
        if delta_edges != derived {
            return Err(ModelError::Invalid(
                "explicit delta edges are not derivable from quiescence; only test files may \
                 carry free-form delta transitions"
                    .to_string(),
            ));
        }
    }
    let mut out = String::from("lts\n");
    write_alphabet(&mut out, &lts.alphabet);
    write_lts_body(&mut out, lts, false);
    Ok(out)
}

fn write_ta_body(out: &mut String, ta: &TimedAutomaton) {
    let _ = writeln!(out, "M: {}", ta.bound);
    write_alphabet(out, &ta.alphabet);
    let _ = writeln!(out, "init: {}", ta.initial);
    for (loc, c) in &ta.invariants {
        debug_assert_eq!(*c, ClockConstraint::LeM);
        let _ = writeln!(out, "inv {loc}: c<=M");
    }
    for t in &ta.transitions {
        let guard = match t.guard {
            ClockConstraint::LtM => "[c<M]",
            ClockConstraint::EqM => "[c=M]",
            ClockConstraint::LeM => "[c<=M]",
        };
        let reset = if t.resets_clock { " {c}" } else { "" };
        let _ = writeln!(
            out,
            "{} {} {}{} {}",
            t.source,
            t.action.file_token(),
            guard,
            reset,
            t.target
        );
    }
}

/// Serializes a timed automaton.
pub fn serialize_ta(ta: &TimedAutomaton) -> String {
    let mut out = String::from("ta\n");
    write_ta_body(&mut out, ta);
    out
}

/// Serializes an untimed test case.
pub fn serialize_test(test: &TestCase) -> String {
    let mut out = String::from("test lts\n");
    let lts = test.as_lts();
    write_alphabet(&mut out, &lts.alphabet);
    write_lts_body(&mut out, lts, true);
    out
}

/// Serializes a timed test case.
pub fn serialize_timed_test(test: &TimedTestCase) -> String {
    let mut out = String::from("test ta\n");
    write_ta_body(&mut out, test.as_ta());
    out
}

/// Serializes any model.
pub fn serialize(model: &Model) -> Result<String, ModelError> {
    match model {
        Model::Lts(m) => serialize_lts(m),
        Model::TimedAutomaton(ta) => Ok(serialize_ta(ta)),
        Model::Test(t) => Ok(serialize_test(t)),
        Model::TimedTest(t) => Ok(serialize_timed_test(t)),
    }
}
