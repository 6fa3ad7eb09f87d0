//! Canonic single-clock timed automata and their exact symbolic semantics.
//!
//! A canonic automaton has one clock `c` that is reset on every transition,
//! the invariant `c <= M` on every location, guard `c < M` on action edges
//! and `c = M` on δ edges. Under that shape every delay in `[0, M)` is
//! interchangeable and `M` is a singleton class, so real-valued delays are
//! quotiented into the two-element [`DelayClass`]. The quotient is exact;
//! a concrete rational-delay interpreter cross-checks it in the oracle
//! batteries rather than being assumed.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::action::{is_valid_name, Action, Alphabet};
use crate::error::ModelError;
use crate::rational::Rational;

/// Canonically ordered set of location names of one [`TimedAutomaton`].
pub type LocationSet = BTreeSet<String>;

/// The constraint forms over the unique clock `c` admitted by the canonic
/// fragment: `c < M`, `c = M`, `c <= M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ClockConstraint {
    LtM,
    EqM,
    LeM,
}

impl fmt::Display for ClockConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClockConstraint::LtM => write!(f, "c<M"),
            ClockConstraint::EqM => write!(f, "c=M"),
            ClockConstraint::LeM => write!(f, "c<=M"),
        }
    }
}

/// Symbolic class of a delay: anywhere in `[0, M)`, or exactly `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DelayClass {
    BeforeM,
    AtM,
}

impl DelayClass {
    /// Whether a transition guard admits a delay of this class.
    pub fn admitted_by(self, guard: ClockConstraint) -> bool {
        matches!(
            (guard, self),
            (ClockConstraint::LtM, DelayClass::BeforeM)
                | (ClockConstraint::EqM, DelayClass::AtM)
                | (ClockConstraint::LeM, _)
        )
    }
}

impl fmt::Display for DelayClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DelayClass::BeforeM => write!(f, "<M"),
            DelayClass::AtM => write!(f, "M"),
        }
    }
}

/// One step of a symbolic timed trace.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TimedStep {
    pub class: DelayClass,
    pub action: Action,
}

impl TimedStep {
    pub fn before(action: Action) -> Self {
        TimedStep {
            class: DelayClass::BeforeM,
            action,
        }
    }

    pub fn at_m(action: Action) -> Self {
        TimedStep {
            class: DelayClass::AtM,
            action,
        }
    }
}

impl fmt::Display for TimedStep {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.class, self.action)
    }
}

/// A finite sequence of symbolic steps.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TimedTrace(pub Vec<TimedStep>);

impl TimedTrace {
    pub fn empty() -> Self {
        TimedTrace(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn extended(&self, s: TimedStep) -> Self {
        let mut v = self.0.clone();
        v.push(s);
        TimedTrace(v)
    }

    pub fn is_prefix_of(&self, other: &TimedTrace) -> bool {
        self.0.len() <= other.0.len() && other.0[..self.0.len()] == self.0[..]
    }
}

impl fmt::Display for TimedTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for (i, s) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Set of symbolic output observations: pairs over outputs plus δ.
pub type SymbolicOut = BTreeSet<TimedStep>;

/// One guarded, clock-resetting transition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TimedTransition {
    pub source: String,
    pub action: Action,
    pub guard: ClockConstraint,
    pub resets_clock: bool,
    pub target: String,
}

impl TimedTransition {
    pub fn new(
        source: impl Into<String>,
        action: Action,
        guard: ClockConstraint,
        target: impl Into<String>,
    ) -> Self {
        TimedTransition {
            source: source.into(),
            action,
            guard,
            resets_clock: true,
            target: target.into(),
        }
    }
}

/// A single-clock timed automaton over a partitioned alphabet plus δ.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TimedAutomaton {
    pub locations: BTreeSet<String>,
    pub initial: String,
    pub alphabet: Alphabet,
    pub bound: Rational,
    /// Location invariants; a location absent from the map has none, which
    /// is legal only for the pass/fail sinks of timed test cases.
    pub invariants: BTreeMap<String, ClockConstraint>,
    pub transitions: BTreeSet<TimedTransition>,
}

impl TimedAutomaton {
    /// Violations of the canonic shape. Empty means the automaton is canonic.
    pub fn validate_canonic(&self) -> Vec<String> {
        let mut v = self.shape_violations(&BTreeSet::new());
        for t in &self.transitions {
            if t.action.is_delta() {
                if t.source != t.target {
                    v.push(format!(
                        "delta transition `{} -> {}` is not a self-loop",
                        t.source, t.target
                    ));
                } else if !self.location_quiescent(&t.source) {
                    v.push(format!(
                        "delta self-loop at non-quiescent location `{}`",
                        t.source
                    ));
                }
            }
        }
        v
    }

    /// Shape checks shared with timed test cases: endpoints, labels, bound,
    /// resets, guard-by-label discipline, and `c <= M` invariants everywhere
    /// except the listed locations (which must then have no invariant).
    pub(crate) fn shape_violations(&self, invariant_exempt: &BTreeSet<String>) -> Vec<String> {
        let mut v = self.alphabet.violations();
        for l in &self.locations {
            if !is_valid_name(l) {
                v.push(format!("invalid location name `{l}`"));
            }
        }
        if !self.locations.contains(&self.initial) {
            v.push(format!(
                "initial location `{}` is not a declared location",
                self.initial
            ));
        }
        if !self.bound.is_positive() {
            v.push(format!("bound M must be positive, got `{}`", self.bound));
        }
        for l in &self.locations {
            match (self.invariants.get(l), invariant_exempt.contains(l)) {
                (Some(ClockConstraint::LeM), false) => {}
                (Some(c), false) => v.push(format!("location `{l}` has invariant `{c}`, expected `c<=M`")),
                (None, false) => v.push(format!("location `{l}` is missing the `c<=M` invariant")),
                (None, true) => {}
                (Some(c), true) => v.push(format!("sink location `{l}` must carry no invariant, has `{c}`")),
            }
        }
        for (l, _) in &self.invariants {
            if !self.locations.contains(l) {
                v.push(format!("invariant on undeclared location `{l}`"));
            }
        }
        for t in &self.transitions {
            if !self.locations.contains(&t.source) {
                v.push(format!("transition from undeclared location `{}`", t.source));
            }
            if !self.locations.contains(&t.target) {
                v.push(format!("transition to undeclared location `{}`", t.target));
            }
            if !t.action.is_delta() && !self.alphabet.contains(&t.action) {
                v.push(format!("transition label `{}` is not in the alphabet", t.action));
            }
            if !t.resets_clock {
                v.push(format!(
                    "transition `{} {} {}` does not reset the clock",
                    t.source,
                    t.action.file_token(),
                    t.target
                ));
            }
            let expected = if t.action.is_delta() {
                ClockConstraint::EqM
            } else {
                ClockConstraint::LtM
            };
            if t.guard != expected {
                v.push(format!(
                    "transition `{} {} {}` has guard `{}`, expected `{}`",
                    t.source,
                    t.action.file_token(),
                    t.target,
                    t.guard,
                    expected
                ));
            }
        }
        v
    }

    pub(crate) fn ensure_canonic(&self) -> Result<(), ModelError> {
        let v = self.validate_canonic();
        if v.is_empty() {
            Ok(())
        } else {
            Err(ModelError::NotCanonic(v.join("; ")))
        }
    }

    fn location_quiescent(&self, l: &str) -> bool {
        !self
            .transitions
            .iter()
            .any(|t| t.source == l && t.action.is_output())
    }

    /// True iff no output-labelled transition leaves `l`. In the canonic
    /// fragment the guard `c < M` is always satisfiable, so quiescence
    /// reduces to edge absence.
    pub fn is_quiescent_location(&self, l: &str) -> Result<bool, ModelError> {
        if !self.locations.contains(l) {
            return Err(ModelError::UnknownState(l.to_string()));
        }
        Ok(self.location_quiescent(l))
    }

    /// Locations reached from `q` by one symbolic step: edges whose label
    /// matches and whose guard admits the step's delay class.
    pub fn after_m(&self, q: &LocationSet, step: &TimedStep) -> Result<LocationSet, ModelError> {
        if !self.alphabet.contains(&step.action) {
            return Err(ModelError::UnknownLabel(step.action.to_string()));
        }
        Ok(self.step_m(q, step))
    }

    pub(crate) fn step_m(&self, q: &LocationSet, step: &TimedStep) -> LocationSet {
        let mut next = LocationSet::new();
        for t in &self.transitions {
            if q.contains(&t.source) && t.action == step.action && step.class.admitted_by(t.guard) {
                next.insert(t.target.clone());
            }
        }
        next
    }

    /// Folds [`TimedAutomaton::after_m`] over a trace.
    pub fn after_trace_m(&self, q: &LocationSet, trace: &TimedTrace) -> Result<LocationSet, ModelError> {
        let mut cur = q.clone();
        for s in &trace.0 {
            cur = self.after_m(&cur, s)?;
            if cur.is_empty() {
                break;
            }
        }
        Ok(cur)
    }

    /// Symbolic output observations enabled in `q`.
    pub fn out_m(&self, q: &LocationSet) -> SymbolicOut {
        let mut out = SymbolicOut::new();
        for t in &self.transitions {
            if !q.contains(&t.source) {
                continue;
            }
            if t.action.is_output() || t.action.is_delta() {
                for class in [DelayClass::BeforeM, DelayClass::AtM] {
                    if class.admitted_by(t.guard) {
                        out.insert(TimedStep {
                            class,
                            action: t.action.clone(),
                        });
                    }
                }
            }
        }
        out
    }

    /// Inputs with at least one edge out of `q`.
    pub fn in_m(&self, q: &LocationSet) -> BTreeSet<Action> {
        self.transitions
            .iter()
            .filter(|t| q.contains(&t.source) && t.action.is_input())
            .map(|t| t.action.clone())
            .collect()
    }

    /// True iff every location enables every declared input.
    pub fn is_iota(&self) -> bool {
        self.first_input_gap().is_none()
    }

    pub(crate) fn first_input_gap(&self) -> Option<(String, String)> {
        for l in &self.locations {
            for i in &self.alphabet.inputs {
                let enables = self
                    .transitions
                    .iter()
                    .any(|t| &t.source == l && t.action.is_input() && t.action.name() == i);
                if !enables {
                    return Some((l.clone(), i.clone()));
                }
            }
        }
        None
    }

    pub fn initial_set(&self) -> LocationSet {
        std::iter::once(self.initial.clone()).collect()
    }

    /// All steps enabled somewhere in `q`, in canonical action-then-class
    /// order. Exploration helpers iterate successors in this order.
    pub(crate) fn enabled_steps(&self, q: &LocationSet) -> Vec<TimedStep> {
        let mut steps = Vec::new();
        for action in self.alphabet.suspension_actions() {
            for class in [DelayClass::BeforeM, DelayClass::AtM] {
                let step = TimedStep {
                    class,
                    action: action.clone(),
                };
                if !self.step_m(q, &step).is_empty() {
                    steps.push(step);
                }
            }
        }
        steps
    }

    /// Exactly the symbolic suspended traces of length at most `depth`.
    pub fn sttraces_upto(&self, depth: usize) -> BTreeSet<TimedTrace> {
        let mut found = BTreeSet::new();
        let mut frontier = VecDeque::new();
        found.insert(TimedTrace::empty());
        frontier.push_back((TimedTrace::empty(), self.initial_set()));
        while let Some((trace, q)) = frontier.pop_front() {
            if trace.len() == depth {
                continue;
            }
            for step in self.enabled_steps(&q) {
                let next = self.step_m(&q, &step);
                let ext = trace.extended(step);
                found.insert(ext.clone());
                frontier.push_back((ext, next));
            }
        }
        found
    }
}
