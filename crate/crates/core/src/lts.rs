//! Labelled transition systems with quiescence: validation, input-enabledness,
//! after-sets, in/out-sets, and bounded suspension-trace enumeration.
//!
//! Nondeterminism is handled by an eager subset construction: all per-state
//! notions are lifted to canonically ordered state sets. Quiescence (δ) is a
//! derived observation on plain models; models produced by projecting a timed
//! automaton, and test trees, instead carry explicit δ-edges.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use crate::action::{is_valid_name, Action, Alphabet};
use crate::error::{summarize, ModelError};

/// Canonically ordered set of state names of one [`Lts`].
pub type StateSet = BTreeSet<String>;

/// How a model observes quiescence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DeltaStyle {
    /// δ is derived: a state is quiescent iff it enables no output.
    Derived,
    /// δ-edges are materialized in the transition relation (projected
    /// automata and test trees).
    Explicit,
}

/// One labelled transition.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Transition {
    pub source: String,
    pub action: Action,
    pub target: String,
}

impl Transition {
    pub fn new(source: impl Into<String>, action: Action, target: impl Into<String>) -> Self {
        Transition {
            source: source.into(),
            action,
            target: target.into(),
        }
    }
}

/// A finite labelled transition system with a partitioned alphabet.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Lts {
    pub states: BTreeSet<String>,
    pub initial: String,
    pub alphabet: Alphabet,
    pub transitions: BTreeSet<Transition>,
    pub delta_style: DeltaStyle,
}

/// A finite sequence over the actions plus δ.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SuspensionTrace(pub Vec<Action>);

impl SuspensionTrace {
    pub fn empty() -> Self {
        SuspensionTrace(Vec::new())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, a: Action) {
        self.0.push(a);
    }

    pub fn extended(&self, a: Action) -> Self {
        let mut v = self.0.clone();
        v.push(a);
        SuspensionTrace(v)
    }

    /// Positional prefix relation.
    pub fn is_prefix_of(&self, other: &SuspensionTrace) -> bool {
        self.0.len() <= other.0.len() && other.0[..self.0.len()] == self.0[..]
    }
}

impl fmt::Display for SuspensionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

impl Lts {
    /// Structural violations against the model invariants. Empty means valid.
    pub fn validate(&self) -> Vec<String> {
        let mut v = self.alphabet.violations();
        for s in &self.states {
            if !is_valid_name(s) {
                v.push(format!("invalid state name `{s}`"));
            }
        }
        if !self.states.contains(&self.initial) {
            v.push(format!("initial state `{}` is not a declared state", self.initial));
        }
        for t in &self.transitions {
            if !self.states.contains(&t.source) {
                v.push(format!("transition from undeclared state `{}`", t.source));
            }
            if !self.states.contains(&t.target) {
                v.push(format!("transition to undeclared state `{}`", t.target));
            }
            match &t.action {
                Action::Delta => {
                    if self.delta_style == DeltaStyle::Derived {
                        v.push(format!(
                            "explicit delta transition `{} -> {}` in a plain model",
                            t.source, t.target
                        ));
                    }
                }
                a => {
                    if !self.alphabet.contains(a) {
                        v.push(format!("transition label `{}` is not in the alphabet", a));
                    }
                }
            }
        }
        v
    }

    fn ensure_valid(&self) -> Result<(), ModelError> {
        let v = self.validate();
        if v.is_empty() {
            Ok(())
        } else {
            Err(ModelError::Invalid(summarize(&v)))
        }
    }

    fn ensure_state(&self, s: &str) -> Result<(), ModelError> {
        if self.states.contains(s) {
            Ok(())
        } else {
            Err(ModelError::UnknownState(s.to_string()))
        }
    }

    /// True iff every state enables every declared input.
    pub fn is_input_enabled(&self) -> Result<bool, ModelError> {
        self.ensure_valid()?;
        Ok(self.first_input_gap().is_none())
    }

    /// First (state, input) pair missing an outgoing transition, if any.
    pub(crate) fn first_input_gap(&self) -> Option<(String, String)> {
        for s in &self.states {
            for i in &self.alphabet.inputs {
                let enables = self
                    .transitions
                    .iter()
                    .any(|t| &t.source == s && t.action.name() == i && t.action.is_input());
                if !enables {
                    return Some((s.clone(), i.clone()));
                }
            }
        }
        None
    }

    /// True iff `s` has no outgoing output-labelled transition.
    pub fn is_quiescent_state(&self, s: &str) -> Result<bool, ModelError> {
        self.ensure_state(s)?;
        Ok(self.quiescent(s))
    }

    fn quiescent(&self, s: &str) -> bool {
        !self
            .transitions
            .iter()
            .any(|t| t.source == s && t.action.is_output())
    }

    /// δ is observable at `s`: derived quiescence on plain models, presence
    /// of a δ-edge on explicit-δ models.
    fn delta_enabled(&self, s: &str) -> bool {
        match self.delta_style {
            DeltaStyle::Derived => self.quiescent(s),
            DeltaStyle::Explicit => self
                .transitions
                .iter()
                .any(|t| t.source == s && t.action.is_delta()),
        }
    }

    /// Union of outputs (plus δ where observable) enabled in `q`.
    pub fn out_set(&self, q: &StateSet) -> BTreeSet<Action> {
        let mut out = BTreeSet::new();
        for s in q {
            for t in self.transitions.iter().filter(|t| &t.source == s) {
                if t.action.is_output() {
                    out.insert(t.action.clone());
                }
            }
            if self.delta_enabled(s) {
                out.insert(Action::Delta);
            }
        }
        out
    }

    /// Union of inputs enabled in `q`.
    pub fn in_set(&self, q: &StateSet) -> BTreeSet<Action> {
        let mut inp = BTreeSet::new();
        for s in q {
            for t in self.transitions.iter().filter(|t| &t.source == s) {
                if t.action.is_input() {
                    inp.insert(t.action.clone());
                }
            }
        }
        inp
    }

    /// States reachable from `q` by one step of `a`.
    ///
    /// For `a = δ` on a plain model this is the quiescent subset of `q`;
    /// on explicit-δ models the δ-edges are followed.
    pub fn after(&self, q: &StateSet, a: &Action) -> Result<StateSet, ModelError> {
        if !self.alphabet.contains(a) {
            return Err(ModelError::UnknownLabel(a.to_string()));
        }
        Ok(self.step(q, a))
    }

    pub(crate) fn step(&self, q: &StateSet, a: &Action) -> StateSet {
        if a.is_delta() && self.delta_style == DeltaStyle::Derived {
            return q.iter().filter(|s| self.quiescent(s)).cloned().collect();
        }
        let mut next = StateSet::new();
        for t in &self.transitions {
            if q.contains(&t.source) && &t.action == a {
                next.insert(t.target.clone());
            }
        }
        next
    }

    /// Folds [`Lts::after`] over a trace, starting at `q`.
    pub fn after_trace(&self, q: &StateSet, trace: &SuspensionTrace) -> Result<StateSet, ModelError> {
        let mut cur = q.clone();
        for a in &trace.0 {
            cur = self.after(&cur, a)?;
            if cur.is_empty() {
                break;
            }
        }
        Ok(cur)
    }

    pub fn initial_set(&self) -> StateSet {
        std::iter::once(self.initial.clone()).collect()
    }

    /// Exactly the suspension traces of length at most `depth`, in canonical
    /// order.
    pub fn straces_upto(&self, depth: usize) -> BTreeSet<SuspensionTrace> {
        let actions = self.alphabet.suspension_actions();
        let mut found = BTreeSet::new();
        let mut frontier = VecDeque::new();
        frontier.push_back((SuspensionTrace::empty(), self.initial_set()));
        found.insert(SuspensionTrace::empty());
        while let Some((trace, q)) = frontier.pop_front() {
            if trace.len() == depth {
                continue;
            }
            for a in &actions {
                let next = self.step(&q, a);
                if !next.is_empty() {
                    let ext = trace.extended(a.clone());
                    found.insert(ext.clone());
                    frontier.push_back((ext, next));
                }
            }
        }
        found
    }

    /// Per-state successor map, handy for reachability sweeps.
    pub(crate) fn successors<'a>(&'a self, s: &'a str) -> impl Iterator<Item = &'a Transition> {
        self.transitions.iter().filter(move |t| t.source == s)
    }

    /// States reachable from the initial state over the transition relation.
    pub fn reachable_states(&self) -> BTreeSet<String> {
        let mut seen: BTreeSet<String> = BTreeSet::new();
        let mut stack = vec![self.initial.clone()];
        while let Some(s) = stack.pop() {
            if !seen.insert(s.clone()) {
                continue;
            }
            for t in self.successors(&s) {
                if !seen.contains(&t.target) {
                    stack.push(t.target.clone());
                }
            }
        }
        seen
    }

}
