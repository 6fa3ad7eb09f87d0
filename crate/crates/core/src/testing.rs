//! Test cases for transition systems and timed automata: structural and
//! specification-relative validation, exhaustive and randomized generation,
//! lifting of untimed tests, and verdict execution.
//!
//! A test case is a deterministic, tree-shaped model with reserved `pass`
//! and `fail` sinks. Every internal node either *observes* (enables all
//! outputs plus δ) or *stimulates* (enables one input alongside all
//! outputs, racing the implementation). Generation resolves the
//! stop/observe/stimulate choice at every node up to a depth budget:
//! observations the specification forbids route to `fail`, allowed branches
//! recurse until the budget is exhausted and then `pass`.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::rc::Rc;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::action::{Action, Alphabet, DELTA_NAME, FAIL_STATE, PASS_STATE};
use crate::error::{summarize, ModelError};
use crate::lts::{DeltaStyle, Lts, StateSet, SuspensionTrace, Transition};
use crate::rational::Rational;
use crate::ta::{
    ClockConstraint, TimedAutomaton, TimedStep, TimedTrace, TimedTransition,
};

/// A structurally valid untimed test case.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TestCase {
    lts: Lts,
}

/// A structurally valid timed test case.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TimedTestCase {
    ta: TimedAutomaton,
}

/// Outcome of running one untimed test against an implementation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail { witness: SuspensionTrace },
}

/// Outcome of running one timed test against an implementation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TimedVerdict {
    Pass,
    Fail { witness: TimedTrace },
}

/// How to resolve the generation choice points.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenerationMode {
    /// Emit every resolution of every choice point up to the depth budget.
    Exhaustive,
    /// Draw `count` tests, resolving each choice uniformly with a ChaCha8
    /// generator keyed by `seed`.
    Random { seed: u64, count: usize },
}

// ---------------------------------------------------------------------------
// Structural validation
// ---------------------------------------------------------------------------

/// Graph-shape checks shared by both test flavours, on (source, action,
/// target) triples.
fn tree_violations(
    root: &str,
    states: &BTreeSet<String>,
    edges: &[(String, Action, String)],
    alphabet: &Alphabet,
) -> Vec<String> {
    let mut v = Vec::new();
    let special = [PASS_STATE, FAIL_STATE];

    for s in states {
        if s == DELTA_NAME {
            v.push(format!("state name `{DELTA_NAME}` is reserved"));
        }
    }
    for (s, _, _) in edges.iter().filter(|(s, _, _)| special.contains(&s.as_str())) {
        v.push(format!("sink state `{s}` has an outgoing transition"));
    }

    // Determinism: at most one edge per (state, action).
    let mut seen = BTreeSet::new();
    for (s, a, _) in edges {
        if !seen.insert((s.clone(), a.clone())) {
            v.push(format!("state `{s}` has two transitions labelled `{a}`"));
        }
    }

    // Tree shape: the root has no incoming edge, every other non-sink state
    // exactly one, and everything is reachable from the root.
    let mut incoming: BTreeMap<&str, usize> = BTreeMap::new();
    for (_, _, t) in edges {
        *incoming.entry(t.as_str()).or_insert(0) += 1;
    }
    if incoming.get(root).copied().unwrap_or(0) > 0 {
        v.push(format!("root `{root}` has an incoming transition"));
    }
    for s in states {
        if s == root || special.contains(&s.as_str()) {
            continue;
        }
        match incoming.get(s.as_str()).copied().unwrap_or(0) {
            1 => {}
            n => v.push(format!("state `{s}` has {n} incoming transitions, expected 1")),
        }
    }
    let mut reachable: BTreeSet<&str> = BTreeSet::new();
    let mut stack = vec![root];
    while let Some(s) = stack.pop() {
        if !reachable.insert(s) {
            continue;
        }
        for (src, _, tgt) in edges {
            if src == s && !reachable.contains(tgt.as_str()) {
                stack.push(tgt);
            }
        }
    }
    for s in states {
        if !reachable.contains(s.as_str()) && !special.contains(&s.as_str()) {
            v.push(format!("state `{s}` is unreachable from the root"));
        }
    }

    // Branch discipline: observe-nodes enable all outputs plus δ and no
    // input, stimulate-nodes enable all outputs and exactly one input.
    for s in states {
        if special.contains(&s.as_str()) || !reachable.contains(s.as_str()) {
            continue;
        }
        let mut ins = BTreeSet::new();
        let mut outs = BTreeSet::new();
        let mut has_delta = false;
        for (src, a, _) in edges {
            if src != s {
                continue;
            }
            match a {
                Action::Input(n) => {
                    ins.insert(n.clone());
                }
                Action::Output(n) => {
                    outs.insert(n.clone());
                }
                Action::Delta => has_delta = true,
            }
        }
        let observe = ins.is_empty() && outs == alphabet.outputs && has_delta;
        let stimulate = ins.len() == 1 && outs == alphabet.outputs && !has_delta;
        if !(observe || stimulate) {
            v.push(format!(
                "state `{s}` must observe all outputs plus δ, or stimulate one input \
                 alongside all outputs"
            ));
        }
    }
    v
}

impl TestCase {
    /// Wraps a transition system as a test case, checking the structural
    /// invariants: tree shape, determinism, sink discipline, and the
    /// observe/stimulate branch rule.
    pub fn from_lts(mut lts: Lts) -> Result<Self, ModelError> {
        lts.delta_style = DeltaStyle::Explicit;
        lts.states.insert(PASS_STATE.to_string());
        lts.states.insert(FAIL_STATE.to_string());
        let mut v = lts.validate();
        let edges: Vec<_> = lts
            .transitions
            .iter()
            .map(|t| (t.source.clone(), t.action.clone(), t.target.clone()))
            .collect();
        v.extend(tree_violations(&lts.initial, &lts.states, &edges, &lts.alphabet));
        if v.is_empty() {
            Ok(TestCase { lts })
        } else {
            Err(ModelError::InvalidTest(summarize(&v)))
        }
    }

    /// Wraps without revalidating; for values whose structure is guaranteed
    /// by construction (generation, canonicalization, projection).
    pub(crate) fn trusted(lts: Lts) -> Self {
        TestCase { lts }
    }

    pub fn as_lts(&self) -> &Lts {
        &self.lts
    }

    pub fn root(&self) -> &str {
        &self.lts.initial
    }

    /// Renames the internal nodes `n0, n1, ...` in breadth-first order with
    /// children visited in canonical action order. Isomorphic tests thus
    /// serialize identically.
    pub fn canonicalize(&self) -> TestCase {
        let mut rename: BTreeMap<String, String> = BTreeMap::new();
        rename.insert(PASS_STATE.to_string(), PASS_STATE.to_string());
        rename.insert(FAIL_STATE.to_string(), FAIL_STATE.to_string());
        let mut queue = VecDeque::from([self.lts.initial.clone()]);
        let mut next_id = 0usize;
        while let Some(s) = queue.pop_front() {
            if rename.contains_key(&s) {
                continue;
            }
            rename.insert(s.clone(), format!("n{next_id}"));
            next_id += 1;
            let mut children: Vec<_> = self
                .lts
                .transitions
                .iter()
                .filter(|t| t.source == s)
                .collect();
            children.sort_by(|a, b| a.action.cmp(&b.action));
            for t in children {
                queue.push_back(t.target.clone());
            }
        }
        let mut states: BTreeSet<String> = rename.values().cloned().collect();
        states.insert(PASS_STATE.to_string());
        states.insert(FAIL_STATE.to_string());
        let lts = Lts {
            states,
            initial: rename[&self.lts.initial].clone(),
            alphabet: self.lts.alphabet.clone(),
            transitions: self
                .lts
                .transitions
                .iter()
                .map(|t| Transition::new(rename[&t.source].clone(), t.action.clone(), rename[&t.target].clone()))
                .collect(),
            delta_style: DeltaStyle::Explicit,
        };
        TestCase::trusted(lts)
    }

    /// Canonical textual form, the equality key for suites.
    pub fn canonical_key(&self) -> String {
        crate::format::serialize_test(&self.canonicalize())
    }
}

impl TimedTestCase {
    /// Wraps a timed automaton as a timed test case. Guards must follow the
    /// canonic discipline, every internal location carries `c <= M`, and the
    /// sinks carry no invariant.
    pub fn from_ta(ta: TimedAutomaton) -> Result<Self, ModelError> {
        let exempt: BTreeSet<String> = [PASS_STATE.to_string(), FAIL_STATE.to_string()]
            .into_iter()
            .collect();
        let mut ta = ta;
        ta.locations.insert(PASS_STATE.to_string());
        ta.locations.insert(FAIL_STATE.to_string());
        let mut v = ta.shape_violations(&exempt);
        let edges: Vec<_> = ta
            .transitions
            .iter()
            .map(|t| (t.source.clone(), t.action.clone(), t.target.clone()))
            .collect();
        v.extend(tree_violations(&ta.initial, &ta.locations, &edges, &ta.alphabet));
        if v.is_empty() {
            Ok(TimedTestCase { ta })
        } else {
            Err(ModelError::InvalidTest(summarize(&v)))
        }
    }

    pub(crate) fn trusted(ta: TimedAutomaton) -> Self {
        TimedTestCase { ta }
    }

    pub fn as_ta(&self) -> &TimedAutomaton {
        &self.ta
    }

    pub fn root(&self) -> &str {
        &self.ta.initial
    }

    pub fn bound(&self) -> Rational {
        self.ta.bound
    }

    /// Drops guards, invariants, and resets, recovering the untimed test.
    pub fn project(&self) -> TestCase {
        let lts = Lts {
            states: self.ta.locations.clone(),
            initial: self.ta.initial.clone(),
            alphabet: self.ta.alphabet.clone(),
            transitions: self
                .ta
                .transitions
                .iter()
                .map(|t| Transition::new(t.source.clone(), t.action.clone(), t.target.clone()))
                .collect(),
            delta_style: DeltaStyle::Explicit,
        };
        TestCase::trusted(lts)
    }

    /// Breadth-first renaming, mirroring [`TestCase::canonicalize`].
    pub fn canonicalize(&self) -> TimedTestCase {
        let mut rename: BTreeMap<String, String> = BTreeMap::new();
        rename.insert(PASS_STATE.to_string(), PASS_STATE.to_string());
        rename.insert(FAIL_STATE.to_string(), FAIL_STATE.to_string());
        let mut queue = VecDeque::from([self.ta.initial.clone()]);
        let mut next_id = 0usize;
        while let Some(l) = queue.pop_front() {
            if rename.contains_key(&l) {
                continue;
            }
            rename.insert(l.clone(), format!("n{next_id}"));
            next_id += 1;
            let mut children: Vec<_> = self
                .ta
                .transitions
                .iter()
                .filter(|t| t.source == l)
                .collect();
            children.sort_by(|a, b| a.action.cmp(&b.action));
            for t in children {
                queue.push_back(t.target.clone());
            }
        }
        let mut locations: BTreeSet<String> = rename.values().cloned().collect();
        locations.insert(PASS_STATE.to_string());
        locations.insert(FAIL_STATE.to_string());
        let ta = TimedAutomaton {
            locations,
            initial: rename[&self.ta.initial].clone(),
            alphabet: self.ta.alphabet.clone(),
            bound: self.ta.bound,
            invariants: self
                .ta
                .invariants
                .iter()
                .filter_map(|(l, c)| rename.get(l).map(|r| (r.clone(), *c)))
                .collect(),
            transitions: self
                .ta
                .transitions
                .iter()
                .map(|t| TimedTransition {
                    source: rename[&t.source].clone(),
                    action: t.action.clone(),
                    guard: t.guard,
                    resets_clock: t.resets_clock,
                    target: rename[&t.target].clone(),
                })
                .collect(),
        };
        TimedTestCase::trusted(ta)
    }

    pub fn canonical_key(&self) -> String {
        crate::format::serialize_timed_test(&self.canonicalize())
    }
}

/// Checks an untimed test against a specification: structural invariants
/// plus input-specifiedness, soundness, and correctness of its traces.
pub fn validate_test_lts(test: &TestCase, spec: &Lts) -> Vec<String> {
    let mut v = Vec::new();
    if test.lts.alphabet != spec.alphabet {
        v.push("test alphabet differs from the specification alphabet".to_string());
    }
    if !v.is_empty() {
        return v;
    }
    let init = spec.initial_set();
    for (trace, node) in test_traces(&test.lts) {
        let member = !spec
            .after_trace(&init, &trace)
            .map(|q| q.is_empty())
            .unwrap_or(true);
        let last = trace.0.last();
        if let Some(a) = last {
            if a.is_input() && !member {
                v.push(format!(
                    "input-specifiedness: trace `{trace}` ends with an input but is not a \
                     suspension trace of the specification"
                ));
            }
        }
        if node == PASS_STATE && !member {
            v.push(format!(
                "soundness: trace `{trace}` leads to pass but is not a suspension trace of \
                 the specification"
            ));
        }
        if node == FAIL_STATE && last.map(|a| a.is_output()).unwrap_or(false) && member {
            v.push(format!(
                "correctness: trace `{trace}` ends with an output, leads to fail, and is a \
                 suspension trace of the specification"
            ));
        }
    }
    v
}

/// Checks a timed test against a canonic specification automaton.
pub fn validate_test_ta(test: &TimedTestCase, spec: &TimedAutomaton) -> Vec<String> {
    let mut v = Vec::new();
    if let Err(e) = spec.ensure_canonic() {
        v.push(e.to_string());
        return v;
    }
    if test.ta.alphabet != spec.alphabet {
        v.push("test alphabet differs from the specification alphabet".to_string());
    }
    if test.ta.bound != spec.bound {
        v.push(format!(
            "test bound `{}` differs from the specification bound `{}`",
            test.ta.bound, spec.bound
        ));
    }
    if !v.is_empty() {
        return v;
    }
    let init = spec.initial_set();
    for (trace, node) in timed_test_traces(&test.ta) {
        let member = !spec
            .after_trace_m(&init, &trace)
            .map(|q| q.is_empty())
            .unwrap_or(true);
        let last = trace.0.last();
        if let Some(step) = last {
            if step.action.is_input() && !member {
                v.push(format!(
                    "input-specifiedness: trace `{trace}` ends with an input but is not a \
                     suspended timed trace of the specification"
                ));
            }
        }
        if node == PASS_STATE && !member {
            v.push(format!(
                "soundness: trace `{trace}` leads to pass but is not a suspended timed trace \
                 of the specification"
            ));
        }
        if node == FAIL_STATE && last.map(|s| s.action.is_output()).unwrap_or(false) && member {
            v.push(format!(
                "correctness: trace `{trace}` ends with an output, leads to fail, and is a \
                 suspended timed trace of the specification"
            ));
        }
    }
    v
}

/// All root traces of a test tree with the node they reach.
fn test_traces(lts: &Lts) -> Vec<(SuspensionTrace, String)> {
    let mut acc = Vec::new();
    let mut stack = vec![(SuspensionTrace::empty(), lts.initial.clone())];
    while let Some((trace, node)) = stack.pop() {
        for t in lts.transitions.iter().filter(|t| t.source == node) {
            stack.push((trace.extended(t.action.clone()), t.target.clone()));
        }
        acc.push((trace, node));
    }
    acc.sort();
    acc
}

fn timed_test_traces(ta: &TimedAutomaton) -> Vec<(TimedTrace, String)> {
    let mut acc = Vec::new();
    let mut stack = vec![(TimedTrace::empty(), ta.initial.clone())];
    while let Some((trace, node)) = stack.pop() {
        for t in ta.transitions.iter().filter(|t| t.source == node) {
            let class = if t.action.is_delta() {
                crate::ta::DelayClass::AtM
            } else {
                crate::ta::DelayClass::BeforeM
            };
            let step = TimedStep {
                class,
                action: t.action.clone(),
            };
            stack.push((trace.extended(step), t.target.clone()));
        }
        acc.push((trace, node));
    }
    acc.sort();
    acc
}

// ---------------------------------------------------------------------------
// Suites
// ---------------------------------------------------------------------------

/// Ordered, duplicate-free collection of untimed tests, keyed by canonical
/// serialization.
#[derive(Clone, Debug, Default)]
pub struct TestSuite {
    tests: Vec<(String, TestCase)>,
}

impl TestSuite {
    pub fn from_tests(tests: impl IntoIterator<Item = TestCase>) -> Self {
        let mut keyed: BTreeMap<String, TestCase> = BTreeMap::new();
        for t in tests {
            keyed.entry(t.canonical_key()).or_insert(t);
        }
        TestSuite {
            tests: keyed.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.tests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tests.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &TestCase> {
        self.tests.iter().map(|(_, t)| t)
    }

    pub fn canonical_keys(&self) -> BTreeSet<String> {
        self.tests.iter().map(|(k, _)| k.clone()).collect()
    }
}

/// Ordered, duplicate-free collection of timed tests.
#[derive(Clone, Debug, Default)]
pub struct TimedTestSuite {
    tests: Vec<(String, TimedTestCase)>,
}

impl TimedTestSuite {
    pub fn from_tests(tests: impl IntoIterator<Item = TimedTestCase>) -> Self {
        let mut keyed: BTreeMap<String, TimedTestCase> = BTreeMap::new();
        for t in tests {
            keyed.entry(t.canonical_key()).or_insert(t);
        }
        TimedTestSuite {
            tests: keyed.into_iter().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.tests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tests.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &TimedTestCase> {
        self.tests.iter().map(|(_, t)| t)
    }

    pub fn canonical_keys(&self) -> BTreeSet<String> {
        self.tests.iter().map(|(k, _)| k.clone()).collect()
    }
}

// ---------------------------------------------------------------------------
// Generation
// ---------------------------------------------------------------------------

/// Unnamed test tree; subtrees are shared while enumerating resolutions.
#[derive(Debug, PartialEq, Eq)]
enum Shape {
    Pass,
    Fail,
    Node(BTreeMap<Action, Rc<Shape>>),
}

/// Semantic hooks the generator needs from a specification, letting one
/// recursion serve both the untimed and the timed paradigm.
trait GenSemantics {
    fn alphabet(&self) -> &Alphabet;
    fn initial(&self) -> StateSet;
    fn observable(&self, q: &StateSet, a: &Action) -> bool;
    fn inputs_enabled(&self, q: &StateSet) -> Vec<Action>;
    fn advance(&self, q: &StateSet, a: &Action) -> StateSet;
}

impl GenSemantics for Lts {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
    fn initial(&self) -> StateSet {
        self.initial_set()
    }
    fn observable(&self, q: &StateSet, a: &Action) -> bool {
        self.out_set(q).contains(a)
    }
    fn inputs_enabled(&self, q: &StateSet) -> Vec<Action> {
        self.in_set(q).into_iter().collect()
    }
    fn advance(&self, q: &StateSet, a: &Action) -> StateSet {
        self.step(q, a)
    }
}

impl GenSemantics for TimedAutomaton {
    fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }
    fn initial(&self) -> StateSet {
        self.initial_set()
    }
    fn observable(&self, q: &StateSet, a: &Action) -> bool {
        self.out_m(q).contains(&step_for(a))
    }
    fn inputs_enabled(&self, q: &StateSet) -> Vec<Action> {
        self.in_m(q).into_iter().collect()
    }
    fn advance(&self, q: &StateSet, a: &Action) -> StateSet {
        self.step_m(q, &step_for(a))
    }
}

/// The canonical symbolic step for an action: δ at `M`, everything else
/// before `M`.
fn step_for(a: &Action) -> TimedStep {
    match a {
        Action::Delta => TimedStep::at_m(Action::Delta),
        other => TimedStep::before(other.clone()),
    }
}

/// Branch layout of one node: the actions in canonical order, paired with
/// the successor state set when the branch is allowed by the specification.
fn node_branches<S: GenSemantics>(
    spec: &S,
    q: &StateSet,
    stimulus: Option<&Action>,
) -> Vec<(Action, Option<StateSet>)> {
    let mut branches = Vec::new();
    if let Some(i) = stimulus {
        branches.push((i.clone(), Some(spec.advance(q, i))));
    }
    for o in spec.alphabet().output_actions() {
        let allowed = spec.observable(q, &o);
        branches.push((o.clone(), allowed.then(|| spec.advance(q, &o))));
    }
    if stimulus.is_none() {
        let allowed = spec.observable(q, &Action::Delta);
        branches.push((
            Action::Delta,
            allowed.then(|| spec.advance(q, &Action::Delta)),
        ));
    }
    branches.sort_by(|a, b| a.0.cmp(&b.0));
    branches
}

type Memo = HashMap<(StateSet, usize), Rc<Vec<Rc<Shape>>>>;

/// All resolutions of the choice points from `q` with `depth` budget.
fn resolutions<S: GenSemantics>(spec: &S, q: &StateSet, depth: usize, memo: &mut Memo) -> Rc<Vec<Rc<Shape>>> {
    if let Some(hit) = memo.get(&(q.clone(), depth)) {
        return Rc::clone(hit);
    }
    let mut all: Vec<Rc<Shape>> = vec![Rc::new(Shape::Pass)];
    if depth > 0 {
        // Observe, then stimulate each enabled input.
        let mut layouts = vec![node_branches(spec, q, None)];
        for i in spec.inputs_enabled(q) {
            layouts.push(node_branches(spec, q, Some(&i)));
        }
        for layout in layouts {
            let mut combos: Vec<BTreeMap<Action, Rc<Shape>>> = vec![BTreeMap::new()];
            for (action, succ) in &layout {
                let options: Vec<Rc<Shape>> = match succ {
                    None => vec![Rc::new(Shape::Fail)],
                    Some(next) => resolutions(spec, next, depth - 1, memo).as_ref().clone(),
                };
                let mut grown = Vec::with_capacity(combos.len() * options.len());
                for combo in &combos {
                    for opt in &options {
                        let mut c = combo.clone();
                        c.insert(action.clone(), Rc::clone(opt));
                        grown.push(c);
                    }
                }
                combos = grown;
            }
            all.extend(combos.into_iter().map(|edges| Rc::new(Shape::Node(edges))));
        }
    }
    let rc = Rc::new(all);
    memo.insert((q.clone(), depth), Rc::clone(&rc));
    rc
}

/// One uniformly drawn resolution.
fn random_shape<S: GenSemantics>(spec: &S, q: &StateSet, depth: usize, rng: &mut ChaCha8Rng) -> Rc<Shape> {
    if depth == 0 {
        return Rc::new(Shape::Pass);
    }
    let inputs = spec.inputs_enabled(q);
    // Options: stop, observe, stimulate each enabled input.
    let choice = rng.random_range(0..2 + inputs.len());
    if choice == 0 {
        return Rc::new(Shape::Pass);
    }
    let stimulus = if choice >= 2 { Some(&inputs[choice - 2]) } else { None };
    let mut edges = BTreeMap::new();
    for (action, succ) in node_branches(spec, q, stimulus) {
        let child = match succ {
            None => Rc::new(Shape::Fail),
            Some(next) => random_shape(spec, &next, depth - 1, rng),
        };
        edges.insert(action, child);
    }
    Rc::new(Shape::Node(edges))
}

fn shapes<S: GenSemantics>(spec: &S, depth: usize, mode: GenerationMode) -> Vec<Rc<Shape>> {
    let q0 = spec.initial();
    match mode {
        GenerationMode::Exhaustive => {
            let mut memo = Memo::new();
            resolutions(spec, &q0, depth, &mut memo).as_ref().clone()
        }
        GenerationMode::Random { seed, count } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            (0..count)
                .map(|_| random_shape(spec, &q0, depth, &mut rng))
                .collect()
        }
    }
}

/// Walks a shape breadth-first, naming internal nodes `n0, n1, ...`.
fn materialize_edges(shape: &Rc<Shape>) -> (String, Vec<(String, Action, String)>) {
    match shape.as_ref() {
        Shape::Pass => (PASS_STATE.to_string(), Vec::new()),
        Shape::Fail => (FAIL_STATE.to_string(), Vec::new()),
        Shape::Node(_) => {
            let mut edges = Vec::new();
            let mut queue: VecDeque<(String, Rc<Shape>)> = VecDeque::new();
            queue.push_back(("n0".to_string(), Rc::clone(shape)));
            let mut next_id = 1usize;
            while let Some((name, node)) = queue.pop_front() {
                if let Shape::Node(children) = node.as_ref() {
                    for (action, child) in children {
                        let child_name = match child.as_ref() {
                            Shape::Pass => PASS_STATE.to_string(),
                            Shape::Fail => FAIL_STATE.to_string(),
                            Shape::Node(_) => {
                                let n = format!("n{next_id}");
                                next_id += 1;
                                queue.push_back((n.clone(), Rc::clone(child)));
                                n
                            }
                        };
                        edges.push((name.clone(), action.clone(), child_name));
                    }
                }
            }
            ("n0".to_string(), edges)
        }
    }
}

fn ensure_valid_spec(spec: &Lts) -> Result<(), ModelError> {
    let v = spec.validate();
    if v.is_empty() {
        Ok(())
    } else {
        Err(ModelError::Invalid(summarize(&v)))
    }
}

/// Generates a suite of untimed tests for the specification.
pub fn generate_tests(spec: &Lts, depth: usize, mode: GenerationMode) -> Result<TestSuite, ModelError> {
    ensure_valid_spec(spec)?;
    let mut tests = Vec::new();
    for shape in shapes(spec, depth, mode) {
        let (root, edges) = materialize_edges(&shape);
        let mut states: BTreeSet<String> = edges
            .iter()
            .flat_map(|(s, _, t)| [s.clone(), t.clone()])
            .collect();
        states.insert(root.clone());
        states.insert(PASS_STATE.to_string());
        states.insert(FAIL_STATE.to_string());
        let lts = Lts {
            states,
            initial: root,
            alphabet: spec.alphabet.clone(),
            transitions: edges
                .into_iter()
                .map(|(s, a, t)| Transition::new(s, a, t))
                .collect(),
            delta_style: DeltaStyle::Explicit,
        };
        tests.push(TestCase::trusted(lts));
    }
    Ok(TestSuite::from_tests(tests))
}

/// Generates a suite of timed tests directly over the symbolic semantics of
/// a canonic specification automaton.
pub fn generate_tests_ta(
    spec: &TimedAutomaton,
    depth: usize,
    mode: GenerationMode,
) -> Result<TimedTestSuite, ModelError> {
    spec.ensure_canonic()?;
    let mut tests = Vec::new();
    for shape in shapes(spec, depth, mode) {
        let (root, edges) = materialize_edges(&shape);
        tests.push(build_timed_test(&spec.alphabet, spec.bound, root, edges));
    }
    Ok(TimedTestSuite::from_tests(tests))
}

fn build_timed_test(
    alphabet: &Alphabet,
    bound: Rational,
    root: String,
    edges: Vec<(String, Action, String)>,
) -> TimedTestCase {
    let mut locations: BTreeSet<String> = edges
        .iter()
        .flat_map(|(s, _, t)| [s.clone(), t.clone()])
        .collect();
    locations.insert(root.clone());
    locations.insert(PASS_STATE.to_string());
    locations.insert(FAIL_STATE.to_string());
    let invariants = locations
        .iter()
        .filter(|l| l.as_str() != PASS_STATE && l.as_str() != FAIL_STATE)
        .map(|l| (l.clone(), ClockConstraint::LeM))
        .collect();
    let ta = TimedAutomaton {
        locations,
        initial: root,
        alphabet: alphabet.clone(),
        bound,
        invariants,
        transitions: edges
            .into_iter()
            .map(|(s, a, t)| {
                let guard = if a.is_delta() {
                    ClockConstraint::EqM
                } else {
                    ClockConstraint::LtM
                };
                TimedTransition::new(s, a, guard, t)
            })
            .collect(),
    };
    TimedTestCase::trusted(ta)
}

/// Canonical keys of the exhaustive suite, streamed without retaining the
/// tests. Generated trees are named canonically at materialization, so the
/// key is a direct serialization.
pub fn exhaustive_suite_keys(spec: &Lts, depth: usize) -> Result<BTreeSet<String>, ModelError> {
    ensure_valid_spec(spec)?;
    let mut keys = BTreeSet::new();
    for shape in shapes(spec, depth, GenerationMode::Exhaustive) {
        let (root, edges) = materialize_edges(&shape);
        let mut states: BTreeSet<String> = edges
            .iter()
            .flat_map(|(s, _, t)| [s.clone(), t.clone()])
            .collect();
        states.insert(root.clone());
        states.insert(PASS_STATE.to_string());
        states.insert(FAIL_STATE.to_string());
        let lts = Lts {
            states,
            initial: root,
            alphabet: spec.alphabet.clone(),
            transitions: edges
                .into_iter()
                .map(|(s, a, t)| Transition::new(s, a, t))
                .collect(),
            delta_style: DeltaStyle::Explicit,
        };
        keys.insert(crate::format::serialize_test(&TestCase::trusted(lts)));
    }
    Ok(keys)
}

/// Canonical keys of the lifting of the exhaustive suite, streamed.
pub fn exhaustive_lifted_suite_keys(
    spec: &Lts,
    bound: Rational,
    depth: usize,
) -> Result<BTreeSet<String>, ModelError> {
    ensure_valid_spec(spec)?;
    if !bound.is_positive() {
        return Err(ModelError::NonPositiveBound(bound.to_string()));
    }
    let mut keys = BTreeSet::new();
    for shape in shapes(spec, depth, GenerationMode::Exhaustive) {
        let (root, edges) = materialize_edges(&shape);
        let test = build_timed_test(&spec.alphabet, bound, root, edges);
        keys.insert(crate::format::serialize_timed_test(&test));
    }
    Ok(keys)
}

/// Canonical keys of the exhaustive timed suite generated directly over the
/// symbolic semantics, streamed.
pub fn exhaustive_suite_keys_ta(
    spec: &TimedAutomaton,
    depth: usize,
) -> Result<BTreeSet<String>, ModelError> {
    spec.ensure_canonic()?;
    let mut keys = BTreeSet::new();
    for shape in shapes(spec, depth, GenerationMode::Exhaustive) {
        let (root, edges) = materialize_edges(&shape);
        let test = build_timed_test(&spec.alphabet, spec.bound, root, edges);
        keys.insert(crate::format::serialize_timed_test(&test));
    }
    Ok(keys)
}

/// Lifts an untimed test: action edges get guard `c < M`, δ edges `c = M`,
/// every edge resets the clock, internal locations get the `c <= M`
/// invariant, and the sinks stay bare.
pub fn lift_test(test: &TestCase, bound: Rational) -> Result<TimedTestCase, ModelError> {
    if !bound.is_positive() {
        return Err(ModelError::NonPositiveBound(bound.to_string()));
    }
    let lts = &test.lts;
    let edges: Vec<_> = lts
        .transitions
        .iter()
        .map(|t| (t.source.clone(), t.action.clone(), t.target.clone()))
        .collect();
    Ok(build_timed_test(
        &lts.alphabet,
        bound,
        lts.initial.clone(),
        edges,
    ))
}

/// Lifts every test of a suite.
pub fn lift_suite(suite: &TestSuite, bound: Rational) -> Result<TimedTestSuite, ModelError> {
    let lifted: Result<Vec<_>, _> = suite.iter().map(|t| lift_test(t, bound)).collect();
    Ok(TimedTestSuite::from_tests(lifted?))
}

// ---------------------------------------------------------------------------
// Execution
// ---------------------------------------------------------------------------

/// Runs one untimed test against an input-enabled implementation.
///
/// The product of the deterministic test tree with the implementation's
/// state sets is explored breadth-first; the verdict is `Fail` with the
/// minimal witness iff some jointly executable trace reaches `fail`.
pub fn run_test_lts(test: &TestCase, imp: &Lts) -> Result<Verdict, ModelError> {
    ensure_valid_spec(imp)?;
    if test.lts.alphabet != imp.alphabet {
        return Err(ModelError::AlphabetMismatch);
    }
    if let Some((state, input)) = imp.first_input_gap() {
        return Err(ModelError::NotInputEnabled { state, input });
    }
    if test.root() == FAIL_STATE {
        return Ok(Verdict::Fail {
            witness: SuspensionTrace::empty(),
        });
    }
    let mut queue = VecDeque::from([(test.lts.initial.clone(), imp.initial_set(), SuspensionTrace::empty())]);
    while let Some((node, q, trace)) = queue.pop_front() {
        let mut edges: Vec<_> = test.lts.transitions.iter().filter(|t| t.source == node).collect();
        edges.sort_by(|a, b| a.action.cmp(&b.action));
        for edge in edges {
            let next = imp.step(&q, &edge.action);
            if next.is_empty() {
                continue;
            }
            let extended = trace.extended(edge.action.clone());
            if edge.target == FAIL_STATE {
                return Ok(Verdict::Fail { witness: extended });
            }
            if edge.target != PASS_STATE {
                queue.push_back((edge.target.clone(), next, extended));
            }
        }
    }
    Ok(Verdict::Pass)
}

/// Runs one timed test against an input-enabled canonic implementation.
pub fn run_test_ta(test: &TimedTestCase, imp: &TimedAutomaton) -> Result<TimedVerdict, ModelError> {
    imp.ensure_canonic()?;
    if test.ta.alphabet != imp.alphabet {
        return Err(ModelError::AlphabetMismatch);
    }
    if test.ta.bound != imp.bound {
        return Err(ModelError::BoundMismatch(
            test.ta.bound.to_string(),
            imp.bound.to_string(),
        ));
    }
    if let Some((location, input)) = imp.first_input_gap() {
        return Err(ModelError::NotIota { location, input });
    }
    if test.root() == FAIL_STATE {
        return Ok(TimedVerdict::Fail {
            witness: TimedTrace::empty(),
        });
    }
    let mut queue = VecDeque::from([(test.ta.initial.clone(), imp.initial_set(), TimedTrace::empty())]);
    while let Some((node, q, trace)) = queue.pop_front() {
        let mut edges: Vec<_> = test.ta.transitions.iter().filter(|t| t.source == node).collect();
        edges.sort_by(|a, b| a.action.cmp(&b.action));
        for edge in edges {
            let step = step_for(&edge.action);
            let next = imp.step_m(&q, &step);
            if next.is_empty() {
                continue;
            }
            let extended = trace.extended(step);
            if edge.target == FAIL_STATE {
                return Ok(TimedVerdict::Fail { witness: extended });
            }
            if edge.target != PASS_STATE {
                queue.push_back((edge.target.clone(), next, extended));
            }
        }
    }
    Ok(TimedVerdict::Pass)
}

/// Result of running every test of a suite, in suite order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub verdicts: Vec<Verdict>,
}

impl SuiteReport {
    pub fn overall_pass(&self) -> bool {
        self.verdicts.iter().all(|v| matches!(v, Verdict::Pass))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TimedSuiteReport {
    pub verdicts: Vec<TimedVerdict>,
}

impl TimedSuiteReport {
    pub fn overall_pass(&self) -> bool {
        self.verdicts.iter().all(|v| matches!(v, TimedVerdict::Pass))
    }
}

/// Runs every test of a suite against the implementation.
pub fn run_suite(suite: &TestSuite, imp: &Lts) -> Result<SuiteReport, ModelError> {
    let verdicts: Result<Vec<_>, _> = suite.iter().map(|t| run_test_lts(t, imp)).collect();
    Ok(SuiteReport { verdicts: verdicts? })
}

/// Runs every timed test of a suite against the implementation.
pub fn run_suite_ta(suite: &TimedTestSuite, imp: &TimedAutomaton) -> Result<TimedSuiteReport, ModelError> {
    let verdicts: Result<Vec<_>, _> = suite.iter().map(|t| run_test_ta(t, imp)).collect();
    Ok(TimedSuiteReport { verdicts: verdicts? })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lift::lift;
    use crate::samples;

    fn m2() -> Rational {
        Rational::from_int(2)
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

    #[test]
    fn sample_test_is_valid_for_a() {
        let t = samples::test_for_a();
        assert_eq!(validate_test_lts(&t, &samples::lts_a()), Vec::<String>::new());
    }

    #[test]
    fn redirecting_an_allowed_output_to_fail_breaks_correctness() {
        let t = samples::test_for_a();
        let mut lts = t.as_lts().clone();
        let edge = Transition::new("n1", o(), "pass");
        assert!(lts.transitions.remove(&edge));
        lts.transitions.insert(Transition::new("n1", o(), "fail"));
        let bad = TestCase::from_lts(lts).unwrap();
        let v = validate_test_lts(&bad, &samples::lts_a());
        assert_eq!(v.len(), 1);
        assert!(v[0].starts_with("correctness"), "{v:?}");
    }

    #[test]
    fn routing_a_forbidden_output_to_pass_breaks_soundness() {
        // At the root only δ is allowed, so o! -> pass is unsound.
        let lts = Lts {
            states: ["n0", "pass", "fail"].iter().map(|s| s.to_string()).collect(),
            initial: "n0".into(),
            alphabet: samples::lts_a().alphabet.clone(),
            transitions: [
                Transition::new("n0", o(), "pass"),
                Transition::new("n0", op(), "fail"),
                Transition::new("n0", Action::Delta, "pass"),
            ]
            .into(),
            delta_style: DeltaStyle::Explicit,
        };
        let t = TestCase::from_lts(lts).unwrap();
        let v = validate_test_lts(&t, &samples::lts_a());
        assert_eq!(v.len(), 1);
        assert!(v[0].starts_with("soundness"), "{v:?}");
    }

    #[test]
    fn structural_violations_are_rejected_at_construction() {
        // Nondeterministic root.
        let lts = Lts {
            states: ["n0", "n1", "n2", "pass", "fail"].iter().map(|s| s.to_string()).collect(),
            initial: "n0".into(),
            alphabet: samples::lts_a().alphabet.clone(),
            transitions: [
                Transition::new("n0", i(), "n1"),
                Transition::new("n0", i(), "n2"),
                Transition::new("n0", o(), "fail"),
                Transition::new("n0", op(), "fail"),
                Transition::new("n1", o(), "pass"),
                Transition::new("n1", op(), "fail"),
                Transition::new("n1", Action::Delta, "pass"),
                Transition::new("n2", o(), "pass"),
                Transition::new("n2", op(), "fail"),
                Transition::new("n2", Action::Delta, "pass"),
            ]
            .into(),
            delta_style: DeltaStyle::Explicit,
        };
        assert!(matches!(TestCase::from_lts(lts), Err(ModelError::InvalidTest(_))));
    }

    #[test]
    fn depth_zero_suite_is_a_single_pass_node() {
        let suite = generate_tests(&samples::lts_a(), 0, GenerationMode::Exhaustive).unwrap();
        assert_eq!(suite.len(), 1);
        let t = suite.iter().next().unwrap();
        assert_eq!(t.root(), PASS_STATE);
        assert!(t.as_lts().transitions.is_empty());
    }

    #[test]
    fn exhaustive_depth_two_contains_the_sample_test() {
        let suite = generate_tests(&samples::lts_a(), 2, GenerationMode::Exhaustive).unwrap();
        let wanted = samples::test_for_a().canonical_key();
        assert!(suite.canonical_keys().contains(&wanted));
    }

    #[test]
    fn generated_tests_validate_against_their_specification() {
        let a = samples::lts_a();
        let suite = generate_tests(&a, 3, GenerationMode::Exhaustive).unwrap();
        assert!(!suite.is_empty());
        for t in suite.iter() {
            // Structural validity (the trusted-construction claim) and the
            // specification-relative clauses.
            TestCase::from_lts(t.as_lts().clone()).unwrap();
            assert_eq!(validate_test_lts(t, &a), Vec::<String>::new());
        }
        let random = generate_tests(&a, 3, GenerationMode::Random { seed: 7, count: 50 }).unwrap();
        for t in random.iter() {
            assert_eq!(validate_test_lts(t, &a), Vec::<String>::new());
        }
    }

    #[test]
    fn generated_timed_tests_are_structurally_valid() {
        let spec_ta = lift(&samples::lts_a(), m2()).unwrap();
        let suite = generate_tests_ta(&spec_ta, 2, GenerationMode::Exhaustive).unwrap();
        for t in suite.iter() {
            TimedTestCase::from_ta(t.as_ta().clone()).unwrap();
            assert_eq!(validate_test_ta(t, &spec_ta), Vec::<String>::new());
        }
    }

    #[test]
    fn random_generation_is_reproducible() {
        let a = samples::lts_a();
        let mode = GenerationMode::Random { seed: 11, count: 20 };
        let s1 = generate_tests(&a, 3, mode).unwrap();
        let s2 = generate_tests(&a, 3, mode).unwrap();
        assert_eq!(s1.canonical_keys(), s2.canonical_keys());
    }

    #[test]
    fn lifting_the_sample_test() {
        let t = samples::test_for_a();
        let lifted = lift_test(&t, m2()).unwrap();
        for tr in &lifted.as_ta().transitions {
            if tr.action.is_delta() {
                assert_eq!(tr.guard, ClockConstraint::EqM);
            } else {
                assert_eq!(tr.guard, ClockConstraint::LtM);
            }
            assert!(tr.resets_clock);
        }
        assert_eq!(lifted.as_ta().invariants.len(), 2); // n0 and n1 only
        assert!(!lifted.as_ta().invariants.contains_key(PASS_STATE));
        assert_eq!(lifted.project(), t);
        assert!(lift_test(&t, Rational::zero()).is_err());
    }

    #[test]
    fn lifting_a_bare_pass_test() {
        let suite = generate_tests(&samples::lts_a(), 0, GenerationMode::Exhaustive).unwrap();
        let t = suite.iter().next().unwrap();
        let lifted = lift_test(t, m2()).unwrap();
        assert_eq!(lifted.root(), PASS_STATE);
        assert!(lifted.as_ta().invariants.is_empty());
        assert!(lifted.as_ta().transitions.is_empty());
    }

    #[test]
    fn round_trip_on_generated_tests() {
        let suite = generate_tests(&samples::lts_a(), 3, GenerationMode::Exhaustive).unwrap();
        for t in suite.iter() {
            let lifted = lift_test(t, m2()).unwrap();
            assert_eq!(&lifted.project(), t);
        }
    }

    #[test]
    fn validate_timed_tests_against_lifted_spec() {
        let spec_ta = lift(&samples::lts_a(), m2()).unwrap();
        let t = lift_test(&samples::test_for_a(), m2()).unwrap();
        assert_eq!(validate_test_ta(&t, &spec_ta), Vec::<String>::new());
    }

    #[test]
    fn timed_structural_violations() {
        let good = lift_test(&samples::test_for_a(), m2()).unwrap();

        // δ guard must be c = M.
        let mut ta = good.as_ta().clone();
        let delta_edge = ta.transitions.iter().find(|t| t.action.is_delta()).unwrap().clone();
        ta.transitions.remove(&delta_edge);
        ta.transitions.insert(TimedTransition {
            guard: ClockConstraint::LtM,
            ..delta_edge
        });
        assert!(matches!(TimedTestCase::from_ta(ta), Err(ModelError::InvalidTest(_))));

        // Internal locations need the invariant.
        let mut ta = good.as_ta().clone();
        ta.invariants.remove("n1");
        assert!(matches!(TimedTestCase::from_ta(ta), Err(ModelError::InvalidTest(_))));
    }

    #[test]
    fn running_the_sample_test() {
        let t = samples::test_for_a();
        // The nonconforming implementation still passes this particular
        // test: after i? both o! and δ are mapped to pass.
        assert_eq!(run_test_lts(&t, &samples::iots_d()).unwrap(), Verdict::Pass);
        assert_eq!(run_test_lts(&t, &samples::iots_c()).unwrap(), Verdict::Pass);
        assert_eq!(run_test_lts(&t, &samples::iots_b()).unwrap(), Verdict::Pass);
    }

    /// Stimulate i?, observe, stimulate i?, observe: catches the quiescence
    /// defect of the nonconforming implementation.
    fn deep_test_for_a() -> TestCase {
        let a = samples::lts_a();
        let lts = Lts {
            states: ["n0", "n1", "n2", "n3", "pass", "fail"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            initial: "n0".into(),
            alphabet: a.alphabet.clone(),
            transitions: [
                Transition::new("n0", i(), "n1"),
                Transition::new("n0", o(), "fail"),
                Transition::new("n0", op(), "fail"),
                Transition::new("n1", Action::Delta, "n2"),
                Transition::new("n1", o(), "pass"),
                Transition::new("n1", op(), "fail"),
                Transition::new("n2", i(), "n3"),
                Transition::new("n2", o(), "fail"),
                Transition::new("n2", op(), "fail"),
                Transition::new("n3", Action::Delta, "fail"),
                Transition::new("n3", o(), "pass"),
                Transition::new("n3", op(), "pass"),
            ]
            .into(),
            delta_style: DeltaStyle::Explicit,
        };
        TestCase::from_lts(lts).unwrap()
    }

    #[test]
    fn deep_test_catches_the_quiescence_defect() {
        let t = deep_test_for_a();
        assert_eq!(validate_test_lts(&t, &samples::lts_a()), Vec::<String>::new());
        let suite4 = generate_tests(&samples::lts_a(), 4, GenerationMode::Exhaustive).unwrap();
        assert!(suite4.canonical_keys().contains(&t.canonical_key()));

        match run_test_lts(&t, &samples::iots_d()).unwrap() {
            Verdict::Fail { witness } => {
                assert_eq!(
                    witness,
                    SuspensionTrace(vec![i(), Action::Delta, i(), Action::Delta])
                );
            }
            Verdict::Pass => panic!("expected a failure"),
        }
        assert_eq!(run_test_lts(&t, &samples::iots_c()).unwrap(), Verdict::Pass);
    }

    #[test]
    fn bare_pass_test_passes_everything() {
        let suite = generate_tests(&samples::lts_a(), 0, GenerationMode::Exhaustive).unwrap();
        let t = suite.iter().next().unwrap();
        assert_eq!(run_test_lts(t, &samples::iots_d()).unwrap(), Verdict::Pass);
        let lifted = lift_test(t, m2()).unwrap();
        let imp = lift(&samples::iots_d(), m2()).unwrap();
        assert_eq!(run_test_ta(&lifted, &imp).unwrap(), TimedVerdict::Pass);
    }

    #[test]
    fn timed_and_untimed_verdicts_agree_on_the_deep_test() {
        let t = deep_test_for_a();
        let lifted = lift_test(&t, m2()).unwrap();
        let imp = lift(&samples::iots_d(), m2()).unwrap();
        match run_test_ta(&lifted, &imp).unwrap() {
            TimedVerdict::Fail { witness } => {
                assert_eq!(
                    witness,
                    crate::lift::lift_trace(&SuspensionTrace(vec![
                        i(),
                        Action::Delta,
                        i(),
                        Action::Delta
                    ]))
                );
            }
            TimedVerdict::Pass => panic!("expected a failure"),
        }
    }

    #[test]
    fn suite_execution_matches_conformance() {
        let a = samples::lts_a();
        let suite = generate_tests(&a, 3, GenerationMode::Exhaustive).unwrap();

        let c_report = run_suite(&suite, &samples::iots_c()).unwrap();
        assert!(c_report.overall_pass());

        let d_report = run_suite(&suite, &samples::iots_d()).unwrap();
        assert!(!d_report.overall_pass());
    }

    #[test]
    fn suite_equality_between_lifting_and_direct_generation() {
        let a = samples::lts_a();
        for depth in 0..=3 {
            let lts_suite = generate_tests(&a, depth, GenerationMode::Exhaustive).unwrap();
            let lifted = lift_suite(&lts_suite, m2()).unwrap();
            let ta_suite =
                generate_tests_ta(&lift(&a, m2()).unwrap(), depth, GenerationMode::Exhaustive)
                    .unwrap();
            assert_eq!(lifted.canonical_keys(), ta_suite.canonical_keys(), "depth {depth}");
        }
    }

    #[test]
    fn streamed_keys_match_suite_keys() {
        let a = samples::lts_a();
        let suite = generate_tests(&a, 3, GenerationMode::Exhaustive).unwrap();
        assert_eq!(exhaustive_suite_keys(&a, 3).unwrap(), suite.canonical_keys());
        assert_eq!(
            exhaustive_lifted_suite_keys(&a, m2(), 3).unwrap(),
            lift_suite(&suite, m2()).unwrap().canonical_keys()
        );
        let ta = lift(&a, m2()).unwrap();
        assert_eq!(
            exhaustive_suite_keys_ta(&ta, 3).unwrap(),
            generate_tests_ta(&ta, 3, GenerationMode::Exhaustive).unwrap().canonical_keys()
        );
    }

    #[test]
    fn run_test_rejects_mismatched_preconditions() {
        let t = samples::test_for_a();
        assert!(matches!(
            run_test_lts(&t, &samples::lts_a()),
            Err(ModelError::NotInputEnabled { .. })
        ));
        let lifted = lift_test(&t, m2()).unwrap();
        let imp1 = lift(&samples::iots_c(), Rational::from_int(1)).unwrap();
        assert!(matches!(
            run_test_ta(&lifted, &imp1),
            Err(ModelError::BoundMismatch(_, _))
        ));
    }
}
