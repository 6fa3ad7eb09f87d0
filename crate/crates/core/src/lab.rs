//! Randomized model generation and the oracle batteries that machine-check
//! the conformance-preservation and test-correspondence properties on
//! batches of small models, reporting replayable counterexamples for any
//! failure.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::action::{Action, Alphabet};
use crate::conformance::{
    check_ioco, check_tioco_m, check_tioco_via_projection, ConformanceVerdict,
    TimedConformanceVerdict,
};
use crate::error::ModelError;
use crate::lift::{lift, lift_trace, project_trace};
use crate::lts::{DeltaStyle, Lts, Transition};
use crate::rational::Rational;
use crate::ta::{ClockConstraint, DelayClass, TimedAutomaton, TimedStep};
use crate::testing::{
    generate_tests, lift_test, run_test_lts, run_test_ta, GenerationMode, TimedVerdict, Verdict,
};

/// Parameters for [`random_lts`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LtsParams {
    pub max_states: usize,
    pub n_inputs: usize,
    pub n_outputs: usize,
    /// Probability of adding an edge per (state, label) pair; a second edge
    /// to a different target is added with half that probability, which is
    /// what exercises the subset construction.
    pub edge_density: f64,
}

impl Default for LtsParams {
    fn default() -> Self {
        LtsParams {
            max_states: 6,
            n_inputs: 2,
            n_outputs: 2,
            edge_density: 0.3,
        }
    }
}

fn input_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|k| {
            if k < 8 {
                ((b'a' + k as u8) as char).to_string()
            } else {
                format!("in{k}")
            }
        })
        .collect()
}

fn output_names(n: usize) -> Vec<String> {
    (0..n)
        .map(|k| {
            if k < 3 {
                ((b'x' + k as u8) as char).to_string()
            } else {
                format!("out{k}")
            }
        })
        .collect()
}

/// Generates a reproducible random transition system: a ChaCha8 stream keyed
/// by `seed` drives every choice, and states unreachable from `s0` are
/// pruned.
pub fn random_lts(seed: u64, params: &LtsParams) -> Result<Lts, ModelError> {
    if params.max_states == 0 {
        return Err(ModelError::Invalid("max_states must be at least 1".into()));
    }
    if !(0.0..=1.0).contains(&params.edge_density) {
        return Err(ModelError::Invalid("edge_density must lie in [0, 1]".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(1..=params.max_states);
    let states: Vec<String> = (0..n).map(|k| format!("s{k}")).collect();
    let alphabet = Alphabet::new(input_names(params.n_inputs), output_names(params.n_outputs));

    let labels: Vec<Action> = alphabet
        .input_actions()
        .chain(alphabet.output_actions())
        .collect();
    let mut transitions: BTreeSet<Transition> = BTreeSet::new();
    for s in &states {
        for label in &labels {
            if rng.random_bool(params.edge_density) {
                let target = &states[rng.random_range(0..n)];
                transitions.insert(Transition::new(s.clone(), label.clone(), target.clone()));
                if rng.random_bool(params.edge_density / 2.0) {
                    let target = &states[rng.random_range(0..n)];
                    transitions.insert(Transition::new(s.clone(), label.clone(), target.clone()));
                }
            }
        }
    }

    let mut model = Lts {
        states: states.into_iter().collect(),
        initial: "s0".to_string(),
        alphabet,
        transitions,
        delta_style: DeltaStyle::Derived,
    };
    let reachable = model.reachable_states();
    model.states.retain(|s| reachable.contains(s));
    model.transitions.retain(|t| reachable.contains(&t.source));
    Ok(model)
}

/// Completes a model to input-enabledness by adding a self-loop for every
/// missing input; existing transitions are untouched.
pub fn make_input_enabled(model: &Lts) -> Lts {
    let mut completed = model.clone();
    for s in &model.states {
        for i in model.alphabet.input_actions() {
            let enabled = model
                .transitions
                .iter()
                .any(|t| &t.source == s && t.action == i);
            if !enabled {
                completed
                    .transitions
                    .insert(Transition::new(s.clone(), i, s.clone()));
            }
        }
    }
    completed
}

// ---------------------------------------------------------------------------
// Concrete-delay reference evaluator
// ---------------------------------------------------------------------------

/// A concrete configuration: location plus exact clock value.
type Config = (String, Rational);

fn constraint_holds(c: ClockConstraint, v: Rational, m: Rational) -> bool {
    match c {
        ClockConstraint::LtM => v < m,
        ClockConstraint::EqM => v == m,
        ClockConstraint::LeM => v <= m,
    }
}

/// One step of the reference interpreter: wait exactly `delay`, then take an
/// edge labelled `action`. Guards, invariants, and resets are evaluated
/// directly on exact rational clock values, independent of the symbolic
/// delay quotient it cross-checks.
pub fn concrete_after(
    ta: &TimedAutomaton,
    configs: &BTreeSet<Config>,
    delay: Rational,
    action: &Action,
) -> BTreeSet<Config> {
    let mut next = BTreeSet::new();
    for (loc, clock) in configs {
        let v = *clock + delay;
        // The source invariant must hold for the whole wait; the canonic
        // forms are upward-closed in time, so the endpoint check suffices.
        if let Some(inv) = ta.invariants.get(loc) {
            if !constraint_holds(*inv, v, ta.bound) {
                continue;
            }
        }
        for t in ta.transitions.iter().filter(|t| &t.source == loc) {
            if &t.action != action || !constraint_holds(t.guard, v, ta.bound) {
                continue;
            }
            let after_reset = if t.resets_clock { Rational::zero() } else { v };
            if let Some(inv) = ta.invariants.get(&t.target) {
                if !constraint_holds(*inv, after_reset, ta.bound) {
                    continue;
                }
            }
            next.insert((t.target.clone(), after_reset));
        }
    }
    next
}

/// Representative concrete delays of a symbolic class, sampling `0` and
/// `M/2` inside `[0, M)` and exactly `M` for the singleton class.
fn class_representatives(class: DelayClass, m: Rational) -> Vec<Rational> {
    match class {
        DelayClass::BeforeM => vec![Rational::zero(), m.half()],
        DelayClass::AtM => vec![m],
    }
}

// ---------------------------------------------------------------------------
// Oracles
// ---------------------------------------------------------------------------

/// Trace correspondence between a model and its lifting, both directions,
/// as exact set equality of the bounded trace sets.
pub fn oracle_canonic_traces(model: &Lts, bound: Rational, depth: usize) -> Result<(), String> {
    let ta = lift(model, bound).map_err(|e| e.to_string())?;
    let lifted_straces: BTreeSet<_> = model
        .straces_upto(depth)
        .iter()
        .map(lift_trace)
        .collect();
    let sttraces = ta.sttraces_upto(depth);
    if lifted_straces != sttraces {
        let missing: Vec<String> = sttraces
            .symmetric_difference(&lifted_straces)
            .take(3)
            .map(|t| t.to_string())
            .collect();
        return Err(format!(
            "trace sets of the model and its lifting differ at depth {depth}, e.g. {}",
            missing.join(", ")
        ));
    }
    // Spot-check the projection direction through the untimed after-sets.
    for rho in &sttraces {
        let sigma = project_trace(rho);
        let q = model
            .after_trace(&model.initial_set(), &sigma)
            .map_err(|e| e.to_string())?;
        if q.is_empty() {
            return Err(format!(
                "projected trace `{sigma}` is not a suspension trace of the model"
            ));
        }
    }
    Ok(())
}

/// Input-enabledness is preserved by lifting.
pub fn oracle_input_enabled_lift(imp: &Lts, bound: Rational) -> Result<(), String> {
    if !imp.is_input_enabled().map_err(|e| e.to_string())? {
        return Err("implementation is not input-enabled".to_string());
    }
    let ta = lift(imp, bound).map_err(|e| e.to_string())?;
    if ta.is_iota() {
        Ok(())
    } else {
        Err("lifting of an input-enabled model is not input-enabled".to_string())
    }
}

fn timed_step_for(a: &Action) -> TimedStep {
    match a {
        Action::Delta => TimedStep::at_m(Action::Delta),
        other => TimedStep::before(other.clone()),
    }
}

/// Conformance preservation: the untimed verdict and the timed verdict over
/// every sampled bound agree, witnesses correspond under trace projection,
/// and the timed verdict is independent of the bound.
///
/// `inject_bug` deliberately drops the δ self-loops from the lifted models,
/// a mutation this oracle must catch.
pub fn oracle_conformance_preservation(
    imp: &Lts,
    spec: &Lts,
    m_samples: &[Rational],
    inject_bug: bool,
) -> Result<(), String> {
    let untimed = check_ioco(imp, spec).map_err(|e| e.to_string())?;
    let mut timed_verdicts = Vec::new();
    for m in m_samples {
        let mut lifted_imp = lift(imp, *m).map_err(|e| e.to_string())?;
        let mut lifted_spec = lift(spec, *m).map_err(|e| e.to_string())?;
        if inject_bug {
            lifted_imp.transitions.retain(|t| !t.action.is_delta());
            lifted_spec.transitions.retain(|t| !t.action.is_delta());
        }
        let timed = check_tioco_m(&lifted_imp, &lifted_spec).map_err(|e| e.to_string())?;
        timed_verdicts.push((*m, timed));
    }
    // Witnesses are symbolic, so the whole verdict must be identical for
    // every sampled bound.
    for window in timed_verdicts.windows(2) {
        let (m1, v1) = &window[0];
        let (m2, v2) = &window[1];
        if v1 != v2 {
            return Err(format!("timed verdicts differ between M={m1} and M={m2}"));
        }
    }
    for (m, timed) in &timed_verdicts {
        match (&untimed, timed) {
            (ConformanceVerdict::Conforms, TimedConformanceVerdict::Conforms) => {}
            (
                ConformanceVerdict::Fails { witness, offending },
                TimedConformanceVerdict::Fails {
                    witness: timed_witness,
                    offending: timed_offending,
                },
            ) => {
                if &project_trace(timed_witness) != witness {
                    return Err(format!(
                        "witness mismatch at M={m}: untimed `{witness}` vs projected \
                         `{}`",
                        project_trace(timed_witness)
                    ));
                }
                let expected: BTreeSet<TimedStep> =
                    offending.iter().map(timed_step_for).collect();
                if timed_offending != &expected {
                    return Err(format!("offending sets do not correspond at M={m}"));
                }
            }
            (ConformanceVerdict::Conforms, TimedConformanceVerdict::Fails { witness, .. }) => {
                return Err(format!(
                    "untimed check conforms but timed check fails at M={m} with `{witness}`"
                ));
            }
            (ConformanceVerdict::Fails { witness, .. }, TimedConformanceVerdict::Conforms) => {
                return Err(format!(
                    "untimed check fails with `{witness}` but timed check conforms at M={m}"
                ));
            }
        }
    }
    Ok(())
}

/// The symbolic checker and the projection route agree, verdict and witness.
pub fn oracle_dual_path(imp: &Lts, spec: &Lts, m_samples: &[Rational]) -> Result<(), String> {
    for m in m_samples {
        let lifted_imp = lift(imp, *m).map_err(|e| e.to_string())?;
        let lifted_spec = lift(spec, *m).map_err(|e| e.to_string())?;
        let symbolic = check_tioco_m(&lifted_imp, &lifted_spec).map_err(|e| e.to_string())?;
        let projected =
            check_tioco_via_projection(&lifted_imp, &lifted_spec).map_err(|e| e.to_string())?;
        if symbolic != projected {
            return Err(format!(
                "decision paths disagree at M={m}: symbolic {symbolic:?} vs projection \
                 {projected:?}"
            ));
        }
    }
    Ok(())
}

/// Lifting commutes with exhaustive test generation: lifted untimed suites
/// equal directly generated timed suites, as canonical serializations.
pub fn oracle_test_correspondence(spec: &Lts, bound: Rational, depth: usize) -> Result<(), String> {
    let lhs =
        crate::testing::exhaustive_lifted_suite_keys(spec, bound, depth).map_err(|e| e.to_string())?;
    let rhs = crate::testing::exhaustive_suite_keys_ta(
        &lift(spec, bound).map_err(|e| e.to_string())?,
        depth,
    )
    .map_err(|e| e.to_string())?;
    if lhs != rhs {
        return Err(format!(
            "suite mismatch at depth {depth}: {} lifted tests vs {} directly generated, \
             {} differing",
            lhs.len(),
            rhs.len(),
            lhs.symmetric_difference(&rhs).count()
        ));
    }
    Ok(())
}

/// Untimed and timed verdicts agree for a drawn test, with witnesses related
/// by the trace maps.
pub fn oracle_verdict_correspondence(
    imp: &Lts,
    spec: &Lts,
    bound: Rational,
    depth: usize,
    draw_seed: u64,
) -> Result<(), String> {
    let suite = generate_tests(
        spec,
        depth,
        GenerationMode::Random {
            seed: draw_seed,
            count: 1,
        },
    )
    .map_err(|e| e.to_string())?;
    let test = suite.iter().next().expect("one drawn test");
    let lifted_test = lift_test(test, bound).map_err(|e| e.to_string())?;
    let lifted_imp = lift(imp, bound).map_err(|e| e.to_string())?;

    let untimed = run_test_lts(test, imp).map_err(|e| e.to_string())?;
    let timed = run_test_ta(&lifted_test, &lifted_imp).map_err(|e| e.to_string())?;
    match (&untimed, &timed) {
        (Verdict::Pass, TimedVerdict::Pass) => Ok(()),
        (Verdict::Fail { witness }, TimedVerdict::Fail { witness: timed_witness }) => {
            if &lift_trace(witness) != timed_witness {
                return Err(format!(
                    "fail witnesses do not correspond: `{witness}` vs `{timed_witness}`"
                ));
            }
            if &project_trace(timed_witness) != witness {
                return Err("projection does not restore the untimed witness".to_string());
            }
            Ok(())
        }
        (u, t) => Err(format!("verdicts disagree: untimed {u:?} vs timed {t:?}")),
    }
}

/// The symbolic delay quotient is exact: the reference interpreter agrees
/// with the symbolic step relation on every reachable prefix up to `depth`,
/// for concrete delays `0` and `M/2` in the before-`M` class and exactly
/// `M` for the singleton class, including emptiness in both directions.
pub fn oracle_quotient_exactness(model: &Lts, bound: Rational, depth: usize) -> Result<(), String> {
    let ta = lift(model, bound).map_err(|e| e.to_string())?;
    let actions = ta.alphabet.suspension_actions();
    // (symbolic set, concrete configurations) along every prefix.
    let mut frontier = vec![(ta.initial_set(), BTreeSet::from([(ta.initial.clone(), Rational::zero())]), 0usize)];
    while let Some((sym, conc, len)) = frontier.pop() {
        if len == depth {
            continue;
        }
        for action in &actions {
            for class in [DelayClass::BeforeM, DelayClass::AtM] {
                let step = TimedStep {
                    class,
                    action: action.clone(),
                };
                let sym_next = ta.step_m(&sym, &step);
                let mut conc_next: Option<BTreeSet<Config>> = None;
                for d in class_representatives(class, bound) {
                    let reached = concrete_after(&ta, &conc, d, action);
                    let locs: BTreeSet<String> =
                        reached.iter().map(|(l, _)| l.clone()).collect();
                    if locs != sym_next {
                        return Err(format!(
                            "quotient mismatch after {len} steps on ({class}, {action}) with \
                             d={d}: symbolic {sym_next:?} vs concrete {locs:?}"
                        ));
                    }
                    if let Some(prev) = &conc_next {
                        if prev != &reached {
                            return Err(format!(
                                "concrete successors differ within class {class} on {action}"
                            ));
                        }
                    } else {
                        conc_next = Some(reached);
                    }
                }
                if !sym_next.is_empty() {
                    frontier.push((sym_next, conc_next.expect("checked above"), len + 1));
                }
            }
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Batch runner
// ---------------------------------------------------------------------------

/// Configuration of one oracle batch.
#[derive(Clone, Debug, PartialEq)]
pub struct OracleBatch {
    pub n_cases: usize,
    pub seed: u64,
    pub params: LtsParams,
    pub m_samples: Vec<Rational>,
    /// Depth of generated test suites.
    pub depth: usize,
    /// Depth of the bounded trace and quotient checks.
    pub trace_depth: usize,
    /// How many leading cases run the suite-equality oracle.
    pub suite_cases: usize,
    /// How many leading cases run the verdict-correspondence oracle.
    pub pair_cases: usize,
    /// How many leading cases run the quotient-exactness oracle.
    pub quotient_cases: usize,
    /// Drop δ self-loops from lifted models in the conformance oracle; the
    /// batch must then report counterexamples.
    pub inject_bug: bool,
}

impl Default for OracleBatch {
    fn default() -> Self {
        OracleBatch {
            n_cases: 200,
            seed: 42,
            params: LtsParams::default(),
            m_samples: default_m_samples(),
            depth: 3,
            trace_depth: 4,
            suite_cases: 50,
            pair_cases: 100,
            quotient_cases: 50,
            inject_bug: false,
        }
    }
}

/// The bounds checked by default: an integer, a proper fraction, and a
/// larger integer.
pub fn default_m_samples() -> Vec<Rational> {
    vec![Rational::from_int(1), Rational::new(3, 2), Rational::from_int(5)]
}

/// The seeded (implementation, specification, draw seed) sequence a batch
/// with this seed and these parameters works through. The implementation is
/// the input-enabled completion of a random model.
pub fn batch_models(
    n_cases: usize,
    seed: u64,
    params: &LtsParams,
) -> Result<Vec<(Lts, Lts, u64)>, ModelError> {
    let mut master = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::with_capacity(n_cases);
    for _ in 0..n_cases {
        let spec_seed = master.next_u64();
        let impl_seed = master.next_u64();
        let draw_seed = master.next_u64();
        let spec = random_lts(spec_seed, params)?;
        let imp = make_input_enabled(&random_lts(impl_seed, params)?);
        cases.push((imp, spec, draw_seed));
    }
    Ok(cases)
}

/// Outcome of a batch run: a deterministic plain-text report plus counts.
#[derive(Clone, Debug)]
pub struct TheoremReport {
    pub text: String,
    pub runs: usize,
    pub failures: usize,
}

impl TheoremReport {
    pub fn all_passed(&self) -> bool {
        self.failures == 0
    }
}

struct Tally {
    name: &'static str,
    runs: usize,
    passes: usize,
}

/// Runs the oracle batteries over seeded random (implementation,
/// specification) pairs and assembles a byte-deterministic report.
pub fn check_theorems(batch: &OracleBatch) -> Result<TheoremReport, ModelError> {
    let mut master = ChaCha8Rng::seed_from_u64(batch.seed);
    let mut lines = String::new();
    let mut counterexamples = String::new();
    let _ = writeln!(lines, "oracle batch");
    let _ = writeln!(lines, "cases: {}", batch.n_cases);
    let _ = writeln!(lines, "seed: {}", batch.seed);
    let _ = writeln!(
        lines,
        "params: max_states={} inputs={} outputs={} density={:.2}",
        batch.params.max_states,
        batch.params.n_inputs,
        batch.params.n_outputs,
        batch.params.edge_density
    );
    let _ = writeln!(
        lines,
        "m-set: {}",
        batch
            .m_samples
            .iter()
            .map(|m| m.to_string())
            .collect::<Vec<_>>()
            .join(", ")
    );
    let _ = writeln!(lines, "suite depth: {}", batch.depth);
    let _ = writeln!(lines, "trace depth: {}", batch.trace_depth);
    if batch.inject_bug {
        let _ = writeln!(lines, "mutation: delta self-loops dropped from lifted models");
    }

    let mut tallies = [
        Tally { name: "canonic-traces", runs: 0, passes: 0 },
        Tally { name: "input-enabledness", runs: 0, passes: 0 },
        Tally { name: "conformance-preservation", runs: 0, passes: 0 },
        Tally { name: "dual-path", runs: 0, passes: 0 },
        Tally { name: "test-correspondence", runs: 0, passes: 0 },
        Tally { name: "verdict-correspondence", runs: 0, passes: 0 },
        Tally { name: "quotient-exactness", runs: 0, passes: 0 },
    ];

    let first_m = batch
        .m_samples
        .first()
        .copied()
        .unwrap_or_else(|| Rational::from_int(1));

    for case in 0..batch.n_cases {
        let spec_seed = master.next_u64();
        let impl_seed = master.next_u64();
        let draw_seed = master.next_u64();
        let spec = random_lts(spec_seed, &batch.params)?;
        let imp = make_input_enabled(&random_lts(impl_seed, &batch.params)?);

        let mut record =
            |tally_idx: usize,
             outcome: Result<(), String>,
             lines: &mut String,
             counterexamples: &mut String| {
                let tally = &mut tallies[tally_idx];
                tally.runs += 1;
                match outcome {
                    Ok(()) => {
                        tally.passes += 1;
                        let _ = writeln!(lines, "case {case:04}: {} ok", tally.name);
                    }
                    Err(reason) => {
                        let _ = writeln!(lines, "case {case:04}: {} FAIL", tally.name);
                        let _ = writeln!(counterexamples, "counterexample case {case:04} {}", tally.name);
                        let _ = writeln!(counterexamples, "{reason}");
                        let _ = writeln!(counterexamples, "--- impl");
                        let _ = write!(
                            counterexamples,
                            "{}",
                            crate::format::serialize_lts(&imp).unwrap_or_default()
                        );
                        let _ = writeln!(counterexamples, "--- spec");
                        let _ = write!(
                            counterexamples,
                            "{}",
                            crate::format::serialize_lts(&spec).unwrap_or_default()
                        );
                    }
                }
            };

        let mut traces_outcome = Ok(());
        for m in &batch.m_samples {
            for model in [&imp, &spec] {
                if traces_outcome.is_ok() {
                    traces_outcome = oracle_canonic_traces(model, *m, batch.trace_depth);
                }
            }
        }
        record(0, traces_outcome, &mut lines, &mut counterexamples);

        let mut iota_outcome = Ok(());
        for m in &batch.m_samples {
            if iota_outcome.is_ok() {
                iota_outcome = oracle_input_enabled_lift(&imp, *m);
            }
        }
        record(1, iota_outcome, &mut lines, &mut counterexamples);

        record(
            2,
            oracle_conformance_preservation(&imp, &spec, &batch.m_samples, batch.inject_bug),
            &mut lines,
            &mut counterexamples,
        );
        record(
            3,
            oracle_dual_path(&imp, &spec, &batch.m_samples),
            &mut lines,
            &mut counterexamples,
        );

        // The suite and verdict oracles cycle through the sampled bounds
        // case by case, covering each bound across the batch.
        let cycled_m = batch
            .m_samples
            .get(case % batch.m_samples.len().max(1))
            .copied()
            .unwrap_or(first_m);
        if case < batch.suite_cases {
            record(
                4,
                oracle_test_correspondence(&spec, cycled_m, batch.depth),
                &mut lines,
                &mut counterexamples,
            );
        }
        if case < batch.pair_cases {
            record(
                5,
                oracle_verdict_correspondence(&imp, &spec, cycled_m, batch.depth, draw_seed),
                &mut lines,
                &mut counterexamples,
            );
        }
        if case < batch.quotient_cases {
            record(
                6,
                oracle_quotient_exactness(&spec, cycled_m, batch.trace_depth),
                &mut lines,
                &mut counterexamples,
            );
        }
    }

    let mut runs = 0;
    let mut failures = 0;
    let _ = writeln!(lines, "summary");
    for tally in &tallies {
        if tally.runs == 0 {
            continue;
        }
        runs += tally.runs;
        failures += tally.runs - tally.passes;
        let _ = writeln!(lines, "{}: {}/{}", tally.name, tally.passes, tally.runs);
    }
    let _ = writeln!(
        lines,
        "result: {}",
        if failures == 0 {
            "ok".to_string()
        } else {
            format!("FAIL ({failures} oracle failures)")
        }
    );
    if !counterexamples.is_empty() {
        lines.push('\n');
        lines.push_str(&counterexamples);
    }

    Ok(TheoremReport {
        text: lines,
        runs,
        failures,
    })
}
