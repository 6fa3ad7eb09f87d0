//! Property tests over independently generated random models.
//!
//! The model strategy here is deliberately separate from the library's own
//! seeded generator, and the suspension-trace membership oracle is a direct
//! recursive reading of the definitions rather than the subset construction.

use std::collections::BTreeSet;

use proptest::prelude::*;

use tioco::action::{Action, Alphabet};
use tioco::conformance::check_ioco_with_stats;
use tioco::lab::make_input_enabled;
use tioco::lts::{DeltaStyle, Lts, StateSet, SuspensionTrace, Transition};
use tioco::ta::DelayClass;
use tioco::{lift, Rational};

fn state_name(k: usize) -> String {
    format!("s{k}")
}

fn label_for(index: usize, n_inputs: usize, n_outputs: usize) -> Option<Action> {
    let names = ["a", "b", "x", "y"];
    if index < n_inputs {
        Some(Action::input(names[index]))
    } else if index < n_inputs + n_outputs {
        Some(Action::output(names[2 + index - n_inputs]))
    } else {
        None
    }
}

/// Small random models: up to 5 states, up to 2 inputs and 2 outputs,
/// arbitrary (possibly nondeterministic) edges.
fn arb_lts() -> impl Strategy<Value = Lts> {
    (
        1usize..=5,
        0usize..=2,
        0usize..=2,
        proptest::collection::vec((0usize..5, 0usize..4, 0usize..5), 0..18),
    )
        .prop_map(|(n, n_inputs, n_outputs, raw_edges)| {
            let states: BTreeSet<String> = (0..n).map(state_name).collect();
            let alphabet = Alphabet::new(
                (0..n_inputs).map(|i| ["a", "b"][i]),
                (0..n_outputs).map(|o| ["x", "y"][o]),
            );
            let transitions = raw_edges
                .into_iter()
                .filter_map(|(src, label, tgt)| {
                    let action = label_for(label % 4, n_inputs, n_outputs)?;
                    Some(Transition::new(state_name(src % n), action, state_name(tgt % n)))
                })
                .collect();
            Lts {
                states,
                initial: state_name(0),
                alphabet,
                transitions,
                delta_style: DeltaStyle::Derived,
            }
        })
}

/// Pairs over a shared alphabet, the second input-enabled.
fn arb_pair() -> impl Strategy<Value = (Lts, Lts)> {
    arb_lts().prop_flat_map(|spec| {
        let alphabet = spec.alphabet.clone();
        let n_inputs = alphabet.inputs.len();
        let n_outputs = alphabet.outputs.len();
        (
            Just(spec),
            (
                1usize..=5,
                proptest::collection::vec((0usize..5, 0usize..4, 0usize..5), 0..18),
            )
                .prop_map(move |(n, raw_edges)| {
                    let transitions = raw_edges
                        .into_iter()
                        .filter_map(|(src, label, tgt)| {
                            let action = label_for(label % 4, n_inputs, n_outputs)?;
                            Some(Transition::new(
                                state_name(src % n),
                                action,
                                state_name(tgt % n),
                            ))
                        })
                        .collect();
                    let imp = Lts {
                        states: (0..n).map(state_name).collect(),
                        initial: state_name(0),
                        alphabet: alphabet.clone(),
                        transitions,
                        delta_style: DeltaStyle::Derived,
                    };
                    make_input_enabled(&imp)
                }),
        )
            .prop_map(|(spec, imp)| (spec, imp))
    })
}

/// Recursive membership oracle: σ is a suspension trace from `state`.
fn is_strace_from(model: &Lts, state: &str, trace: &[Action]) -> bool {
    match trace.split_first() {
        None => true,
        Some((Action::Delta, rest)) => {
            model.is_quiescent_state(state).unwrap() && is_strace_from(model, state, rest)
        }
        Some((a, rest)) => model
            .transitions
            .iter()
            .any(|t| t.source == state && &t.action == a && is_strace_from(model, &t.target, rest)),
    }
}

fn all_traces_upto(alphabet: &Alphabet, depth: usize) -> Vec<SuspensionTrace> {
    let actions = alphabet.suspension_actions();
    let mut all = vec![SuspensionTrace::empty()];
    let mut frontier = vec![SuspensionTrace::empty()];
    for _ in 0..depth {
        let mut next = Vec::new();
        for t in &frontier {
            for a in &actions {
                let ext = t.extended(a.clone());
                all.push(ext.clone());
                next.push(ext);
            }
        }
        frontier = next;
    }
    all
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn after_on_empty_set_is_empty(model in arb_lts()) {
        for a in model.alphabet.suspension_actions() {
            prop_assert!(model.after(&StateSet::new(), &a).unwrap().is_empty());
        }
    }

    #[test]
    fn delta_step_is_idempotent(model in arb_lts()) {
        let q: StateSet = model.states.clone();
        let once = model.after(&q, &Action::Delta).unwrap();
        let twice = model.after(&once, &Action::Delta).unwrap();
        prop_assert_eq!(once, twice);
    }

    #[test]
    fn out_set_is_monotone(model in arb_lts()) {
        let all: Vec<String> = model.states.iter().cloned().collect();
        let half: StateSet = all.iter().take(all.len() / 2).cloned().collect();
        let full: StateSet = all.into_iter().collect();
        prop_assert!(model.out_set(&half).is_subset(&model.out_set(&full)));
    }

    #[test]
    fn straces_match_recursive_oracle(model in arb_lts()) {
        let enumerated = model.straces_upto(3);
        for trace in all_traces_upto(&model.alphabet, 3) {
            let by_oracle = is_strace_from(&model, &model.initial, &trace.0);
            let by_after = !model
                .after_trace(&model.initial_set(), &trace)
                .unwrap()
                .is_empty();
            prop_assert_eq!(by_oracle, by_after, "trace {}", trace);
            prop_assert_eq!(enumerated.contains(&trace), by_oracle, "trace {}", trace);
        }
    }

    #[test]
    fn straces_are_prefix_closed(model in arb_lts()) {
        let traces = model.straces_upto(3);
        for t in &traces {
            for cut in 0..t.len() {
                let prefix = SuspensionTrace(t.0[..cut].to_vec());
                prop_assert!(traces.contains(&prefix));
            }
        }
    }

    #[test]
    fn lift_preserves_structure(model in arb_lts()) {
        let bound = Rational::new(3, 2);
        let ta = lift(&model, bound).unwrap();
        prop_assert_eq!(&ta.locations, &model.states);
        let act_edges = ta.transitions.iter().filter(|t| !t.action.is_delta()).count();
        prop_assert_eq!(act_edges, model.transitions.len());
        let quiescent = model
            .states
            .iter()
            .filter(|s| model.is_quiescent_state(s).unwrap())
            .count();
        let delta_edges = ta.transitions.iter().filter(|t| t.action.is_delta()).count();
        prop_assert_eq!(delta_edges, quiescent);
        prop_assert_eq!(ta.validate_canonic(), Vec::<String>::new());
    }

    #[test]
    fn input_enabled_models_lift_to_input_enabled_automata(model in arb_lts()) {
        let completed = make_input_enabled(&model);
        for m in [Rational::from_int(1), Rational::new(3, 2), Rational::from_int(5)] {
            prop_assert!(lift(&completed, m).unwrap().is_iota());
        }
    }

    #[test]
    fn projection_restores_the_model(model in arb_lts()) {
        let ta = lift(&model, Rational::from_int(2)).unwrap();
        let projected = tioco::project_ta(&ta).unwrap();
        let (delta_edges, act_edges): (BTreeSet<_>, BTreeSet<_>) = projected
            .transitions
            .iter()
            .cloned()
            .partition(|t| t.action.is_delta());
        prop_assert_eq!(&act_edges, &model.transitions);
        for t in &delta_edges {
            prop_assert_eq!(&t.source, &t.target);
            prop_assert!(model.is_quiescent_state(&t.source).unwrap());
        }
        prop_assert_eq!(
            delta_edges.len(),
            model.states.iter().filter(|s| model.is_quiescent_state(s).unwrap()).count()
        );
    }

    #[test]
    fn symbolic_out_is_well_formed_on_reachable_sets(model in arb_lts()) {
        let ta = lift(&model, Rational::from_int(1)).unwrap();
        let mut frontier = vec![ta.initial_set()];
        let mut seen = BTreeSet::new();
        while let Some(q) = frontier.pop() {
            if !seen.insert(q.clone()) {
                continue;
            }
            for step in ta.out_m(&q) {
                match step.class {
                    DelayClass::AtM => prop_assert!(step.action.is_delta()),
                    DelayClass::BeforeM => prop_assert!(step.action.is_output()),
                }
            }
            for action in ta.alphabet.suspension_actions() {
                for class in [DelayClass::BeforeM, DelayClass::AtM] {
                    let next = ta
                        .after_m(&q, &tioco::TimedStep { class, action: action.clone() })
                        .unwrap();
                    if !next.is_empty() && !seen.contains(&next) {
                        frontier.push(next);
                    }
                }
            }
        }
    }

    #[test]
    fn sttraces_are_prefix_closed(model in arb_lts()) {
        let ta = lift(&model, Rational::from_int(1)).unwrap();
        let traces = ta.sttraces_upto(3);
        for t in &traces {
            for cut in 0..t.len() {
                let prefix = tioco::TimedTrace(t.0[..cut].to_vec());
                prop_assert!(traces.contains(&prefix));
            }
        }
    }

    #[test]
    fn conformance_check_visits_at_most_the_pair_space(
        (spec, imp) in arb_pair()
    ) {
        let (_, visited) = check_ioco_with_stats(&imp, &spec).unwrap();
        let bound = 1usize << imp.states.len().min(20);
        let bound = bound.saturating_mul(1usize << spec.states.len().min(20));
        prop_assert!(visited <= bound, "visited {} pairs, bound {}", visited, bound);
    }

    #[test]
    fn conformance_witness_replays(
        (spec, imp) in arb_pair()
    ) {
        // The checker itself replays every Fails verdict internally; this
        // re-checks from the outside and pins witness minimality.
        match tioco::check_ioco(&imp, &spec).unwrap() {
            tioco::ConformanceVerdict::Conforms => {}
            tioco::ConformanceVerdict::Fails { witness, offending } => {
                let qi = imp.after_trace(&imp.initial_set(), &witness).unwrap();
                let qs = spec.after_trace(&spec.initial_set(), &witness).unwrap();
                prop_assert!(!qs.is_empty(), "witness must be a specification trace");
                let diff: BTreeSet<_> =
                    imp.out_set(&qi).difference(&spec.out_set(&qs)).cloned().collect();
                prop_assert_eq!(&diff, &offending);
                // No strictly shorter counterexample exists.
                for shorter in spec.straces_upto(witness.len().saturating_sub(1)) {
                    if shorter.len() >= witness.len() {
                        continue;
                    }
                    let qs = spec.after_trace(&spec.initial_set(), &shorter).unwrap();
                    if qs.is_empty() {
                        continue;
                    }
                    let qi = imp.after_trace(&imp.initial_set(), &shorter).unwrap();
                    prop_assert!(
                        imp.out_set(&qi).is_subset(&spec.out_set(&qs)),
                        "shorter counterexample {} exists",
                        shorter
                    );
                }
            }
        }
    }
}
