//! Generated suites against an independent size oracle, and the link
//! between the conformance verdict and suite execution.

use std::collections::HashMap;

use tioco::action::Action;
use tioco::lab::{batch_models, LtsParams};
use tioco::lts::{Lts, StateSet};
use tioco::samples;
use tioco::testing::{generate_tests, run_suite, GenerationMode};
use tioco::{check_ioco, ConformanceVerdict};

/// Counts the resolutions of the generation scheme without building any
/// tree: stop, plus the branch products of observe and of each stimulate.
fn count_resolutions(
    spec: &Lts,
    q: &StateSet,
    depth: usize,
    memo: &mut HashMap<(StateSet, usize), u128>,
) -> u128 {
    if depth == 0 {
        return 1;
    }
    if let Some(hit) = memo.get(&(q.clone(), depth)) {
        return *hit;
    }
    let out = spec.out_set(q);
    let observe: u128 = spec
        .alphabet
        .output_actions()
        .chain(std::iter::once(Action::Delta))
        .map(|a| {
            if out.contains(&a) {
                count_resolutions(spec, &spec.after(q, &a).unwrap(), depth - 1, memo)
            } else {
                1
            }
        })
        .product();
    let stimulate: u128 = spec
        .in_set(q)
        .into_iter()
        .map(|i| {
            let input_part =
                count_resolutions(spec, &spec.after(q, &i).unwrap(), depth - 1, memo);
            let output_part: u128 = spec
                .alphabet
                .output_actions()
                .map(|a| {
                    if out.contains(&a) {
                        count_resolutions(spec, &spec.after(q, &a).unwrap(), depth - 1, memo)
                    } else {
                        1
                    }
                })
                .product();
            input_part * output_part
        })
        .sum();
    let total = 1 + observe + stimulate;
    memo.insert((q.clone(), depth), total);
    total
}

fn suite_size(spec: &Lts, depth: usize) -> u128 {
    count_resolutions(spec, &spec.initial_set(), depth, &mut HashMap::new())
}

#[test]
fn suite_sizes_match_the_counting_oracle() {
    let mut checked = 0;
    for (model, depth) in [
        (samples::lts_a(), 3),
        (samples::iots_b(), 2),
        (samples::iots_c(), 3),
        (samples::iots_d(), 3),
    ] {
        let expected = suite_size(&model, depth);
        let suite = generate_tests(&model, depth, GenerationMode::Exhaustive).unwrap();
        assert_eq!(suite.len() as u128, expected);
        checked += 1;
    }
    for (_, spec, _) in batch_models(12, 9, &LtsParams::default()).unwrap() {
        for depth in 0..=2 {
            let expected = suite_size(&spec, depth);
            let suite = generate_tests(&spec, depth, GenerationMode::Exhaustive).unwrap();
            assert_eq!(suite.len() as u128, expected);
            checked += 1;
        }
    }
    assert!(checked > 30);
}

#[test]
fn conforming_implementations_pass_exhaustive_suites() {
    let cases = batch_models(25, 5, &LtsParams::default()).unwrap();
    let mut conforming = 0;
    for (imp, spec, _) in &cases {
        if check_ioco(imp, spec).unwrap() != ConformanceVerdict::Conforms {
            continue;
        }
        conforming += 1;
        for depth in 0..=3 {
            if suite_size(spec, depth) > 20_000 {
                continue;
            }
            let suite = generate_tests(spec, depth, GenerationMode::Exhaustive).unwrap();
            let report = run_suite(&suite, imp).unwrap();
            assert!(
                report.overall_pass(),
                "conforming implementation failed a depth-{depth} suite"
            );
        }
    }
    assert!(conforming > 0, "no conforming pair in the sample");
}

#[test]
fn short_witnesses_are_caught_by_exhaustive_suites() {
    let cases = batch_models(25, 5, &LtsParams::default()).unwrap();
    let mut caught = 0;
    for (imp, spec, _) in &cases {
        let witness = match check_ioco(imp, spec).unwrap() {
            ConformanceVerdict::Conforms => continue,
            ConformanceVerdict::Fails { witness, .. } => witness,
        };
        let depth = witness.len() + 1;
        if depth > 3 || suite_size(spec, depth) > 20_000 {
            continue;
        }
        let suite = generate_tests(spec, depth, GenerationMode::Exhaustive).unwrap();
        let report = run_suite(&suite, imp).unwrap();
        assert!(
            !report.overall_pass(),
            "nonconforming implementation passed the depth-{depth} suite"
        );
        caught += 1;
    }
    assert!(caught > 0, "no nonconforming pair exercised");
}
