use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use tioco::format::{parse, serialize_lts};
use tioco::samples;
use tioco::testing::{generate_tests, GenerationMode};
use tioco::{check_ioco, check_tioco_m, lift, Rational};
use tioco_bench::model_pair;

fn bench_check_ioco(c: &mut Criterion) {
    let spec = samples::lts_a();
    let imp = samples::iots_c();
    c.bench_function("check_ioco/figures", |b| {
        b.iter(|| check_ioco(black_box(&imp), black_box(&spec)).unwrap())
    });

    let (imp, spec) = model_pair(7, 10);
    c.bench_function("check_ioco/random_10_states", |b| {
        b.iter(|| check_ioco(black_box(&imp), black_box(&spec)).unwrap())
    });
}

fn bench_lift_and_timed_check(c: &mut Criterion) {
    let (imp, spec) = model_pair(7, 10);
    let m = Rational::new(3, 2);
    c.bench_function("lift/random_10_states", |b| {
        b.iter(|| lift(black_box(&imp), black_box(m)).unwrap())
    });

    let lifted_imp = lift(&imp, m).unwrap();
    let lifted_spec = lift(&spec, m).unwrap();
    c.bench_function("check_tioco_m/random_10_states", |b| {
        b.iter(|| check_tioco_m(black_box(&lifted_imp), black_box(&lifted_spec)).unwrap())
    });
}

fn bench_generation(c: &mut Criterion) {
    let spec = samples::lts_a();
    c.bench_function("generate_tests/exhaustive_depth_3", |b| {
        b.iter(|| generate_tests(black_box(&spec), 3, GenerationMode::Exhaustive).unwrap())
    });
    c.bench_function("generate_tests/random_50_depth_4", |b| {
        b.iter(|| {
            generate_tests(
                black_box(&spec),
                4,
                GenerationMode::Random { seed: 11, count: 50 },
            )
            .unwrap()
        })
    });
}

fn bench_format(c: &mut Criterion) {
    let text = serialize_lts(&samples::iots_b()).unwrap();
    c.bench_function("parse/figure_model", |b| {
        b.iter(|| parse(black_box(&text)).unwrap())
    });
}

criterion_group!(
    benches,
    bench_check_ioco,
    bench_lift_and_timed_check,
    bench_generation,
    bench_format
);
criterion_main!(benches);
