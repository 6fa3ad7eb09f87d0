//! Benchmark fixtures: reproducible model pairs at a few sizes.

use tioco::lab::{make_input_enabled, random_lts, LtsParams};
use tioco::Lts;

/// A seeded (implementation, specification) pair with `max_states` states.
pub fn model_pair(seed: u64, max_states: usize) -> (Lts, Lts) {
    let params = LtsParams {
        max_states,
        ..LtsParams::default()
    };
    let spec = random_lts(seed, &params).expect("valid params");
    let imp = make_input_enabled(&random_lts(seed.wrapping_add(1), &params).expect("valid params"));
    (imp, spec)
}
