//! Shared fixtures for the benchmarks.

use splitlts::corpus::{case, Case};
use splitlts::TripleSystem;

/// Sizes used for the identity-check scaling benchmark.
pub const IDENTITY_SIZES: std::ops::RangeInclusive<usize> = 2..=8;

pub fn zero_system(n: usize) -> TripleSystem {
    TripleSystem::zero(n).expect("positive dimension")
}

pub fn corpus_case(name: &str) -> Case {
    case(name).unwrap_or_else(|| panic!("no corpus case {name}"))
}

/// Cases large enough for the pipeline timings to be meaningful.
pub const PIPELINE_CASES: [&str; 4] = ["c3-sl2", "c4-sl2-sum", "c5-hs-adjoint", "c6-hs-natural"];
