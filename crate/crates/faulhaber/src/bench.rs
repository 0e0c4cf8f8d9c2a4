//! Wall-clock timings for the three computational phases.
//!
//! The math is deterministic; only the time varies. Each repetition rebuilds
//! the table from scratch, runs the factorization sweep, and rebuilds every
//! order through the Bernoulli closed form. Medians over repetitions keep
//! one slow run (cold caches, scheduler noise) from skewing the report.

use std::time::Instant;

use crate::series::{power_sum_bernoulli, BernoulliCache, FaulhaberTable};

/// Per-phase repetition timings in nanoseconds, plus the cumulative
/// per-order build curve from the final repetition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchReport {
    pub max_order: usize,
    pub repetitions: usize,
    pub build_nanos: Vec<u64>,
    pub verify_nanos: Vec<u64>,
    pub bernoulli_nanos: Vec<u64>,
    pub cumulative_build_nanos: Vec<u64>,
}

impl BenchReport {
    pub fn build_median(&self) -> u64 {
        median(&self.build_nanos)
    }

    pub fn verify_median(&self) -> u64 {
        median(&self.verify_nanos)
    }

    pub fn bernoulli_median(&self) -> u64 {
        median(&self.bernoulli_nanos)
    }
}

/// Median of raw nanosecond samples (mean of the middle pair when even).
fn median(samples: &[u64]) -> u64 {
    assert!(!samples.is_empty(), "median of no samples");
    let mut sorted = samples.to_vec();
    sorted.sort_unstable();
    let mid = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[mid]
    } else {
        sorted[mid - 1] / 2 + sorted[mid] / 2 + (sorted[mid - 1] % 2 + sorted[mid] % 2) / 2
    }
}

fn nanos(elapsed: std::time::Duration) -> u64 {
    u64::try_from(elapsed.as_nanos()).unwrap_or(u64::MAX)
}

/// Run all phases `repetitions` times against a fresh table each time.
pub fn run(max_order: usize, repetitions: usize) -> BenchReport {
    assert!(repetitions >= 1, "at least one repetition");
    let mut report = BenchReport {
        max_order,
        repetitions,
        build_nanos: Vec::with_capacity(repetitions),
        verify_nanos: Vec::with_capacity(repetitions),
        bernoulli_nanos: Vec::with_capacity(repetitions),
        cumulative_build_nanos: Vec::new(),
    };
    for _ in 0..repetitions {
        let start = Instant::now();
        let (table, cumulative) = FaulhaberTable::build_instrumented(max_order);
        report.build_nanos.push(nanos(start.elapsed()));
        report.cumulative_build_nanos = cumulative.into_iter().map(nanos).collect();

        let start = Instant::now();
        let sweep = crate::factor::verify_factorization_range(&table, 2, max_order)
            .expect("range within the table");
        assert!(sweep.all_pass(), "benchmark found a factorization failure");
        report.verify_nanos.push(nanos(start.elapsed()));

        let start = Instant::now();
        let cache = BernoulliCache::compute(max_order);
        for order in 0..=max_order {
            power_sum_bernoulli(order, &cache).expect("cache covers the range");
        }
        report.bernoulli_nanos.push(nanos(start.elapsed()));
    }
    report
}
