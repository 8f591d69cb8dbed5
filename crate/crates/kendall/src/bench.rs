//! Desk-scale scaling measurements: the merge-sort path against the
//! quadratic oracle on synthetic data.
//!
//! Samples are generated from a seeded ChaCha stream so a report is
//! reproducible bit-for-bit anywhere. Every timed run additionally
//! asserts that it produced the same tau as the warmup run — a benchmark
//! that silently computed different numbers would be worthless.

use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::Serialize;

use crate::error::Error;
use crate::oracle::brute_force_tau;
use crate::sample::PairedSample;
use crate::tau::kendall_tau;

/// Largest n at which timing the quadratic oracle is still reasonable
/// (about 2·10⁸ pair comparisons).
pub const DEFAULT_NAIVE_CUTOFF: usize = 20_000;

/// Which implementation to time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TimingTarget {
    /// The O(n log n) merge-sort path.
    Fast,
    /// The O(n²) pair-classification oracle.
    Naive,
}

/// Timings for one sample size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchEntry {
    pub n: usize,
    /// Median seconds per run of the fast path.
    pub fast_median_s: f64,
    /// Median seconds per run of the oracle; absent above the cutoff.
    pub naive_median_s: Option<f64>,
    /// Timed repetitions behind each median.
    pub reps: u32,
}

/// A full scaling run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BenchReport {
    pub seed: u64,
    pub entries: Vec<BenchEntry>,
    /// Least-squares slope of ln(time) against ln(n) for the fast path;
    /// near 1 for an O(n log n) implementation at these sizes.
    pub fast_loglog_slope: f64,
}

impl BenchReport {
    /// CSV form, one row per size, empty cell where the oracle was not
    /// timed. Floats keep full precision.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,fast_median_s,naive_median_s,reps\n");
        for entry in &self.entries {
            let naive = entry
                .naive_median_s
                .map(|v| v.to_string())
                .unwrap_or_default();
            out.push_str(&format!(
                "{},{},{},{}\n",
                entry.n, entry.fast_median_s, naive, entry.reps
            ));
        }
        out
    }

    /// One-line JSON form.
    pub fn to_json(&self) -> String {
        let mut line = serde_json::to_string(self).expect("report serialization cannot fail");
        line.push('\n');
        line
    }
}

/// Deterministic pair of standard-normal vectors: the same n and seed
/// give the same bits on any platform. Ties are (measure-zero)
/// practically impossible, so the samples suit both p-value engines.
///
/// Panics if n < 2, which could not form a valid sample.
pub fn generate_random_sample(n: usize, seed: u64) -> PairedSample {
    assert!(n >= 2, "a paired sample needs at least 2 observations");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x = Vec::with_capacity(n);
    for _ in 0..n {
        x.push(StandardNormal.sample(&mut rng));
    }
    let mut y = Vec::with_capacity(n);
    for _ in 0..n {
        y.push(StandardNormal.sample(&mut rng));
    }
    PairedSample::new(x, y).expect("normal draws are finite")
}

/// Times one implementation on one sample: one warmup run, then `reps`
/// timed runs (at least 3), returning the median seconds per run.
///
/// Returns [`Error::NaiveCutoffExceeded`] rather than timing the oracle
/// beyond `naive_cutoff`. Panics if any timed run disagrees with the
/// warmup result — the harness must never report times for computations
/// that are not bit-identical.
pub fn time_tau(
    sample: &PairedSample,
    reps: u32,
    target: TimingTarget,
    naive_cutoff: usize,
) -> Result<f64, Error> {
    if reps < 3 {
        return Err(Error::TooFewReps { reps });
    }
    if target == TimingTarget::Naive && sample.n() > naive_cutoff {
        return Err(Error::NaiveCutoffExceeded {
            n: sample.n(),
            cutoff: naive_cutoff,
        });
    }
    let run = |sample: &PairedSample| -> Result<f64, Error> {
        match target {
            TimingTarget::Fast => Ok(kendall_tau(sample)?.tau),
            TimingTarget::Naive => brute_force_tau(sample),
        }
    };
    let reference = run(sample)?; // warmup
    let mut times = Vec::with_capacity(reps as usize);
    for _ in 0..reps {
        let start = Instant::now();
        let tau = run(sample)?;
        times.push(start.elapsed().as_secs_f64());
        assert_eq!(
            tau.to_bits(),
            reference.to_bits(),
            "timed run disagreed with warmup"
        );
    }
    Ok(median(&mut times))
}

fn median(times: &mut [f64]) -> f64 {
    times.sort_by(|a, b| a.partial_cmp(b).expect("timings are finite"));
    let mid = times.len() / 2;
    if times.len() % 2 == 1 {
        times[mid]
    } else {
        (times[mid - 1] + times[mid]) / 2.0
    }
}

/// Runs the full scaling comparison over `sizes`.
///
/// Sizes are sorted and deduplicated; there must be at least 3 of them
/// spanning at least a 10x range, or [`Error::InsufficientSizes`] is
/// returned. Each size gets its own sample drawn with the same seed. The
/// oracle is timed only for sizes up to `naive_cutoff`.
pub fn scaling_report(
    sizes: &[usize],
    reps: u32,
    seed: u64,
    naive_cutoff: usize,
) -> Result<BenchReport, Error> {
    let mut sizes = sizes.to_vec();
    sizes.sort_unstable();
    sizes.dedup();
    match (sizes.first(), sizes.last()) {
        (Some(&lo), Some(&hi)) if sizes.len() >= 3 && hi >= 10 * lo => {}
        _ => return Err(Error::InsufficientSizes),
    }
    if sizes[0] < 2 {
        return Err(Error::TooShort { n: sizes[0] });
    }

    let mut entries = Vec::with_capacity(sizes.len());
    for &n in &sizes {
        let sample = generate_random_sample(n, seed);
        let fast_median_s = time_tau(&sample, reps, TimingTarget::Fast, naive_cutoff)?;
        let naive_median_s = if n <= naive_cutoff {
            Some(time_tau(&sample, reps, TimingTarget::Naive, naive_cutoff)?)
        } else {
            None
        };
        entries.push(BenchEntry {
            n,
            fast_median_s,
            naive_median_s,
            reps,
        });
    }

    let points: Vec<(f64, f64)> = entries
        .iter()
        .map(|e| (e.n as f64, e.fast_median_s))
        .collect();
    Ok(BenchReport {
        seed,
        entries,
        fast_loglog_slope: log_log_slope(&points),
    })
}

/// Least-squares slope of ln(y) against ln(x).
///
/// Values at or below zero are clamped to 1e-12 before the logarithm so a
/// timer with coarse resolution cannot produce NaN.
pub fn log_log_slope(points: &[(f64, f64)]) -> f64 {
    let logs: Vec<(f64, f64)> = points
        .iter()
        .map(|&(x, y)| (x.max(1e-12).ln(), y.max(1e-12).ln()))
        .collect();
    let k = logs.len() as f64;
    let mean_x = logs.iter().map(|p| p.0).sum::<f64>() / k;
    let mean_y = logs.iter().map(|p| p.1).sum::<f64>() / k;
    let mut covariance = 0.0;
    let mut variance = 0.0;
    for (x, y) in logs {
        covariance += (x - mean_x) * (y - mean_y);
        variance += (x - mean_x) * (x - mean_x);
    }
    covariance / variance
}
