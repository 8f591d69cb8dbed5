//! Deliberately naive reference implementations.
//!
//! Everything here walks all n(n−1)/2 pairs (or all n! permutations) and
//! shares no code with the O(n log n) path, so the two sides can check
//! each other. The quadratic tau also doubles as the slow competitor in
//! the scaling benchmark.

use std::collections::BTreeMap;

use crate::error::{Axis, Error};
use crate::sample::PairedSample;

/// Exact classification of every unordered pair into the five exclusive
/// categories: concordant, discordant, tied only in x, tied only in y,
/// tied in both.
///
/// The categories always partition the pairs, so
/// `concordant + discordant + ties_x_only + ties_y_only + ties_both ==
/// total_pairs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairCounts {
    pub concordant: u64,
    pub discordant: u64,
    pub ties_x_only: u64,
    pub ties_y_only: u64,
    pub ties_both: u64,
    /// n(n−1)/2
    pub total_pairs: u64,
}

/// Classifies all pairs by direct comparison in O(n²).
pub fn brute_force_counts(sample: &PairedSample) -> PairCounts {
    let x = sample.x();
    let y = sample.y();
    let n = sample.n();
    let mut counts = PairCounts {
        concordant: 0,
        discordant: 0,
        ties_x_only: 0,
        ties_y_only: 0,
        ties_both: 0,
        total_pairs: (n as u64) * (n as u64 - 1) / 2,
    };
    for i in 0..n {
        for j in i + 1..n {
            match (x[i] == x[j], y[i] == y[j]) {
                (true, true) => counts.ties_both += 1,
                (true, false) => counts.ties_x_only += 1,
                (false, true) => counts.ties_y_only += 1,
                (false, false) => {
                    if (x[i] < x[j]) == (y[i] < y[j]) {
                        counts.concordant += 1;
                    } else {
                        counts.discordant += 1;
                    }
                }
            }
        }
    }
    debug_assert_eq!(
        counts.concordant
            + counts.discordant
            + counts.ties_x_only
            + counts.ties_y_only
            + counts.ties_both,
        counts.total_pairs,
        "pair categories must partition all pairs"
    );
    counts
}

/// Tau-b straight from the definition:
/// `(c − d) / √((c + d + e)(c + d + f))` with e the pairs tied only in x
/// and f the pairs tied only in y.
///
/// O(n²); exists to verify the fast path and to be timed against it.
/// Errors with [`Error::Degenerate`] exactly when the fast path does.
pub fn brute_force_tau(sample: &PairedSample) -> Result<f64, Error> {
    let counts = brute_force_counts(sample);
    let c = counts.concordant;
    let d = counts.discordant;
    // c + d + f is the number of pairs not tied in x, and c + d + e the
    // number not tied in y; either being zero means a constant vector.
    let untied_x = c + d + counts.ties_y_only;
    let untied_y = c + d + counts.ties_x_only;
    if untied_x == 0 {
        return Err(Error::Degenerate { axis: Axis::X });
    }
    if untied_y == 0 {
        return Err(Error::Degenerate { axis: Axis::Y });
    }
    let numerator = c as f64 - d as f64;
    Ok(numerator / (untied_x as f64 * untied_y as f64).sqrt())
}

/// The exact null distribution of the tau numerator for tie-free samples
/// of size n, by enumerating all n! rank permutations.
///
/// Returns a map from each attainable numerator value (c − d) to the
/// number of permutations producing it. Factorial growth caps this at
/// `n <= 8` (40320 permutations); larger n — and n < 2 — return
/// [`Error::EnumerationUnsupported`].
pub fn enumerate_null_distribution(n: usize) -> Result<BTreeMap<i64, u64>, Error> {
    const MAX_ENUMERATION_N: usize = 8;
    if !(2..=MAX_ENUMERATION_N).contains(&n) {
        return Err(Error::EnumerationUnsupported {
            n,
            max: MAX_ENUMERATION_N,
        });
    }
    let mut distribution = BTreeMap::new();
    let mut ranks: Vec<i64> = (1..=n as i64).collect();
    let mut visit = |perm: &[i64]| {
        // With x fixed at 1..n, the numerator is the number of ascents
        // minus the number of descents over all pairs of positions.
        let mut numerator = 0i64;
        for i in 0..perm.len() {
            for j in i + 1..perm.len() {
                numerator += (perm[j] - perm[i]).signum();
            }
        }
        *distribution.entry(numerator).or_insert(0u64) += 1;
    };
    heap_permutations(&mut ranks, n, &mut visit);
    Ok(distribution)
}

/// Heap's algorithm: visits every permutation of `values[..k]`.
fn heap_permutations(values: &mut [i64], k: usize, visit: &mut impl FnMut(&[i64])) {
    if k <= 1 {
        visit(values);
        return;
    }
    for i in 0..k {
        heap_permutations(values, k - 1, visit);
        if k.is_multiple_of(2) {
            values.swap(i, k - 1);
        } else {
            values.swap(0, k - 1);
        }
    }
}
