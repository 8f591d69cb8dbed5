//! Kendall's tau-b in O(n log n).
//!
//! The pipeline sorts the pairs by (x, y), counts tied pairs within each
//! margin and jointly, and then counts how many exchanges a merge sort
//! needs to order the y values. Each exchange corresponds to exactly one
//! discordant pair, so the whole coefficient falls out of integer counts:
//!
//! ```text
//! numerator = m − Tx − Ty + Txy − 2·swaps        m = n(n−1)/2
//! tau       = numerator / (√(m − Tx) · √(m − Ty))
//! ```
//!
//! where `Tx`, `Ty`, `Txy` are the numbers of pairs tied in x, in y, and
//! in both at once. Everything up to the final division is exact integer
//! arithmetic, which is what the brute-force oracle checks against.

use crate::error::{Axis, Error};
use crate::sample::PairedSample;

/// Tie bookkeeping for one tau computation.
///
/// The counts are numbers of unordered index pairs {i, j}: `pairs_tied_x`
/// counts pairs with `x[i] == x[j]` whether or not y is also tied, and so
/// on. The per-margin group sums feed the tie-corrected null variance of
/// the normal approximation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TieCounts {
    /// Pairs tied in x (jointly tied pairs included).
    pub pairs_tied_x: u64,
    /// Pairs tied in y (jointly tied pairs included).
    pub pairs_tied_y: u64,
    /// Pairs tied in x and y at once.
    pub pairs_tied_both: u64,
    /// Group sums over the maximal runs of equal x values.
    pub x_groups: TieGroupSums,
    /// Group sums over the maximal runs of equal y values.
    pub y_groups: TieGroupSums,
}

/// Sums over the maximal groups of g equal values within one margin.
///
/// Kept in u128 because `g(g−1)(2g+5)` overflows u64 once a single group
/// grows past about two million elements, which a heavily tied input can
/// reach easily.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TieGroupSums {
    /// Σ g(g−1)
    pub sum_gg1: u128,
    /// Σ g(g−1)(g−2)
    pub sum_gg1_g2: u128,
    /// Σ g(g−1)(2g+5)
    pub sum_gg1_2g5: u128,
}

/// One tau-b computation, with every exact integer count that produced it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TauResult {
    /// The coefficient, always in [−1, 1]; exactly ±1 when and only when
    /// the data are a perfect monotone ranking.
    pub tau: f64,
    /// Number of paired observations.
    pub n: usize,
    /// Total unordered pairs, n(n−1)/2.
    pub m: u64,
    /// Concordant minus discordant pairs.
    pub numerator: i64,
    /// Merge exchanges needed to sort y after the (x, y) sort; equals the
    /// number of discordant pairs.
    pub swaps: u64,
    /// Tie pair counts and group sums for both margins.
    pub ties: TieCounts,
}

/// n(n−1)/2 without intermediate overflow for any n up to 2^32.
pub(crate) fn pair_count(n: usize) -> u64 {
    if n == 0 {
        return 0;
    }
    let n = n as u64;
    n * (n - 1) / 2
}

/// Sorts the pairs by x, breaking x-ties by y, and returns the two vectors
/// in that order.
///
/// The secondary y key is what makes the later merge correct: within a run
/// of equal x values the y values come out ascending, so a pair tied in x
/// can never be counted as an exchange. The sort is stable with respect to
/// the full (x, y) key. Comparison uses `partial_cmp` rather than
/// `total_cmp` deliberately: IEEE equality treats −0.0 and 0.0 as the same
/// rank, which keeps the ordering consistent with the tie counting below
/// (`total_cmp` would separate them and miscount exchanges). Inputs are
/// finite by construction, so the comparison never fails.
pub fn sort_pairs_by_x_then_y(sample: &PairedSample) -> (Vec<f64>, Vec<f64>) {
    let mut pairs: Vec<(f64, f64)> = sample
        .x()
        .iter()
        .copied()
        .zip(sample.y().iter().copied())
        .collect();
    pairs.sort_by(|a, b| {
        a.0.partial_cmp(&b.0)
            .expect("validated samples are NaN-free")
            .then_with(|| {
                a.1.partial_cmp(&b.1)
                    .expect("validated samples are NaN-free")
            })
    });
    pairs.into_iter().unzip()
}

/// Number of unordered pairs {i, j} with equal values: Σ g(g−1)/2 over the
/// maximal runs of g equal values.
///
/// The input must be nondecreasing so that equal values sit in runs; this
/// is debug-asserted.
pub fn count_tie_pairs(sorted: &[f64]) -> u64 {
    debug_assert!(
        sorted.windows(2).all(|w| w[0] <= w[1]),
        "count_tie_pairs needs sorted input"
    );
    let mut pairs = 0u64;
    let mut run = 1u64;
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            run += 1;
        } else {
            pairs += run * (run - 1) / 2;
            run = 1;
        }
    }
    pairs + run * (run - 1) / 2
}

/// Number of unordered pairs tied in x and y at once.
///
/// Takes the two vectors as returned by [`sort_pairs_by_x_then_y`]: the
/// (x, y) sort puts jointly equal pairs into runs, so one pass suffices.
pub fn count_joint_tie_pairs(x_sorted: &[f64], y_rearranged: &[f64]) -> u64 {
    assert_eq!(
        x_sorted.len(),
        y_rearranged.len(),
        "joint tie counting needs vectors of equal length"
    );
    let mut pairs = 0u64;
    let mut run = 1u64;
    for i in 1..x_sorted.len() {
        if x_sorted[i] == x_sorted[i - 1] && y_rearranged[i] == y_rearranged[i - 1] {
            run += 1;
        } else {
            pairs += run * (run - 1) / 2;
            run = 1;
        }
    }
    pairs + run * (run - 1) / 2
}

/// Sorts a copy of `values` with a bottom-up merge sort, counting the
/// exchanges, and returns `(exchanges, sorted)`.
///
/// An exchange is taking an element from the right run while the left run
/// still has elements: each such step jumps the element over `mid − i`
/// larger values, so the total equals the number of inversions, i.e. the
/// number of adjacent swaps bubble sort would need. Equal elements are
/// taken from the left first, so ties are never counted.
pub fn merge_sort_count_swaps(values: &[f64]) -> (u64, Vec<f64>) {
    let n = values.len();
    let mut src = values.to_vec();
    if n < 2 {
        return (0, src);
    }
    let mut dst = vec![0.0f64; n];
    let mut swaps = 0u64;
    let mut width = 1usize;
    while width < n {
        let mut lo = 0usize;
        while lo < n {
            let mid = usize::min(lo + width, n);
            let hi = usize::min(lo + 2 * width, n);
            let (mut i, mut j, mut k) = (lo, mid, lo);
            while i < mid && j < hi {
                if src[i] <= src[j] {
                    dst[k] = src[i];
                    i += 1;
                } else {
                    swaps += (mid - i) as u64;
                    dst[k] = src[j];
                    j += 1;
                }
                k += 1;
            }
            dst[k..k + (mid - i)].copy_from_slice(&src[i..mid]);
            let k = k + (mid - i);
            dst[k..k + (hi - j)].copy_from_slice(&src[j..hi]);
            lo = hi;
        }
        std::mem::swap(&mut src, &mut dst);
        width *= 2;
    }
    (swaps, src)
}

/// Pair count and group sums over the maximal runs of a sorted vector, in
/// one pass.
fn tie_group_sums(sorted: &[f64]) -> (u64, TieGroupSums) {
    let mut pairs = 0u64;
    let mut sums = TieGroupSums::default();
    let mut i = 0usize;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        let g = (j - i) as u128;
        if g > 1 {
            pairs += (g * (g - 1) / 2) as u64;
            sums.sum_gg1 += g * (g - 1);
            sums.sum_gg1_g2 += g * (g - 1) * (g - 2);
            sums.sum_gg1_2g5 += g * (g - 1) * (2 * g + 5);
        }
        i = j;
    }
    (pairs, sums)
}

/// Computes Kendall's tau-b for a sample in O(n log n) time and O(n)
/// extra space.
///
/// Errors with [`Error::Degenerate`] when either vector is constant (the
/// coefficient has a zero denominator there); x is checked first. All
/// counts are exact integers for any n up to 2^31 − 1, and the returned
/// tau is exactly ±1.0 precisely when every pair is concordant (or every
/// pair discordant) with no pair tied in only one margin.
///
/// ```
/// use kendall::{kendall_tau, PairedSample};
///
/// let s = PairedSample::from_slices(&[1.0, 2.0, 3.0, 4.0], &[1.0, 3.0, 2.0, 4.0])?;
/// let r = kendall_tau(&s)?;
/// assert!((r.tau - 2.0 / 3.0).abs() < 1e-12);
/// assert_eq!(r.swaps, 1);
/// # Ok::<(), kendall::Error>(())
/// ```
pub fn kendall_tau(sample: &PairedSample) -> Result<TauResult, Error> {
    let n = sample.n();
    let m = pair_count(n);
    let (x_sorted, y_rearranged) = sort_pairs_by_x_then_y(sample);
    let (tied_x, x_groups) = tie_group_sums(&x_sorted);
    if tied_x == m {
        return Err(Error::Degenerate { axis: Axis::X });
    }
    let tied_both = count_joint_tie_pairs(&x_sorted, &y_rearranged);
    let (swaps, y_sorted) = merge_sort_count_swaps(&y_rearranged);
    let (tied_y, y_groups) = tie_group_sums(&y_sorted);
    if tied_y == m {
        return Err(Error::Degenerate { axis: Axis::Y });
    }

    let numerator = m as i64 - tied_x as i64 - tied_y as i64 + tied_both as i64 - 2 * swaps as i64;
    let untied_x = m - tied_x;
    let untied_y = m - tied_y;
    // |numerator| = √(untied_x · untied_y) happens exactly when the data
    // are perfectly monotone; compare in integers so that case yields a
    // bit-exact ±1.0 instead of whatever the two square roots round to.
    let tau = if (numerator as i128) * (numerator as i128) == untied_x as i128 * untied_y as i128 {
        if numerator < 0 {
            -1.0
        } else {
            1.0
        }
    } else if untied_x == untied_y {
        // Equal margins (tie-free data in particular): the denominator is
        // exactly untied_x, so one division gives the correctly rounded
        // value where √u·√u would wobble in the last ulp.
        numerator as f64 / untied_x as f64
    } else {
        let t = numerator as f64 / ((untied_x as f64).sqrt() * (untied_y as f64).sqrt());
        t.clamp(-1.0, 1.0)
    };

    Ok(TauResult {
        tau,
        n,
        m,
        numerator,
        swaps,
        ties: TieCounts {
            pairs_tied_x: tied_x,
            pairs_tied_y: tied_y,
            pairs_tied_both: tied_both,
            x_groups,
            y_groups,
        },
    })
}


#[cfg(test)]
mod proptests {
    use super::*;
    use crate::oracle::{brute_force_counts, brute_force_tau};
    use proptest::prelude::*;

    /// Integer-grid pairs (ties common) of matched length 2..=40.
    fn tied_pairs() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
        (2usize..=40).prop_flat_map(|n| {
            (
                prop::collection::vec(-4i32..=4, n),
                prop::collection::vec(-4i32..=4, n),
            )
                .prop_map(|(x, y)| {
                    (
                        x.into_iter().map(f64::from).collect(),
                        y.into_iter().map(f64::from).collect(),
                    )
                })
        })
    }

    /// Continuous pairs (ties essentially impossible) of length 2..=40.
    fn continuous_pairs() -> impl Strategy<Value = (Vec<f64>, Vec<f64>)> {
        (2usize..=40).prop_flat_map(|n| {
            (
                prop::collection::vec(-1e6f64..1e6, n),
                prop::collection::vec(-1e6f64..1e6, n),
            )
        })
    }

    fn check_against_oracle(x: &[f64], y: &[f64]) {
        let s = PairedSample::from_slices(x, y).unwrap();
        let counts = brute_force_counts(&s);
        match kendall_tau(&s) {
            Ok(r) => {
                let c = counts.concordant as i64;
                let d = counts.discordant as i64;
                assert_eq!(r.numerator, c - d);
                assert_eq!(r.swaps, counts.discordant);
                assert_eq!(r.ties.pairs_tied_x, counts.ties_x_only + counts.ties_both);
                assert_eq!(r.ties.pairs_tied_y, counts.ties_y_only + counts.ties_both);
                assert_eq!(r.ties.pairs_tied_both, counts.ties_both);
                assert_eq!(r.m, counts.total_pairs);
                let oracle = brute_force_tau(&s).unwrap();
                assert!(
                    (r.tau - oracle).abs() <= 1e-12,
                    "tau {} vs oracle {}",
                    r.tau,
                    oracle
                );
                assert!(r.tau.abs() <= 1.0);
                // tau is exactly ±1 precisely for perfect monotone data.
                let perfect =
                    counts.discordant == 0 && counts.ties_x_only == 0 && counts.ties_y_only == 0;
                let reversed =
                    counts.concordant == 0 && counts.ties_x_only == 0 && counts.ties_y_only == 0;
                assert_eq!(r.tau == 1.0, perfect && counts.concordant > 0);
                assert_eq!(r.tau == -1.0, reversed && counts.discordant > 0);
            }
            Err(Error::Degenerate { .. }) => {
                // The oracle must agree that the input is degenerate.
                assert!(brute_force_tau(&s).is_err());
            }
            Err(other) => panic!("unexpected error: {other:?}"),
        }
    }

    proptest! {
        #[test]
        fn matches_oracle_on_tied_data((x, y) in tied_pairs()) {
            check_against_oracle(&x, &y);
        }

        #[test]
        fn matches_oracle_on_continuous_data((x, y) in continuous_pairs()) {
            check_against_oracle(&x, &y);
        }

        #[test]
        fn negating_y_negates_tau((x, y) in tied_pairs()) {
            let s = PairedSample::from_slices(&x, &y).unwrap();
            let neg: Vec<f64> = y.iter().map(|v| -v).collect();
            let sn = PairedSample::from_slices(&x, &neg).unwrap();
            match (kendall_tau(&s), kendall_tau(&sn)) {
                (Ok(a), Ok(b)) => {
                    prop_assert_eq!(a.tau, -b.tau);
                    prop_assert_eq!(a.numerator, -b.numerator);
                }
                (Err(_), Err(_)) => {}
                (a, b) => prop_assert!(false, "inconsistent: {:?} vs {:?}", a, b),
            }
        }

        #[test]
        fn swapping_x_and_y_preserves_tau((x, y) in tied_pairs()) {
            let s = PairedSample::from_slices(&x, &y).unwrap();
            match (kendall_tau(&s), kendall_tau(&s.swapped())) {
                (Ok(a), Ok(b)) => {
                    prop_assert_eq!(a.tau, b.tau);
                    prop_assert_eq!(a.numerator, b.numerator);
                    prop_assert_eq!(a.swaps, b.swaps);
                    prop_assert_eq!(a.ties.pairs_tied_x, b.ties.pairs_tied_y);
                    prop_assert_eq!(a.ties.pairs_tied_both, b.ties.pairs_tied_both);
                }
                (Err(_), Err(_)) => {}
                (a, b) => prop_assert!(false, "inconsistent: {:?} vs {:?}", a, b),
            }
        }

        #[test]
        fn shuffling_pairs_changes_nothing(
            (x, y) in tied_pairs(),
            seed in prop::num::u64::ANY,
        ) {
            let s = PairedSample::from_slices(&x, &y).unwrap();
            // Deterministic Fisher–Yates driven by the seed.
            let n = x.len();
            let mut order: Vec<usize> = (0..n).collect();
            let mut state = seed | 1;
            for i in (1..n).rev() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                order.swap(i, (state >> 33) as usize % (i + 1));
            }
            let sx: Vec<f64> = order.iter().map(|&i| x[i]).collect();
            let sy: Vec<f64> = order.iter().map(|&i| y[i]).collect();
            let shuffled = PairedSample::from_slices(&sx, &sy).unwrap();
            match (kendall_tau(&s), kendall_tau(&shuffled)) {
                (Ok(a), Ok(b)) => prop_assert_eq!(a, b),
                (Err(a), Err(b)) => prop_assert_eq!(a, b),
                (a, b) => prop_assert!(false, "inconsistent: {:?} vs {:?}", a, b),
            }
        }

        #[test]
        fn monotone_transforms_preserve_tau((x, y) in tied_pairs()) {
            let s = PairedSample::from_slices(&x, &y).unwrap();
            // x ↦ 2x + 1 and y ↦ y³ are strictly increasing, so every
            // pair keeps its concordance class exactly.
            let tx: Vec<f64> = x.iter().map(|v| 2.0 * v + 1.0).collect();
            let ty: Vec<f64> = y.iter().map(|v| v * v * v).collect();
            let t = PairedSample::from_slices(&tx, &ty).unwrap();
            match (kendall_tau(&s), kendall_tau(&t)) {
                (Ok(a), Ok(b)) => {
                    prop_assert_eq!(a.tau, b.tau);
                    prop_assert_eq!(a.numerator, b.numerator);
                }
                (Err(_), Err(_)) => {}
                (a, b) => prop_assert!(false, "inconsistent: {:?} vs {:?}", a, b),
            }
        }

        #[test]
        fn merge_agrees_with_quadratic_inversion_count(
            v in prop::collection::vec(-10i32..=10, 0..60)
        ) {
            let v: Vec<f64> = v.into_iter().map(f64::from).collect();
            let mut naive = 0u64;
            for i in 0..v.len() {
                for j in i + 1..v.len() {
                    if v[i] > v[j] {
                        naive += 1;
                    }
                }
            }
            let (swaps, sorted) = merge_sort_count_swaps(&v);
            prop_assert_eq!(swaps, naive);
            let mut expect = v.clone();
            expect.sort_by(|a, b| a.partial_cmp(b).unwrap());
            prop_assert_eq!(sorted, expect);
        }
    }
}
