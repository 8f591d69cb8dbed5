//! Significance tests for tau.
//!
//! Two p-value engines: an exact one that evaluates the null distribution
//! of the numerator through the inversion-count recursion (tie-free data
//! only), and a normal approximation whose variance carries the standard
//! tie corrections. `Auto` picks the exact engine for small tie-free
//! samples and the approximation otherwise, which is the same switch R's
//! `cor.test` makes.

use std::str::FromStr;

use crate::error::Error;
use crate::sample::PairedSample;
use crate::special::{ln_factorial, normal_cdf, normal_sf};
use crate::tau::{kendall_tau, pair_count, TauResult};

/// Largest n the exact engine accepts: the tail mass is normalized by n!,
/// and 171! overflows f64.
pub const MAX_EXACT_N: usize = 170;

/// Below this n (and with no ties), `Auto` routes to the exact engine.
const EXACT_AUTO_LIMIT: usize = 50;

/// Direction of the alternative hypothesis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Alternative {
    /// tau ≠ 0
    #[default]
    TwoSided,
    /// tau < 0
    Less,
    /// tau > 0
    Greater,
}

impl Alternative {
    /// The sentence R prints for the same test; reused verbatim in the
    /// text output format.
    pub fn hypothesis_sentence(self) -> &'static str {
        match self {
            Alternative::TwoSided => "alternative hypothesis: true tau is not equal to 0",
            Alternative::Less => "alternative hypothesis: true tau is less than 0",
            Alternative::Greater => "alternative hypothesis: true tau is greater than 0",
        }
    }

    /// Stable machine-readable name, as used in JSON output.
    pub fn as_str(self) -> &'static str {
        match self {
            Alternative::TwoSided => "two-sided",
            Alternative::Less => "less",
            Alternative::Greater => "greater",
        }
    }
}

impl FromStr for Alternative {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "two-sided" | "two_sided" | "two.sided" => Ok(Alternative::TwoSided),
            "less" => Ok(Alternative::Less),
            "greater" => Ok(Alternative::Greater),
            other => Err(format!("unknown alternative {other:?}")),
        }
    }
}

/// Which p-value engine a test actually used.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Exact,
    NormalApprox,
}

impl Method {
    /// Stable machine-readable name, as used in JSON output.
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::NormalApprox => "normal_approx",
        }
    }
}

/// How the p-value engine should be chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum MethodChoice {
    /// Exact for tie-free samples with n < 50, normal approximation
    /// otherwise.
    #[default]
    Auto,
    /// Exact or error: ties or n > 170 are refused.
    Exact,
    /// Always the tie-corrected normal approximation.
    NormalApprox,
}

/// Options for [`kendall_test`]. The default is a two-sided test with
/// automatic engine choice and no continuity correction, matching R's
/// `cor.test` defaults.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct TestOptions {
    pub alternative: Alternative,
    pub method: MethodChoice,
    /// Shrink the numerator by one toward zero before the normal
    /// approximation (no effect on the exact engine).
    pub continuity: bool,
}

/// Outcome of a significance test.
#[derive(Debug, Clone, PartialEq)]
pub struct TestResult {
    /// The observed tau, reported as the test statistic.
    pub statistic: f64,
    pub p_value: f64,
    pub alternative: Alternative,
    /// The engine that actually ran (never `Auto`).
    pub method: Method,
    /// The full tau computation behind the test.
    pub tau: TauResult,
}

impl TestResult {
    /// Human-readable statement of the alternative hypothesis.
    pub fn alternative_text(&self) -> &'static str {
        self.alternative.hypothesis_sentence()
    }
}

/// Number of permutations of 1..=n with each possible inversion count
/// 0..=m, as f64 (the counts pass 2^53 around n = 19, after which they
/// round — the relative error stays near m·1e-16 even at n = 170, far
/// inside what a p-value needs).
///
/// Built with the standard recursion: appending element j to a
/// permutation of j−1 elements adds between 0 and j−1 inversions, so each
/// row is a sliding-window sum of width j over the previous row. The
/// window is only slid across the left half, where the counts grow
/// monotonically and the subtraction at the trailing edge cannot cancel
/// catastrophically; the right half is filled in by the symmetry
/// w(s) = w(m − s). (Sliding across the peak would compute the tiny
/// right-tail counts as differences of huge numbers and destroy exactly
/// the tail probabilities the exact test exists for.)
fn inversion_counts(n: usize) -> Vec<f64> {
    let mut counts = vec![1.0f64];
    let mut width = 0usize; // largest inversion count so far
    for j in 2..=n {
        let prev_width = width;
        width += j - 1;
        let mut next = vec![0.0f64; width + 1];
        let mut window = 0.0f64;
        for s in 0..=width {
            if 2 * s > width {
                next[s] = next[width - s];
                continue;
            }
            if s <= prev_width {
                window += counts[s];
            }
            if s >= j && s - j <= prev_width {
                window -= counts[s - j];
            }
            next[s] = window;
        }
        counts = next;
    }
    counts
}

/// P(T ≤ numerator) under the null hypothesis of independence, where T is
/// the tau numerator (c − d) of a tie-free sample of size n.
///
/// A sample of size n with no ties has T = m − 2S where S is the number
/// of inversions of the y ranking, so the CDF is a normalized upper tail
/// of the inversion-count distribution. Whichever tail is smaller is
/// summed directly, keeping full relative precision for small p-values
/// on both sides. Supports `2 <= n <= 170`.
pub fn exact_null_cdf(numerator: i64, n: usize) -> Result<f64, Error> {
    if !(2..=MAX_EXACT_N).contains(&n) {
        return Err(Error::ExactSizeUnsupported {
            n,
            max: MAX_EXACT_N,
        });
    }
    let m = pair_count(n) as i64;
    if numerator >= m {
        return Ok(1.0);
    }
    if numerator < -m {
        return Ok(0.0);
    }
    // T ≤ k  ⟺  S ≥ ceil((m − k)/2), and m − k ≥ 1 here.
    let s0 = ((m - numerator) + 1) / 2;
    let counts = inversion_counts(n);
    let total = ln_factorial(n as u64).exp();
    let s0 = s0 as usize;
    let p = if s0 <= counts.len() / 2 {
        // The complement (S < s0) has fewer terms: sum it instead.
        1.0 - counts[..s0].iter().sum::<f64>() / total
    } else {
        // Summed smallest-first (the right tail decreases).
        counts[s0..].iter().rev().sum::<f64>() / total
    };
    Ok(p.clamp(0.0, 1.0))
}

/// The z statistic of the tie-corrected normal approximation:
/// numerator / √v with
///
/// ```text
/// v  = (v0 − vt − vu)/18 + v1 + v2
/// v0 = n(n−1)(2n+5)        vt, vu = Σ g(g−1)(2g+5) per margin
/// v1 = Σt(t−1) · Σu(u−1) / (2n(n−1))
/// v2 = Σt(t−1)(t−2) · Σu(u−1)(u−2) / (9n(n−1)(n−2))
/// ```
///
/// The cross terms v1 and v2 are zero whenever either margin's sum is
/// zero, short-circuited before the division so n = 2 cannot produce 0/0.
/// Errors with [`Error::ZeroVariance`] if v is not positive (only
/// possible for degenerate inputs that [`kendall_tau`] already rejects).
pub fn tau_normal_statistic(result: &TauResult) -> Result<f64, Error> {
    Ok(result.numerator as f64 / null_variance(result)?.sqrt())
}

fn null_variance(result: &TauResult) -> Result<f64, Error> {
    let n = result.n as f64;
    let v0 = n * (n - 1.0) * (2.0 * n + 5.0);
    let vt = result.ties.x_groups.sum_gg1_2g5 as f64;
    let vu = result.ties.y_groups.sum_gg1_2g5 as f64;
    let sx1 = result.ties.x_groups.sum_gg1 as f64;
    let sy1 = result.ties.y_groups.sum_gg1 as f64;
    let v1 = if sx1 == 0.0 || sy1 == 0.0 {
        0.0
    } else {
        sx1 * sy1 / (2.0 * n * (n - 1.0))
    };
    let sx2 = result.ties.x_groups.sum_gg1_g2 as f64;
    let sy2 = result.ties.y_groups.sum_gg1_g2 as f64;
    let v2 = if sx2 == 0.0 || sy2 == 0.0 {
        0.0
    } else {
        sx2 * sy2 / (9.0 * n * (n - 1.0) * (n - 2.0))
    };
    let v = (v0 - vt - vu) / 18.0 + v1 + v2;
    if v <= 0.0 {
        return Err(Error::ZeroVariance);
    }
    Ok(v)
}

/// Runs a significance test of tau against zero.
///
/// Computes tau, picks the p-value engine per `options.method`, and
/// reports the p-value for the requested alternative. The exact engine
/// refuses tied data ([`Error::ExactRequiresNoTies`]) and n > 170
/// ([`Error::ExactSizeUnsupported`]); `Auto` falls back to the normal
/// approximation in both situations.
///
/// ```
/// use kendall::{kendall_test, Alternative, PairedSample, TestOptions};
///
/// let s = PairedSample::from_slices(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0])?;
/// let t = kendall_test(
///     &s,
///     TestOptions { alternative: Alternative::Greater, ..Default::default() },
/// )?;
/// assert!((t.p_value - 1.0 / 6.0).abs() < 1e-12);
/// # Ok::<(), kendall::Error>(())
/// ```
pub fn kendall_test(sample: &PairedSample, options: TestOptions) -> Result<TestResult, Error> {
    let result = kendall_tau(sample)?;
    let has_ties = result.ties.pairs_tied_x > 0 || result.ties.pairs_tied_y > 0;
    let method = match options.method {
        MethodChoice::Exact => {
            if has_ties {
                return Err(Error::ExactRequiresNoTies);
            }
            Method::Exact
        }
        MethodChoice::NormalApprox => Method::NormalApprox,
        MethodChoice::Auto => {
            if !has_ties && result.n < EXACT_AUTO_LIMIT {
                Method::Exact
            } else {
                Method::NormalApprox
            }
        }
    };
    let p_value = match method {
        Method::Exact => exact_p(result.numerator, result.n, options.alternative)?,
        Method::NormalApprox => normal_p(&result, options.alternative, options.continuity)?,
    };
    Ok(TestResult {
        statistic: result.tau,
        p_value,
        alternative: options.alternative,
        method,
        tau: result,
    })
}

fn exact_p(numerator: i64, n: usize, alternative: Alternative) -> Result<f64, Error> {
    // P(T ≥ k) = P(T ≤ −k) by the symmetry of the null distribution;
    // computing it that way makes the sign-flip identity exact in floats.
    let p = match alternative {
        Alternative::Less => exact_null_cdf(numerator, n)?,
        Alternative::Greater => exact_null_cdf(-numerator, n)?,
        Alternative::TwoSided => {
            let less = exact_null_cdf(numerator, n)?;
            let greater = exact_null_cdf(-numerator, n)?;
            (2.0 * less.min(greater)).min(1.0)
        }
    };
    Ok(p)
}

fn normal_p(result: &TauResult, alternative: Alternative, continuity: bool) -> Result<f64, Error> {
    let variance = null_variance(result)?;
    let mut numerator = result.numerator as f64;
    if continuity && numerator != 0.0 {
        numerator -= numerator.signum();
    }
    let z = numerator / variance.sqrt();
    let p = match alternative {
        Alternative::Less => normal_cdf(z),
        Alternative::Greater => normal_sf(z),
        Alternative::TwoSided => (2.0 * normal_sf(z.abs())).min(1.0),
    };
    Ok(p)
}
