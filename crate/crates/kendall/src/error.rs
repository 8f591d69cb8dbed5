use std::fmt;

use thiserror::Error;

/// Identifies which of the two paired vectors a diagnostic refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    X,
    Y,
}

impl fmt::Display for Axis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Axis::X => f.write_str("x"),
            Axis::Y => f.write_str("y"),
        }
    }
}

/// Everything that can go wrong when computing a correlation or running a
/// significance test.
///
/// Input problems (`LengthMismatch`, `TooShort`, `NonFinite`) are caught up
/// front when a [`PairedSample`](crate::PairedSample) is constructed, so the
/// numeric kernels never see bad data. `Degenerate` and `ZeroVariance`
/// describe inputs that are structurally valid but have no defined answer.
/// The remaining variants report a method applied outside its supported
/// range.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// The two input vectors do not pair up element by element.
    #[error("x and y must have equal length, got {x_len} and {y_len}")]
    LengthMismatch { x_len: usize, y_len: usize },

    /// Fewer than two observations: no pairs to compare.
    #[error("need at least 2 paired observations, got {n}")]
    TooShort { n: usize },

    /// A NaN or infinite value was found; ranks are undefined for it.
    #[error("non-finite value {value} in {axis} at index {index}")]
    NonFinite {
        axis: Axis,
        index: usize,
        value: f64,
    },

    /// Every value in one vector is identical, so its ranking carries no
    /// information and tau has a zero denominator.
    #[error("all values in {axis} are identical; tau is undefined for a constant vector")]
    Degenerate { axis: Axis },

    /// The null variance of the numerator is zero, so no z statistic exists.
    #[error("null variance is zero; the normal approximation is undefined")]
    ZeroVariance,

    /// The exact null distribution assumes distinct ranks in both vectors.
    #[error("exact p-values require tie-free data; rerun with the normal approximation")]
    ExactRequiresNoTies,

    /// The exact null tail is evaluated through n!, which overflows f64
    /// beyond 170!.
    #[error("exact p-values support 2 <= n <= {max}, got {n}")]
    ExactSizeUnsupported { n: usize, max: usize },

    /// Exhaustive permutation enumeration is factorial and capped tightly.
    #[error("exhaustive null enumeration supports 2 <= n <= {max}, got {n}")]
    EnumerationUnsupported { n: usize, max: usize },

    /// Timing the quadratic reference implementation above the cutoff would
    /// take unreasonably long.
    #[error("naive timing is capped at n = {cutoff}, got {n}")]
    NaiveCutoffExceeded { n: usize, cutoff: usize },

    /// A stable median needs a minimum number of repetitions.
    #[error("timing needs at least 3 repetitions, got {reps}")]
    TooFewReps { reps: u32 },

    /// A log-log slope fit needs several sizes spanning a real range.
    #[error("scaling needs at least 3 distinct sizes spanning a 10x range")]
    InsufficientSizes,

    /// A correlation matrix needs at least two usable columns.
    #[error("a correlation matrix needs at least 2 numeric columns, got {found}")]
    TooFewColumns { found: usize },
}
