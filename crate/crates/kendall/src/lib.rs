//! Kendall rank correlation (tau-b), computed exactly in O(n log n).
//!
//! The coefficient comes from a single sort-and-merge pass over the
//! paired sample rather than the textbook O(n²) comparison of every
//! pair, so samples with hundreds of thousands of rows are fine. Ties
//! are handled throughout: the coefficient is the tau-b variant, and
//! the significance tests switch between the exact null distribution
//! (small, tie-free samples) and a tie-corrected normal approximation
//! the same way R's `cor.test` does.
//!
//! ```
//! use kendall::{kendall_tau, kendall_test, PairedSample, TestOptions};
//!
//! let sample = PairedSample::from_slices(
//!     &[1.0, 2.0, 3.0, 4.0, 5.0],
//!     &[2.0, 1.0, 4.0, 3.0, 5.0],
//! )?;
//!
//! let tau = kendall_tau(&sample)?;
//! assert_eq!(tau.tau, 0.6);
//!
//! let test = kendall_test(&sample, TestOptions::default())?;
//! assert!((test.p_value - 0.233333333333333).abs() < 1e-12);
//! # Ok::<(), kendall::Error>(())
//! ```
//!
//! The pieces:
//!
//! * [`kendall_tau`] — the coefficient plus the pair counts behind it
//!   ([`TauResult`]).
//! * [`kendall_test`] — hypothesis test of tau = 0 with one-sided and
//!   two-sided alternatives ([`inference`]).
//! * [`exact_null_cdf`] — the null distribution itself, for anyone who
//!   wants more than a p-value.
//! * [`matrix::tau_matrix`] — pairwise tau over many columns, in
//!   parallel.
//! * [`oracle`] — deliberately naive quadratic reimplementations used
//!   to cross-check the fast path.
//! * [`io`] — CSV/TSV column extraction and the output formats of the
//!   `kendall` binary.
//! * [`bench`] — deterministic scaling measurements comparing the two
//!   implementations.
//!
//! Each capability also has a runnable demo under `examples/`; start
//! with `cargo run --example tau_basics`.

pub mod bench;
pub mod cli;
mod error;
pub mod inference;
pub mod io;
pub mod matrix;
pub mod oracle;
mod sample;
pub mod special;
mod tau;

pub use error::{Axis, Error};
pub use inference::{
    exact_null_cdf, kendall_test, tau_normal_statistic, Alternative, Method, MethodChoice,
    TestOptions, TestResult, MAX_EXACT_N,
};
pub use sample::PairedSample;
pub use tau::{
    count_joint_tie_pairs, count_tie_pairs, kendall_tau, merge_sort_count_swaps,
    sort_pairs_by_x_then_y, TauResult, TieCounts, TieGroupSums,
};
