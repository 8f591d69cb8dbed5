//! Measure how the runtime grows with n and contrast it with the
//! quadratic reference implementation.
//!
//! Samples are generated from a seeded stream, every repetition is
//! checked for bit-identical results, and the growth rate is reported
//! as the slope of a log-log fit: about 1 for the fast path, about 2
//! for the naive one. The CLI equivalent is `kendall bench`.
//!
//! Run with: cargo run --release --example scaling_benchmark

use kendall::bench::{scaling_report, DEFAULT_NAIVE_CUTOFF};
use kendall::Error;

fn main() -> Result<(), Error> {
    // modest sizes so the example finishes quickly even unoptimized;
    // `kendall bench` defaults to 10k..100k
    let sizes = [500, 1_000, 2_000, 5_000, 10_000];
    let report = scaling_report(&sizes, 3, 42, DEFAULT_NAIVE_CUTOFF)?;

    print!("{}", report.to_csv());
    println!();
    println!("fast path log-log slope: {:.3}", report.fast_loglog_slope);

    let last = report.entries.last().unwrap();
    if let Some(naive) = last.naive_median_s {
        println!(
            "at n = {}: fast {:.4}s vs naive {:.4}s ({:.0}x)",
            last.n,
            last.fast_median_s,
            naive,
            naive / last.fast_median_s
        );
    }
    Ok(())
}
