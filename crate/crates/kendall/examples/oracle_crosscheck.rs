//! Check the O(n log n) implementation against a quadratic one that
//! compares every pair of observations literally.
//!
//! The oracle is kept deliberately naive — no sorting, no merge trick —
//! so the two code paths share nothing but the definition. The same
//! cross-check is available from the command line as
//! `kendall cor --check-oracle`.
//!
//! Run with: cargo run --example oracle_crosscheck

use kendall::oracle::{brute_force_counts, brute_force_tau};
use kendall::{bench::generate_random_sample, kendall_tau, Error};

fn main() -> Result<(), Error> {
    let mut worst: f64 = 0.0;
    for seed in 0..20 {
        let n = 50 + (seed as usize) * 37;
        let sample = generate_random_sample(n, seed);
        let fast = kendall_tau(&sample)?;
        let slow = brute_force_tau(&sample)?;
        let counts = brute_force_counts(&sample);

        // integer bookkeeping must agree exactly, not approximately
        assert_eq!(
            fast.numerator,
            counts.concordant as i64 - counts.discordant as i64
        );
        assert_eq!(fast.swaps, counts.discordant);
        assert_eq!(
            fast.ties.pairs_tied_x,
            counts.ties_x_only + counts.ties_both
        );

        let difference = (fast.tau - slow).abs();
        worst = worst.max(difference);
        println!(
            "seed {seed:>2}, n = {n:>4}: fast {: <24} oracle {: <24} |diff| = {difference:.2e}",
            fast.tau, slow
        );
    }
    println!("\nworst disagreement across runs: {worst:.2e} (tolerance 1e-12)");
    assert!(worst < 1e-12);
    Ok(())
}
