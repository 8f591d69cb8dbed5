//! Work with the exact null distribution of the tau numerator directly
//! instead of through a p-value.
//!
//! Under independence every ordering of y against x is equally likely,
//! so the numerator T = concordant − discordant has a known discrete
//! distribution. `exact_null_cdf` evaluates it by counting inversions;
//! for tiny n the same distribution can be brute-forced by enumerating
//! all n! permutations, which is the cross-check printed at the end.
//!
//! Run with: cargo run --example exact_null_distribution

use kendall::oracle::enumerate_null_distribution;
use kendall::{exact_null_cdf, Error, MAX_EXACT_N};

fn main() -> Result<(), Error> {
    // the CDF at a few points for n = 10 (45 pairs, T ranges -45..=45)
    let n = 10;
    println!("n = {n}: P(T <= k) under the null");
    for k in [-45, -25, -9, 0, 9, 25, 45] {
        println!("  k = {k:>4}: {}", exact_null_cdf(k, n)?);
    }
    println!();

    // tail probabilities stay meaningful at the size ceiling
    let pairs = (MAX_EXACT_N as i64 * (MAX_EXACT_N as i64 - 1)) / 2;
    let extreme = exact_null_cdf(-pairs, MAX_EXACT_N)?;
    println!("n = {MAX_EXACT_N}: P(perfect reversal) = {extreme:e}  (that is 1/{MAX_EXACT_N}!)");
    println!();

    // agreement with full permutation enumeration for n = 6
    let n = 6;
    let counts = enumerate_null_distribution(n)?;
    let total: u64 = counts.values().sum();
    println!("n = {n}: recursion vs enumerating all {total} permutations");
    let mut cumulative = 0;
    for (&numerator, &count) in &counts {
        cumulative += count;
        let enumerated = cumulative as f64 / total as f64;
        let recursed = exact_null_cdf(numerator, n)?;
        println!(
            "  P(T <= {numerator:>3}) = {enumerated:.12}  (difference {:.1e})",
            (enumerated - recursed).abs()
        );
    }

    Ok(())
}
