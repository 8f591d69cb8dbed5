//! Compute Kendall's tau-b on small samples and read the pieces the
//! coefficient is made of: concordance numerator, swap count, and the
//! tie breakdown per margin.
//!
//! Run with: cargo run --example tau_basics

use kendall::{kendall_tau, Error, PairedSample};

fn report(label: &str, x: &[f64], y: &[f64]) -> Result<(), Error> {
    let sample = PairedSample::from_slices(x, y)?;
    let r = kendall_tau(&sample)?;
    println!("{label}");
    println!("  tau        = {}", r.tau);
    println!("  n          = {}  ({} pairs)", r.n, r.m);
    println!(
        "  numerator  = {}  (concordant minus discordant)",
        r.numerator
    );
    println!("  swaps      = {}  (discordant pairs)", r.swaps);
    println!(
        "  ties       = {} in x, {} in y, {} in both",
        r.ties.pairs_tied_x, r.ties.pairs_tied_y, r.ties.pairs_tied_both
    );
    println!();
    Ok(())
}

fn main() -> Result<(), Error> {
    // agreement with one exchanged neighbour: 9 of 10 pairs concordant
    report(
        "nearly monotone",
        &[1.0, 2.0, 3.0, 4.0, 5.0],
        &[1.0, 3.0, 2.0, 4.0, 5.0],
    )?;

    // perfect reversal is exactly -1.0, not -0.999…
    report(
        "perfect disagreement",
        &[1.0, 2.0, 3.0, 4.0],
        &[9.0, 7.0, 5.0, 3.0],
    )?;

    // ties shrink the denominator: this is the tau-b correction
    report(
        "tied ranks",
        &[1.0, 1.0, 2.0, 3.0, 3.0, 3.0],
        &[2.0, 1.0, 2.0, 4.0, 4.0, 5.0],
    )?;

    // a constant margin has no rank order at all, so tau is undefined
    let constant = PairedSample::from_slices(&[1.0, 1.0, 1.0], &[1.0, 2.0, 3.0])?;
    match kendall_tau(&constant) {
        Err(Error::Degenerate { axis }) => {
            println!("constant column: correlation undefined ({axis} never varies)")
        }
        other => println!("unexpected: {other:?}"),
    }

    Ok(())
}
