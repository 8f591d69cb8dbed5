//! Test whether an observed tau is distinguishable from zero.
//!
//! The test switches between the exact null distribution (small samples
//! without ties) and a tie-corrected normal approximation, mirroring
//! R's cor.test. Both can also be requested explicitly.
//!
//! Run with: cargo run --example hypothesis_testing

use kendall::{
    kendall_test, tau_normal_statistic, Alternative, Error, MethodChoice, PairedSample, TestOptions,
};

fn main() -> Result<(), Error> {
    // a weak positive trend, n = 12, no ties: auto picks the exact test
    let x: Vec<f64> = (0..12).map(f64::from).collect();
    let y = vec![
        2.0, 1.0, 4.0, 3.0, 7.0, 5.0, 8.0, 6.0, 11.0, 9.0, 12.0, 10.0,
    ];
    let sample = PairedSample::new(x, y)?;

    for alternative in [
        Alternative::TwoSided,
        Alternative::Greater,
        Alternative::Less,
    ] {
        let result = kendall_test(
            &sample,
            TestOptions {
                alternative,
                ..TestOptions::default()
            },
        )?;
        println!(
            "{:9}  p = {:<22}  method = {}",
            alternative.as_str(),
            result.p_value,
            result.method.as_str()
        );
    }
    println!();

    // force the normal approximation on the same data and compare
    let z = tau_normal_statistic(&kendall_test(&sample, TestOptions::default())?.tau)?;
    println!("normal approximation: z = {z:.6}");
    for continuity in [false, true] {
        let result = kendall_test(
            &sample,
            TestOptions {
                method: MethodChoice::NormalApprox,
                continuity,
                ..TestOptions::default()
            },
        )?;
        println!(
            "  p = {:.6}{}",
            result.p_value,
            if continuity {
                "  (continuity corrected)"
            } else {
                ""
            }
        );
    }
    println!();

    // ties rule the exact method out; the error says what to do instead
    let tied = PairedSample::from_slices(
        &[1.0, 2.0, 2.0, 3.0, 4.0, 5.0],
        &[1.0, 2.0, 3.0, 3.0, 5.0, 4.0],
    )?;
    match kendall_test(
        &tied,
        TestOptions {
            method: MethodChoice::Exact,
            ..TestOptions::default()
        },
    ) {
        Err(e) => println!("exact with ties: {e}"),
        Ok(_) => unreachable!(),
    }
    let auto = kendall_test(&tied, TestOptions::default())?;
    println!(
        "auto falls back to {}: tau = {:.6}, p = {:.6}",
        auto.method.as_str(),
        auto.tau.tau,
        auto.p_value
    );

    Ok(())
}
