//! Correlate every pair of columns at once. Cells are computed in
//! parallel, missing values are deleted pairwise per cell, and a cell
//! whose pair of columns is unusable becomes NaN plus a warning rather
//! than sinking the whole matrix.
//!
//! Run with: cargo run --example correlation_matrix

use kendall::io::render_matrix_csv;
use kendall::matrix::{tau_matrix, Column};
use kendall::Error;

fn column(name: &str, values: &[f64]) -> Column {
    Column {
        name: name.to_string(),
        values: values.to_vec(),
    }
}

fn main() -> Result<(), Error> {
    let columns = vec![
        column("height", &[1.62, 1.75, 1.68, 1.81, 1.70, 1.66]),
        column("weight", &[61.0, 78.0, 72.5, 88.0, 70.0, 63.0]),
        // f64::NAN marks a missing observation; the (shoe, *) cells use
        // only the rows where both sides are present
        column("shoe", &[37.0, 43.0, f64::NAN, 45.0, 44.0, 38.0]),
        // constant: every cell involving it is undefined
        column("visits", &[1.0, 1.0, 1.0, 1.0, 1.0, 1.0]),
    ];

    let (matrix, warnings) = tau_matrix(&columns)?;

    print!("{}", render_matrix_csv(&matrix));
    println!();
    for warning in &warnings {
        println!("warning: {warning}");
    }

    // values are plain Vec<Vec<f64>>, symmetric with a unit diagonal
    let h_w = matrix.values[0][1];
    println!("\ntau(height, weight) = {h_w}");
    Ok(())
}
