//! Pairwise tau over a set of columns.
//!
//! Cells are independent, so the upper triangle is computed in parallel
//! and mirrored. A pair of columns that has no defined correlation (too
//! few complete rows, a constant margin) does not fail the whole matrix:
//! the cell becomes NaN and a warning records why. The diagonal is 1 by
//! definition, always.

use rayon::prelude::*;

use crate::error::Error;
use crate::sample::PairedSample;
use crate::tau::kendall_tau;

/// A named column of observations. NaN entries mark missing values and
/// are dropped pairwise when the column is correlated with another.
#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub name: String,
    pub values: Vec<f64>,
}

/// A symmetric matrix of tau values with unit diagonal; `values[i][j]`
/// belongs to `labels[i]` crossed with `labels[j]`, NaN where undefined.
#[derive(Debug, Clone, PartialEq)]
pub struct TauMatrix {
    pub labels: Vec<String>,
    pub values: Vec<Vec<f64>>,
}

/// Why one cell has no value.
#[derive(Debug, Clone, PartialEq)]
pub struct CellWarning {
    pub row: String,
    pub col: String,
    pub reason: Error,
}

impl std::fmt::Display for CellWarning {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "cell ({}, {}) has no value: {}",
            self.row, self.col, self.reason
        )
    }
}

/// Computes tau for every pair of columns.
///
/// Needs at least two columns, all of equal length; rows where either
/// value of a pair is NaN are dropped for that pair only (pairwise
/// deletion). Undefined cells come back as NaN alongside a warning rather
/// than an error, so one bad column cannot hide the rest of the matrix.
pub fn tau_matrix(columns: &[Column]) -> Result<(TauMatrix, Vec<CellWarning>), Error> {
    let k = columns.len();
    if k < 2 {
        return Err(Error::TooFewColumns { found: k });
    }
    for column in &columns[1..] {
        if column.values.len() != columns[0].values.len() {
            return Err(Error::LengthMismatch {
                x_len: columns[0].values.len(),
                y_len: column.values.len(),
            });
        }
    }

    let pairs: Vec<(usize, usize)> = (0..k)
        .flat_map(|i| (i + 1..k).map(move |j| (i, j)))
        .collect();
    let cells: Vec<(usize, usize, f64, Option<CellWarning>)> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (value, warning) = correlate_pair(&columns[i], &columns[j]);
            (i, j, value, warning)
        })
        .collect();

    let mut values = vec![vec![f64::NAN; k]; k];
    let mut warnings = Vec::new();
    for (i, v) in values.iter_mut().enumerate() {
        v[i] = 1.0;
    }
    for (i, j, value, warning) in cells {
        values[i][j] = value;
        values[j][i] = value;
        if let Some(w) = warning {
            warnings.push(w);
        }
    }
    let labels = columns.iter().map(|c| c.name.clone()).collect();
    Ok((TauMatrix { labels, values }, warnings))
}

fn correlate_pair(a: &Column, b: &Column) -> (f64, Option<CellWarning>) {
    let mut xs = Vec::with_capacity(a.values.len());
    let mut ys = Vec::with_capacity(b.values.len());
    for (&x, &y) in a.values.iter().zip(&b.values) {
        if !x.is_nan() && !y.is_nan() {
            xs.push(x);
            ys.push(y);
        }
    }
    match PairedSample::new(xs, ys).and_then(|s| kendall_tau(&s)) {
        Ok(result) => (result.tau, None),
        Err(reason) => (
            f64::NAN,
            Some(CellWarning {
                row: a.name.clone(),
                col: b.name.clone(),
                reason,
            }),
        ),
    }
}
