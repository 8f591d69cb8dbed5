//! Delimited-file ingestion and output formatting for the CLI.
//!
//! Loading is strict by default: any cell that does not parse as a finite
//! number is an error with its line and column. With `drop_missing` set,
//! such rows are silently skipped and counted instead. Output comes in
//! two shapes — a fixed-key JSON record and a compact text form — that
//! round-trip: rendering a parsed JSON record as text gives byte-for-byte
//! the same output as asking for text directly.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::Read;
use std::path::PathBuf;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error as ThisError;

use crate::error::Error;
use crate::inference::{Alternative, TestResult};
use crate::matrix::{Column, TauMatrix};
use crate::sample::PairedSample;
use crate::tau::TauResult;

/// Where the delimited input comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Stdin,
    Path(PathBuf),
}

impl Source {
    /// `-` means stdin, anything else is a path.
    pub fn from_arg(arg: &str) -> Source {
        if arg == "-" {
            Source::Stdin
        } else {
            Source::Path(PathBuf::from(arg))
        }
    }

    fn open(&self) -> Result<Box<dyn Read>, LoadError> {
        match self {
            Source::Stdin => Ok(Box::new(std::io::stdin())),
            Source::Path(path) => match File::open(path) {
                Ok(f) => Ok(Box::new(f)),
                Err(source) => Err(LoadError::Open {
                    path: path.display().to_string(),
                    source,
                }),
            },
        }
    }
}

/// Picks a column either by header name or by 1-based position.
///
/// Parsed from strings with a fixed rule: all-digit selectors are
/// positions, everything else is a name. A header that is itself all
/// digits can therefore only be selected by position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnSelector {
    /// 1-based position.
    Index(usize),
    /// Header name, matched exactly.
    Name(String),
}

impl FromStr for ColumnSelector {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.is_empty() {
            return Err("empty column selector".to_string());
        }
        if s.bytes().all(|b| b.is_ascii_digit()) {
            let index: usize = s.parse().map_err(|_| format!("index {s:?} out of range"))?;
            if index == 0 {
                return Err("column indices are 1-based; 0 is not a column".to_string());
            }
            Ok(ColumnSelector::Index(index))
        } else {
            Ok(ColumnSelector::Name(s.to_string()))
        }
    }
}

impl std::fmt::Display for ColumnSelector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ColumnSelector::Index(i) => write!(f, "{i}"),
            ColumnSelector::Name(name) => write!(f, "{name:?}"),
        }
    }
}

/// Everything needed to pull an (x, y) pair of columns out of a
/// delimited file.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnSpec {
    pub source: Source,
    pub x: ColumnSelector,
    pub y: ColumnSelector,
    /// Field separator, a single byte (`,` for CSV, `\t` for TSV).
    pub delimiter: u8,
    /// Whether the first record is a header row. Without one, columns can
    /// only be selected by position.
    pub has_header: bool,
    /// Skip rows whose x or y cell is missing or not a finite number,
    /// instead of failing on the first one.
    pub drop_missing: bool,
}

/// A successfully loaded pair of columns.
#[derive(Debug, Clone)]
pub struct LoadedPair {
    pub sample: PairedSample,
    /// Rows skipped under `drop_missing` (always 0 without it).
    pub dropped_rows: usize,
    /// Display label of the x column (header name or `column <i>`).
    pub x_label: String,
    /// Display label of the y column.
    pub y_label: String,
}

/// Ways loading can fail, separate from [`Error`] because they concern
/// the file rather than the numbers. `Sample` wraps the validation errors
/// that remain possible after a clean parse (e.g. too few rows).
#[derive(Debug, ThisError)]
pub enum LoadError {
    #[error("cannot open {path}: {source}")]
    Open {
        path: String,
        source: std::io::Error,
    },

    #[error("malformed input: {0}")]
    Csv(#[from] csv::Error),

    #[error("column {selector} not found ({context})")]
    ColumnNotFound { selector: String, context: String },

    #[error("x and y select the same column ({label})")]
    SameColumn { label: String },

    #[error("line {line}, column {column}: cannot use {cell:?} as a finite number")]
    Parse {
        line: u64,
        column: String,
        cell: String,
    },

    #[error(transparent)]
    Sample(#[from] Error),
}

/// Resolves a selector against the header (if any) and the record width.
fn resolve_selector(
    selector: &ColumnSelector,
    headers: Option<&csv::StringRecord>,
    width: usize,
) -> Result<usize, LoadError> {
    match selector {
        ColumnSelector::Index(i) => {
            if *i > width {
                return Err(LoadError::ColumnNotFound {
                    selector: selector.to_string(),
                    context: format!("the input has {width} columns"),
                });
            }
            Ok(i - 1)
        }
        ColumnSelector::Name(name) => {
            let Some(headers) = headers else {
                return Err(LoadError::ColumnNotFound {
                    selector: selector.to_string(),
                    context: "the input has no header row; select by index".to_string(),
                });
            };
            headers
                .iter()
                .position(|h| h == name)
                .ok_or_else(|| LoadError::ColumnNotFound {
                    selector: selector.to_string(),
                    context: format!(
                        "available columns: {}",
                        headers.iter().collect::<Vec<_>>().join(", ")
                    ),
                })
        }
    }
}

fn column_label(headers: Option<&csv::StringRecord>, index: usize) -> String {
    match headers.and_then(|h| h.get(index)) {
        Some(name) => name.to_string(),
        None => format!("column {}", index + 1),
    }
}

fn parse_cell(cell: &str) -> Option<f64> {
    cell.trim().parse::<f64>().ok()
}

/// Loads two columns as a validated [`PairedSample`].
///
/// Strict mode fails on the first cell that is not a finite number,
/// reporting its line and column; `NaN`/`inf` literals do parse and are
/// instead rejected by sample validation, so they surface as
/// [`Error::NonFinite`]. With `drop_missing`, rows with missing,
/// unparseable, or non-finite cells are skipped and counted.
pub fn load_columns(spec: &ColumnSpec) -> Result<LoadedPair, LoadError> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(spec.delimiter)
        .has_headers(spec.has_header)
        .flexible(false)
        .from_reader(spec.source.open()?);

    let headers = if spec.has_header {
        Some(reader.headers()?.clone())
    } else {
        None
    };

    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    let mut dropped = 0usize;
    let mut indices: Option<(usize, usize)> = match &headers {
        Some(h) => Some(resolve_pair(spec, Some(h), h.len())?),
        None => None, // headerless: resolved against the first record below
    };

    for record in reader.records() {
        let record = record?;
        let (ix, iy) = match indices {
            Some(pair) => pair,
            None => {
                let pair = resolve_pair(spec, None, record.len())?;
                indices = Some(pair);
                pair
            }
        };
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let value_of = |index: usize| -> Result<Option<f64>, LoadError> {
            let cell = record.get(index).unwrap_or("");
            match parse_cell(cell) {
                Some(v) if v.is_finite() || !spec.drop_missing => Ok(Some(v)),
                Some(_) => Ok(None), // non-finite under drop_missing
                None if spec.drop_missing => Ok(None),
                None => Err(LoadError::Parse {
                    line,
                    column: column_label(headers.as_ref(), index),
                    cell: cell.to_string(),
                }),
            }
        };
        match (value_of(ix)?, value_of(iy)?) {
            (Some(x), Some(y)) => {
                xs.push(x);
                ys.push(y);
            }
            _ => dropped += 1,
        }
    }

    let (x_label, y_label) = match indices {
        Some((ix, iy)) => (
            column_label(headers.as_ref(), ix),
            column_label(headers.as_ref(), iy),
        ),
        // Input had no data rows at all; fall back to the selector text.
        None => (spec.x.to_string(), spec.y.to_string()),
    };
    let sample = PairedSample::new(xs, ys)?;
    Ok(LoadedPair {
        sample,
        dropped_rows: dropped,
        x_label,
        y_label,
    })
}

fn resolve_pair(
    spec: &ColumnSpec,
    headers: Option<&csv::StringRecord>,
    width: usize,
) -> Result<(usize, usize), LoadError> {
    let ix = resolve_selector(&spec.x, headers, width)?;
    let iy = resolve_selector(&spec.y, headers, width)?;
    if ix == iy {
        return Err(LoadError::SameColumn {
            label: column_label(headers, ix),
        });
    }
    Ok((ix, iy))
}

/// Which columns a matrix run should use.
#[derive(Debug, Clone, PartialEq)]
pub struct MatrixSpec {
    pub source: Source,
    /// Explicit selection; `None` means every numeric column (strictly:
    /// every column whose cells all parse as finite numbers, or — under
    /// `drop_missing` — every column with at least two such cells).
    pub columns: Option<Vec<ColumnSelector>>,
    pub delimiter: u8,
    pub has_header: bool,
    /// Treat missing/unparseable/non-finite cells as holes (NaN) to be
    /// dropped pairwise, instead of failing.
    pub drop_missing: bool,
}

/// Loads the selected columns for a correlation matrix.
///
/// Under `drop_missing` the returned columns may contain NaN where a cell
/// was missing; the matrix computation drops those rows pairwise.
pub fn load_matrix(spec: &MatrixSpec) -> Result<Vec<Column>, LoadError> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(spec.delimiter)
        .has_headers(spec.has_header)
        .flexible(false)
        .from_reader(spec.source.open()?);

    let headers = if spec.has_header {
        Some(reader.headers()?.clone())
    } else {
        None
    };
    let mut records: Vec<csv::StringRecord> = Vec::new();
    for record in reader.records() {
        records.push(record?);
    }
    let width = headers
        .as_ref()
        .map(|h| h.len())
        .or_else(|| records.first().map(|r| r.len()))
        .unwrap_or(0);

    let selected: Vec<usize> = match &spec.columns {
        Some(selectors) => {
            let mut indices = Vec::with_capacity(selectors.len());
            for selector in selectors {
                let index = resolve_selector(selector, headers.as_ref(), width)?;
                if indices.contains(&index) {
                    return Err(LoadError::SameColumn {
                        label: column_label(headers.as_ref(), index),
                    });
                }
                indices.push(index);
            }
            indices
        }
        None => (0..width)
            .filter(|&index| {
                let parsed = records
                    .iter()
                    .filter(|r| parse_cell(r.get(index).unwrap_or("")).is_some_and(f64::is_finite))
                    .count();
                if spec.drop_missing {
                    parsed >= 2
                } else {
                    parsed == records.len() && !records.is_empty()
                }
            })
            .collect(),
    };

    let mut columns: Vec<Column> = selected
        .iter()
        .map(|&index| Column {
            name: column_label(headers.as_ref(), index),
            values: Vec::with_capacity(records.len()),
        })
        .collect();
    for record in &records {
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        for (slot, &index) in selected.iter().enumerate() {
            let cell = record.get(index).unwrap_or("");
            let value = match parse_cell(cell) {
                Some(v) if v.is_finite() => v,
                _ if spec.drop_missing => f64::NAN,
                _ => {
                    return Err(LoadError::Parse {
                        line,
                        column: columns[slot].name.clone(),
                        cell: cell.to_string(),
                    })
                }
            };
            columns[slot].values.push(value);
        }
    }
    Ok(columns)
}

/// The JSON record both `cor` and `test` emit. Key order is fixed; absent
/// fields are omitted entirely rather than set to null.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord {
    pub tau: f64,
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p_value: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alternative: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub method: Option<String>,
    /// Wall-clock seconds per stage, present only when timing was
    /// requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, f64>>,
}

impl OutputRecord {
    /// Record for a bare correlation.
    pub fn from_tau(result: &TauResult) -> OutputRecord {
        OutputRecord {
            tau: result.tau,
            n: result.n,
            p_value: None,
            alternative: None,
            method: None,
            timings: None,
        }
    }

    /// Record for a significance test.
    pub fn from_test(result: &TestResult) -> OutputRecord {
        OutputRecord {
            tau: result.statistic,
            n: result.tau.n,
            p_value: Some(result.p_value),
            alternative: Some(result.alternative.as_str().to_string()),
            method: Some(result.method.as_str().to_string()),
            timings: None,
        }
    }

    /// One-line JSON with full float precision.
    pub fn to_json(&self) -> String {
        let mut line = serde_json::to_string(self).expect("record serialization cannot fail");
        line.push('\n');
        line
    }
}

/// Text form of a correlation record: the coefficient alone.
pub fn render_cor_text(record: &OutputRecord) -> String {
    let mut out = format_significant(record.tau, 7);
    out.push('\n');
    out
}

/// Text form of a test record: statistic, p-value, and the hypothesis
/// sentence, one per line.
pub fn render_test_text(record: &OutputRecord) -> String {
    let mut out = format!("statistic: {}\n", format_significant(record.tau, 7));
    if let Some(p) = record.p_value {
        out.push_str(&format!("p_value: {}\n", format_significant(p, 7)));
    }
    if let Some(sentence) = record
        .alternative
        .as_deref()
        .and_then(|s| Alternative::from_str(s).ok())
        .map(Alternative::hypothesis_sentence)
    {
        out.push_str(sentence);
        out.push('\n');
    }
    out
}

/// The matrix as CSV: empty top-left cell, labels across and down, cells
/// formatted like the scalar text output, NaN for undefined cells.
pub fn render_matrix_csv(matrix: &TauMatrix) -> String {
    let mut writer = csv::WriterBuilder::new().from_writer(Vec::new());
    let mut header = vec![String::new()];
    header.extend(matrix.labels.iter().cloned());
    writer.write_record(&header).expect("in-memory write");
    for (label, row) in matrix.labels.iter().zip(&matrix.values) {
        let mut record = vec![label.clone()];
        record.extend(row.iter().map(|&v| {
            if v.is_nan() {
                "NaN".to_string()
            } else {
                format_significant(v, 7)
            }
        }));
        writer.write_record(&record).expect("in-memory write");
    }
    String::from_utf8(writer.into_inner().expect("in-memory flush")).expect("valid utf8")
}

/// The matrix as JSON: `{"columns": [...], "tau": [[...]]}` with `null`
/// marking undefined cells.
pub fn render_matrix_json(matrix: &TauMatrix) -> String {
    let rows: Vec<serde_json::Value> = matrix
        .values
        .iter()
        .map(|row| {
            row.iter()
                .map(|&v| {
                    serde_json::Number::from_f64(v)
                        .map(serde_json::Value::Number)
                        .unwrap_or(serde_json::Value::Null)
                })
                .collect()
        })
        .collect();
    let value = serde_json::json!({
        "columns": matrix.labels,
        "tau": rows,
    });
    let mut line = value.to_string();
    line.push('\n');
    line
}

/// Formats with a fixed number of significant digits, R-style: trailing
/// zeros trimmed, plain positional notation in the middle of the range,
/// scientific (`1.5e-07`) once the decimal exponent drops below −5 or
/// reaches 15.
pub fn format_significant(value: f64, digits: usize) -> String {
    assert!(digits >= 1, "need at least one significant digit");
    if value == 0.0 {
        return "0".to_string();
    }
    if value.is_nan() {
        return "NaN".to_string();
    }
    if value.is_infinite() {
        return if value > 0.0 { "inf" } else { "-inf" }.to_string();
    }

    // {:e} gives "d.ddddde±x"; split it into digits and exponent.
    let formatted = format!("{:.*e}", digits - 1, value);
    let (mantissa, exponent) = formatted
        .split_once('e')
        .expect("float exponent format always contains e");
    let exponent: i32 = exponent.parse().expect("valid exponent");
    let negative = mantissa.starts_with('-');
    let digit_chars: String = mantissa.chars().filter(|c| c.is_ascii_digit()).collect();

    let body = if !(-5..15).contains(&exponent) {
        let trimmed = trim_fraction(&insert_point(&digit_chars, 1));
        format!(
            "{}e{}{:02}",
            trimmed,
            if exponent < 0 { '-' } else { '+' },
            exponent.abs()
        )
    } else if exponent >= 0 {
        let point = exponent as usize + 1;
        if point >= digit_chars.len() {
            format!("{}{}", digit_chars, "0".repeat(point - digit_chars.len()))
        } else {
            trim_fraction(&insert_point(&digit_chars, point))
        }
    } else {
        let zeros = "0".repeat((-exponent - 1) as usize);
        trim_fraction(&format!("0.{zeros}{digit_chars}"))
    };
    if negative {
        format!("-{body}")
    } else {
        body
    }
}

fn insert_point(digits: &str, at: usize) -> String {
    format!("{}.{}", &digits[..at], &digits[at..])
}

fn trim_fraction(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    s.trim_end_matches('0').trim_end_matches('.').to_string()
}
