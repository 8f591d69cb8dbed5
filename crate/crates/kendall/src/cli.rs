//! The `kendall` command-line tool.
//!
//! Four subcommands: `cor` (the coefficient), `test` (significance),
//! `matrix` (pairwise over many columns), and `bench` (scaling
//! measurements). Results go to stdout; warnings and errors go to
//! stderr. Exit codes are part of the contract:
//!
//! ```text
//! 0  success
//! 2  usage error (bad flags, bad benchmark configuration)
//! 3  input could not be opened or parsed
//! 4  input parsed but failed validation
//! 5  correlation undefined for this input (constant column)
//! 6  requested method not applicable (e.g. exact with ties)
//! ```

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bench;
use crate::error::Error;
use crate::inference::{kendall_test, Alternative, MethodChoice, TestOptions};
use crate::io::{
    self, ColumnSelector, ColumnSpec, LoadError, LoadedPair, MatrixSpec, OutputRecord, Source,
};
use crate::matrix::tau_matrix;
use crate::oracle;
use crate::sample::PairedSample;
use crate::tau::kendall_tau;

pub const EXIT_SUCCESS: i32 = 0;
/// Also used by clap itself for usage errors.
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_READ: i32 = 3;
pub const EXIT_VALIDATION: i32 = 4;
pub const EXIT_DEGENERATE: i32 = 5;
pub const EXIT_METHOD: i32 = 6;
/// Oracle disagreement under `--check-oracle`: an internal invariant
/// broke, which is distinct from any input problem.
pub const EXIT_INTERNAL: i32 = 1;

/// Largest n `--check-oracle` accepts; the quadratic recomputation gets
/// slow beyond it.
const CHECK_ORACLE_MAX_N: usize = 5_000;

const EXIT_CODE_HELP: &str = "Exit codes:
  0  success
  2  usage error
  3  input could not be opened or parsed
  4  input parsed but failed validation
  5  correlation undefined for this input
  6  requested method not applicable";

#[derive(Parser)]
#[command(
    name = "kendall",
    version,
    about = "Kendall rank correlation (tau-b) and significance tests",
    after_help = EXIT_CODE_HELP
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Correlate two columns of a delimited file
    Cor(CorArgs),
    /// Test tau against zero and report a p-value
    Test(TestArgs),
    /// Pairwise tau matrix over several columns
    Matrix(MatrixArgs),
    /// Compare fast and quadratic implementations across sizes
    Bench(BenchArgs),
}

#[derive(Args)]
struct InputArgs {
    /// Input path, or '-' for stdin
    #[arg(long, short = 'i', default_value = "-", value_name = "PATH")]
    input: String,

    /// Field delimiter (one byte; '\t' works for TSV)
    #[arg(long, default_value = ",", value_name = "CHAR")]
    delimiter: String,

    /// Input has no header row; columns must be selected by index
    #[arg(long)]
    no_header: bool,

    /// Drop rows with missing or non-numeric cells instead of failing
    #[arg(long)]
    drop_missing: bool,
}

impl InputArgs {
    fn delimiter_byte(&self) -> Result<u8, Failure> {
        match self.delimiter.as_str() {
            "\\t" | "\t" => Ok(b'\t'),
            s if s.len() == 1 => Ok(s.as_bytes()[0]),
            s => Err(Failure {
                code: EXIT_USAGE,
                message: format!("--delimiter must be a single byte, got {s:?}"),
            }),
        }
    }
}

#[derive(Args)]
struct XyArgs {
    /// Column holding x: header name or 1-based index
    #[arg(long, short = 'x', default_value = "1", value_name = "COL")]
    x: String,

    /// Column holding y: header name or 1-based index
    #[arg(long, short = 'y', default_value = "2", value_name = "COL")]
    y: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PairFormat {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TableFormat {
    /// Comma-separated values ('text' is accepted as an alias)
    #[value(alias = "text")]
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlternativeArg {
    /// True tau is not 0
    #[value(name = "two-sided")]
    TwoSided,
    /// True tau is negative
    Less,
    /// True tau is positive
    Greater,
}

impl From<AlternativeArg> for Alternative {
    fn from(arg: AlternativeArg) -> Alternative {
        match arg {
            AlternativeArg::TwoSided => Alternative::TwoSided,
            AlternativeArg::Less => Alternative::Less,
            AlternativeArg::Greater => Alternative::Greater,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    /// Exact for small tie-free samples, normal approximation otherwise
    Auto,
    /// Exact null distribution (tie-free samples up to n = 170)
    Exact,
    /// Tie-corrected normal approximation
    Normal,
}

impl From<MethodArg> for MethodChoice {
    fn from(arg: MethodArg) -> MethodChoice {
        match arg {
            MethodArg::Auto => MethodChoice::Auto,
            MethodArg::Exact => MethodChoice::Exact,
            MethodArg::Normal => MethodChoice::NormalApprox,
        }
    }
}

#[derive(Args)]
struct CorArgs {
    #[command(flatten)]
    input: InputArgs,

    #[command(flatten)]
    xy: XyArgs,

    /// Output format
    #[arg(long, value_enum, default_value_t = PairFormat::Text)]
    format: PairFormat,

    /// Recompute with the quadratic reference implementation and exit 1
    /// on any disagreement (capped at n = 5000)
    #[arg(long)]
    check_oracle: bool,

    /// Include per-stage timings in JSON output
    #[arg(long, hide = true)]
    timing: bool,
}

#[derive(Args)]
struct TestArgs {
    #[command(flatten)]
    input: InputArgs,

    #[command(flatten)]
    xy: XyArgs,

    /// Direction of the alternative hypothesis
    #[arg(long, value_enum, default_value_t = AlternativeArg::TwoSided)]
    alternative: AlternativeArg,

    /// How to compute the p-value
    #[arg(long, value_enum, default_value_t = MethodArg::Auto)]
    method: MethodArg,

    /// Apply a continuity correction to the normal approximation
    #[arg(long)]
    continuity: bool,

    /// Output format
    #[arg(long, value_enum, default_value_t = PairFormat::Text)]
    format: PairFormat,

    /// Include per-stage timings in JSON output
    #[arg(long, hide = true)]
    timing: bool,
}

#[derive(Args)]
struct MatrixArgs {
    #[command(flatten)]
    input: InputArgs,

    /// Columns to include, comma separated (names or 1-based indices);
    /// default: every numeric column
    #[arg(long, value_delimiter = ',', value_name = "COLS")]
    columns: Option<Vec<String>>,

    /// Output format
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
}

#[derive(Args)]
struct BenchArgs {
    /// Sample sizes to time, comma separated
    #[arg(
        long,
        value_delimiter = ',',
        default_value = "10000,20000,50000,100000",
        value_name = "N,N,..."
    )]
    sizes: Vec<usize>,

    /// Timed repetitions per size (the median is reported)
    #[arg(long, default_value_t = 5)]
    reps: u32,

    /// Seed for the synthetic samples
    #[arg(long, default_value_t = 42)]
    seed: u64,

    /// Largest n at which the quadratic path is also timed
    #[arg(long, default_value_t = bench::DEFAULT_NAIVE_CUTOFF, value_name = "N")]
    naive_cutoff: usize,

    /// Write the report to a file instead of stdout
    #[arg(long, value_name = "PATH")]
    output: Option<PathBuf>,

    /// Output format
    #[arg(long, value_enum, default_value_t = TableFormat::Csv)]
    format: TableFormat,
}

/// A failed run: what to print on stderr and the exit code.
struct Failure {
    code: i32,
    message: String,
}

fn exit_code_for(error: &Error) -> i32 {
    match error {
        Error::LengthMismatch { .. }
        | Error::TooShort { .. }
        | Error::NonFinite { .. }
        | Error::TooFewColumns { .. } => EXIT_VALIDATION,
        Error::Degenerate { .. } | Error::ZeroVariance => EXIT_DEGENERATE,
        Error::ExactRequiresNoTies
        | Error::ExactSizeUnsupported { .. }
        | Error::EnumerationUnsupported { .. } => EXIT_METHOD,
        Error::NaiveCutoffExceeded { .. } | Error::TooFewReps { .. } | Error::InsufficientSizes => {
            EXIT_USAGE
        }
    }
}

impl From<Error> for Failure {
    fn from(error: Error) -> Failure {
        let mut message = error.to_string();
        if error == Error::ExactRequiresNoTies {
            message.push_str(" (hint: --method normal)");
        }
        Failure {
            code: exit_code_for(&error),
            message,
        }
    }
}

impl From<LoadError> for Failure {
    fn from(error: LoadError) -> Failure {
        match error {
            LoadError::Sample(inner) => inner.into(),
            other => Failure {
                code: EXIT_READ,
                message: other.to_string(),
            },
        }
    }
}

/// Parses arguments from the process environment, runs the selected
/// subcommand, and returns the exit code. Usage errors are printed (and
/// exited) by clap itself with code 2.
pub fn run() -> i32 {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Cor(args) => cmd_cor(args),
        Command::Test(args) => cmd_test(args),
        Command::Matrix(args) => cmd_matrix(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(()) => EXIT_SUCCESS,
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            failure.code
        }
    }
}

fn column_spec(input: &InputArgs, xy: &XyArgs) -> Result<ColumnSpec, Failure> {
    let parse = |s: &str| -> Result<ColumnSelector, Failure> {
        s.parse().map_err(|message| Failure {
            code: EXIT_USAGE,
            message,
        })
    };
    Ok(ColumnSpec {
        source: Source::from_arg(&input.input),
        x: parse(&xy.x)?,
        y: parse(&xy.y)?,
        delimiter: input.delimiter_byte()?,
        has_header: !input.no_header,
        drop_missing: input.drop_missing,
    })
}

fn load_pair(input: &InputArgs, xy: &XyArgs) -> Result<LoadedPair, Failure> {
    let spec = column_spec(input, xy)?;
    let loaded = io::load_columns(&spec)?;
    if loaded.dropped_rows > 0 {
        eprintln!(
            "warning: dropped {} row(s) with missing values",
            loaded.dropped_rows
        );
    }
    Ok(loaded)
}

/// Attaches the offending column's name to errors that point at one
/// margin, so the CLI message names a column instead of "x" alone.
fn with_column_context(error: Error, loaded: &LoadedPair) -> Failure {
    use crate::error::Axis;
    let label = |axis: &Axis| match axis {
        Axis::X => &loaded.x_label,
        Axis::Y => &loaded.y_label,
    };
    let context = match &error {
        Error::Degenerate { axis } => Some(format!(" (column {:?})", label(axis))),
        Error::NonFinite { axis, .. } => Some(format!(" (column {:?})", label(axis))),
        _ => None,
    };
    let mut failure = Failure::from(error);
    if let Some(context) = context {
        failure.message.push_str(&context);
    }
    failure
}

fn check_against_oracle(sample: &PairedSample, n: usize) -> Result<(), Failure> {
    if n > CHECK_ORACLE_MAX_N {
        return Err(Failure {
            code: EXIT_USAGE,
            message: format!("--check-oracle is capped at n = {CHECK_ORACLE_MAX_N}, got {n}"),
        });
    }
    let fast = kendall_tau(sample).map_err(Failure::from)?;
    let counts = oracle::brute_force_counts(sample);
    let oracle_tau = oracle::brute_force_tau(sample).map_err(Failure::from)?;
    let numerator = counts.concordant as i64 - counts.discordant as i64;
    let mismatch = fast.numerator != numerator
        || fast.swaps != counts.discordant
        || fast.ties.pairs_tied_x != counts.ties_x_only + counts.ties_both
        || fast.ties.pairs_tied_y != counts.ties_y_only + counts.ties_both
        || fast.ties.pairs_tied_both != counts.ties_both
        || (fast.tau - oracle_tau).abs() > 1e-12;
    if mismatch {
        return Err(Failure {
            code: EXIT_INTERNAL,
            message: format!(
                "oracle disagreement: fast {:?} vs oracle tau {oracle_tau} with counts {counts:?}",
                fast
            ),
        });
    }
    Ok(())
}

fn print_record(
    record: &OutputRecord,
    format: PairFormat,
    render_text: fn(&OutputRecord) -> String,
) {
    let out = match format {
        PairFormat::Text => render_text(record),
        PairFormat::Json => record.to_json(),
    };
    print!("{out}");
}

fn cmd_cor(args: CorArgs) -> Result<(), Failure> {
    let load_started = Instant::now();
    let loaded = load_pair(&args.input, &args.xy)?;
    let load_s = load_started.elapsed().as_secs_f64();

    if args.check_oracle {
        check_against_oracle(&loaded.sample, loaded.sample.n())?;
    }
    let compute_started = Instant::now();
    let result = kendall_tau(&loaded.sample).map_err(|e| with_column_context(e, &loaded))?;
    let compute_s = compute_started.elapsed().as_secs_f64();

    let mut record = OutputRecord::from_tau(&result);
    if args.timing {
        record.timings = Some(
            [
                ("load".to_string(), load_s),
                ("compute".to_string(), compute_s),
            ]
            .into_iter()
            .collect(),
        );
    }
    print_record(&record, args.format, io::render_cor_text);
    Ok(())
}

fn cmd_test(args: TestArgs) -> Result<(), Failure> {
    let load_started = Instant::now();
    let loaded = load_pair(&args.input, &args.xy)?;
    let load_s = load_started.elapsed().as_secs_f64();

    let options = TestOptions {
        alternative: args.alternative.into(),
        method: args.method.into(),
        continuity: args.continuity,
    };
    let compute_started = Instant::now();
    let result =
        kendall_test(&loaded.sample, options).map_err(|e| with_column_context(e, &loaded))?;
    let compute_s = compute_started.elapsed().as_secs_f64();

    let mut record = OutputRecord::from_test(&result);
    if args.timing {
        record.timings = Some(
            [
                ("load".to_string(), load_s),
                ("compute".to_string(), compute_s),
            ]
            .into_iter()
            .collect(),
        );
    }
    print_record(&record, args.format, io::render_test_text);
    Ok(())
}

fn cmd_matrix(args: MatrixArgs) -> Result<(), Failure> {
    let columns = match &args.columns {
        Some(raw) => {
            let mut selectors = Vec::with_capacity(raw.len());
            for s in raw {
                selectors.push(s.parse::<ColumnSelector>().map_err(|message| Failure {
                    code: EXIT_USAGE,
                    message,
                })?);
            }
            Some(selectors)
        }
        None => None,
    };
    let spec = MatrixSpec {
        source: Source::from_arg(&args.input.input),
        columns,
        delimiter: args.input.delimiter_byte()?,
        has_header: !args.input.no_header,
        drop_missing: args.input.drop_missing,
    };
    let loaded = io::load_matrix(&spec)?;
    let (matrix, warnings) = tau_matrix(&loaded).map_err(Failure::from)?;
    for warning in &warnings {
        eprintln!("warning: {warning}");
    }
    let out = match args.format {
        TableFormat::Csv => io::render_matrix_csv(&matrix),
        TableFormat::Json => io::render_matrix_json(&matrix),
    };
    print!("{out}");
    Ok(())
}

fn cmd_bench(args: BenchArgs) -> Result<(), Failure> {
    if args.naive_cutoff > bench::DEFAULT_NAIVE_CUTOFF {
        return Err(Failure {
            code: EXIT_USAGE,
            message: format!(
                "--naive-cutoff is capped at {} (the quadratic path would take minutes per run beyond that)",
                bench::DEFAULT_NAIVE_CUTOFF
            ),
        });
    }
    let report = bench::scaling_report(&args.sizes, args.reps, args.seed, args.naive_cutoff)
        .map_err(Failure::from)?;
    let out = match args.format {
        TableFormat::Csv => report.to_csv(),
        TableFormat::Json => report.to_json(),
    };
    match &args.output {
        Some(path) => {
            let mut file = std::fs::File::create(path).map_err(|e| Failure {
                code: EXIT_READ,
                message: format!("cannot write {}: {e}", path.display()),
            })?;
            file.write_all(out.as_bytes()).map_err(|e| Failure {
                code: EXIT_READ,
                message: format!("cannot write {}: {e}", path.display()),
            })?;
        }
        None => print!("{out}"),
    }
    Ok(())
}
