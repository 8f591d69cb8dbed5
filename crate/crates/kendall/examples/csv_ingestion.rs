//! Pull two columns out of a delimited file and correlate them: header
//! names or 1-based indices, strict or drop-missing parsing.
//!
//! This is the loading path behind `kendall cor` / `kendall test`.
//!
//! Run with: cargo run --example csv_ingestion

use std::error::Error;
use std::io::Write;

use kendall::io::{load_columns, ColumnSelector, ColumnSpec, Source};
use kendall::{kendall_test, TestOptions};

fn main() -> Result<(), Box<dyn Error>> {
    let mut file = tempfile::NamedTempFile::new()?;
    writeln!(file, "dose,response,batch")?;
    writeln!(file, "0.5,11.2,a")?;
    writeln!(file, "1.0,14.1,a")?;
    writeln!(file, "1.5,13.8,b")?;
    writeln!(file, "2.0,,b")?; // missing response
    writeln!(file, "2.5,19.7,b")?;
    writeln!(file, "3.0,21.0,c")?;
    file.flush()?;

    let spec = ColumnSpec {
        source: Source::Path(file.path().to_path_buf()),
        x: "dose".parse::<ColumnSelector>()?,
        y: "response".parse::<ColumnSelector>()?,
        delimiter: b',',
        has_header: true,
        drop_missing: true,
    };
    let loaded = load_columns(&spec)?;
    println!(
        "loaded {} rows of ({}, {}), dropped {}",
        loaded.sample.n(),
        loaded.x_label,
        loaded.y_label,
        loaded.dropped_rows
    );

    let result = kendall_test(&loaded.sample, TestOptions::default())?;
    println!(
        "tau = {:.6}, p = {:.6} ({})",
        result.tau.tau,
        result.p_value,
        result.method.as_str()
    );

    // the same file read strictly: the blank cell is now an error
    let strict = ColumnSpec {
        drop_missing: false,
        source: Source::Path(file.path().to_path_buf()),
        x: ColumnSelector::Index(1),
        y: ColumnSelector::Index(2),
        delimiter: b',',
        has_header: true,
    };
    match load_columns(&strict) {
        Err(e) => println!("strict mode: {e}"),
        Ok(_) => unreachable!(),
    }

    Ok(())
}
