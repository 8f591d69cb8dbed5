//! End-to-end runs of the `kendall` binary: output formats, stderr
//! discipline, and the documented exit codes.

use std::io::Write;
use std::process::{Command, Output, Stdio};

fn kendall(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kendall"))
        .args(args)
        .output()
        .expect("binary should spawn")
}

fn kendall_with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_kendall"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary should spawn");
    child
        .stdin
        .take()
        .unwrap()
        .write_all(input.as_bytes())
        .unwrap();
    child.wait_with_output().unwrap()
}

fn write_temp(content: &str) -> tempfile::NamedTempFile {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(content.as_bytes()).unwrap();
    file.flush().unwrap();
    file
}

fn stdout_of(output: &Output) -> String {
    String::from_utf8(output.stdout.clone()).unwrap()
}

fn stderr_of(output: &Output) -> String {
    String::from_utf8(output.stderr.clone()).unwrap()
}

const TINY: &str = "x,y\n1,2\n2,1\n3,4\n4,3\n5,5\n";

#[test]
fn help_and_version_exit_zero() {
    assert!(kendall(&["--help"]).status.success());
    assert!(kendall(&["--version"]).status.success());
    for sub in ["cor", "test", "matrix", "bench"] {
        let output = kendall(&[sub, "--help"]);
        assert!(output.status.success(), "{sub} --help failed");
    }
}

#[test]
fn help_documents_the_exit_codes() {
    let help = stdout_of(&kendall(&["--help"]));
    for line in [
        "0  success",
        "2  usage error",
        "3  input could not be opened or parsed",
        "4  input parsed but failed validation",
        "5  correlation undefined for this input",
        "6  requested method not applicable",
    ] {
        assert!(help.contains(line), "missing {line:?} in:\n{help}");
    }
}

#[test]
fn cor_reads_a_file_and_prints_the_coefficient() {
    let file = write_temp(TINY);
    let output = kendall(&["cor", "-i", file.path().to_str().unwrap()]);
    assert!(output.status.success());
    assert_eq!(stdout_of(&output), "0.6\n");
    assert_eq!(stderr_of(&output), "", "clean runs keep stderr empty");
}

#[test]
fn cor_reads_stdin_by_default() {
    let output = kendall_with_stdin(&["cor"], TINY);
    assert!(output.status.success());
    assert_eq!(stdout_of(&output), "0.6\n");
}

#[test]
fn cor_selects_columns_by_name_or_index() {
    let file = write_temp("a,b,c\n1,9,2\n2,9,1\n3,9,4\n4,9,3\n5,9,5\n");
    let path = file.path().to_str().unwrap();
    let by_name = kendall(&["cor", "-i", path, "-x", "a", "-y", "c"]);
    let by_index = kendall(&["cor", "-i", path, "-x", "1", "-y", "3"]);
    assert_eq!(stdout_of(&by_name), "0.6\n");
    assert_eq!(stdout_of(&by_index), stdout_of(&by_name));
}

#[test]
fn cor_json_has_tau_and_n() {
    let file = write_temp(TINY);
    let output = kendall(&[
        "cor",
        "-i",
        file.path().to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert_eq!(stdout_of(&output), "{\"tau\":0.6,\"n\":5}\n");
}

#[test]
fn test_text_output_matches_the_documented_shape() {
    let file = write_temp(TINY);
    let output = kendall(&[
        "test",
        "-i",
        file.path().to_str().unwrap(),
        "--alternative",
        "greater",
    ]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    assert!(text.starts_with("statistic: 0.6\n"), "got:\n{text}");
    assert!(text.contains("p_value: 0.1166667\n"), "got:\n{text}");
    assert!(
        text.contains("alternative hypothesis: true tau is greater than 0"),
        "got:\n{text}"
    );
}

#[test]
fn test_json_round_trips_to_the_text_numbers() {
    let file = write_temp(TINY);
    let path = file.path().to_str().unwrap();
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&kendall(&[
        "test", "-i", path, "--format", "json",
    ])))
    .unwrap();
    assert_eq!(json["tau"], 0.6);
    assert_eq!(json["n"], 5);
    assert_eq!(json["alternative"], "two-sided");
    assert_eq!(json["method"], "exact");
    let p = json["p_value"].as_f64().unwrap();
    // n = 5, tie-free: auto must route to the exact distribution
    assert!((p - 0.2333333333333333).abs() < 1e-12);
}

#[test]
fn method_and_continuity_flags_change_the_p_value() {
    let file = write_temp(TINY);
    let path = file.path().to_str().unwrap();
    let plain = stdout_of(&kendall(&["test", "-i", path, "--method", "normal"]));
    let corrected = stdout_of(&kendall(&[
        "test",
        "-i",
        path,
        "--method",
        "normal",
        "--continuity",
    ]));
    assert_ne!(plain, corrected);
    assert!(plain.contains("p_value: 0.1416447\n"), "got:\n{plain}");
    assert!(
        corrected.contains("p_value: 0.2206714\n"),
        "got:\n{corrected}"
    );
}

#[test]
#[allow(clippy::needless_range_loop)] // symmetry checks read best indexed
fn matrix_csv_is_symmetric_with_unit_diagonal() {
    let file = write_temp("a,b,c\n1,5,9\n2,4,8\n3,6,9\n4,8,6\n5,7,5\n");
    let output = kendall(&["matrix", "-i", file.path().to_str().unwrap()]);
    assert!(output.status.success());
    let text = stdout_of(&output);
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    assert_eq!(rows[0], vec!["", "a", "b", "c"]);
    for i in 1..rows.len() {
        assert_eq!(rows[i][i], "1");
        for j in 1..rows.len() {
            assert_eq!(rows[i][j], rows[j][i], "asymmetry at ({i}, {j})");
        }
    }
}

#[test]
fn matrix_json_lists_columns_and_rows() {
    let file = write_temp("a,b\n1,5\n2,4\n3,6\n4,8\n5,7\n");
    let output = kendall(&[
        "matrix",
        "-i",
        file.path().to_str().unwrap(),
        "--format",
        "json",
    ]);
    let json: serde_json::Value = serde_json::from_str(&stdout_of(&output)).unwrap();
    assert_eq!(json["columns"], serde_json::json!(["a", "b"]));
    assert_eq!(json["tau"][0][0], 1.0);
    assert_eq!(json["tau"][0][1], json["tau"][1][0]);
}

#[test]
fn matrix_degenerate_cells_warn_on_stderr_but_exit_zero() {
    let file = write_temp("a,b,c\n1,5,2\n2,4,2\n3,6,2\n4,8,2\n5,7,2\n");
    let output = kendall(&["matrix", "-i", file.path().to_str().unwrap()]);
    assert!(output.status.success());
    assert!(stdout_of(&output).contains("NaN"));
    let err = stderr_of(&output);
    assert!(err.contains("warning:"), "got stderr:\n{err}");
    assert!(err.contains("(a, c)"), "got stderr:\n{err}");
}

#[test]
fn tsv_and_headerless_inputs_work() {
    let output = kendall_with_stdin(
        &["cor", "--no-header", "--delimiter", "\\t"],
        "1\t2\n2\t1\n3\t4\n4\t3\n5\t5\n",
    );
    assert!(output.status.success());
    assert_eq!(stdout_of(&output), "0.6\n");
}

#[test]
fn drop_missing_reports_dropped_rows_on_stderr() {
    let file = write_temp("x,y\n1,2\n,3\n3,1\n4,4\n5,5\n");
    let output = kendall(&["cor", "-i", file.path().to_str().unwrap(), "--drop-missing"]);
    assert!(output.status.success());
    assert!(stderr_of(&output).contains("dropped 1 row(s)"));
}

#[test]
fn check_oracle_passes_on_honest_data() {
    let file = write_temp(TINY);
    let output = kendall(&["cor", "-i", file.path().to_str().unwrap(), "--check-oracle"]);
    assert!(output.status.success());
    assert_eq!(stdout_of(&output), "0.6\n");
}

#[test]
fn bench_csv_has_the_documented_header() {
    let output = kendall(&[
        "bench",
        "--sizes",
        "50,100,500",
        "--reps",
        "3",
        "--seed",
        "1",
    ]);
    assert!(output.status.success(), "stderr: {}", stderr_of(&output));
    let text = stdout_of(&output);
    assert!(
        text.starts_with("n,fast_median_s,naive_median_s,reps\n"),
        "got:\n{text}"
    );
    assert_eq!(text.lines().count(), 4);
}

#[test]
fn bench_writes_to_a_file_when_asked() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.csv");
    let output = kendall(&[
        "bench",
        "--sizes",
        "50,100,500",
        "--reps",
        "3",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(output.status.success());
    assert_eq!(stdout_of(&output), "");
    let written = std::fs::read_to_string(&path).unwrap();
    assert!(written.starts_with("n,fast_median_s,naive_median_s,reps\n"));
}

// --- the exit-code contract, end to end --------------------------------

#[test]
fn exit_2_on_usage_errors() {
    assert_eq!(kendall(&["cor", "--no-such-flag"]).status.code(), Some(2));
    assert_eq!(
        kendall(&["bench", "--sizes", "10,20", "--reps", "3"])
            .status
            .code(),
        Some(2),
        "sizes without a 10x span"
    );
    assert_eq!(
        kendall(&["bench", "--sizes", "50,100,500", "--reps", "1"])
            .status
            .code(),
        Some(2),
        "reps below 3"
    );
    let file = write_temp(TINY);
    assert_eq!(
        kendall(&[
            "cor",
            "-i",
            file.path().to_str().unwrap(),
            "--delimiter",
            ";;"
        ])
        .status
        .code(),
        Some(2),
        "multi-byte delimiter"
    );
}

#[test]
fn exit_3_on_unreadable_or_unparseable_input() {
    assert_eq!(
        kendall(&["cor", "-i", "/nonexistent/input.csv"])
            .status
            .code(),
        Some(3)
    );
    let bad_cell = write_temp("x,y\n1,2\nfoo,3\n4,5\n");
    let output = kendall(&["cor", "-i", bad_cell.path().to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(3));
    assert!(
        stderr_of(&output).contains("line 3"),
        "error should name the offending line: {}",
        stderr_of(&output)
    );
    let file = write_temp(TINY);
    assert_eq!(
        kendall(&["cor", "-i", file.path().to_str().unwrap(), "-x", "nope"])
            .status
            .code(),
        Some(3),
        "unknown column name"
    );
    assert_eq!(
        kendall(&["cor", "-i", file.path().to_str().unwrap(), "-y", "x"])
            .status
            .code(),
        Some(3),
        "x and y resolve to the same column"
    );
}

#[test]
fn exit_4_on_validation_failures() {
    let one_row = write_temp("x,y\n1,2\n");
    assert_eq!(
        kendall(&["cor", "-i", one_row.path().to_str().unwrap()])
            .status
            .code(),
        Some(4)
    );
    let nan = write_temp("x,y\n1,2\nNaN,3\n4,5\n");
    let output = kendall(&["cor", "-i", nan.path().to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(4));
    assert!(stderr_of(&output).contains("non-finite"));
    let inf = write_temp("x,y\n1,2\n3,inf\n4,5\n");
    assert_eq!(
        kendall(&["cor", "-i", inf.path().to_str().unwrap()])
            .status
            .code(),
        Some(4)
    );
}

#[test]
fn exit_5_when_the_correlation_is_undefined() {
    let constant = write_temp("x,y\n1,2\n1,3\n1,4\n");
    let output = kendall(&["cor", "-i", constant.path().to_str().unwrap()]);
    assert_eq!(output.status.code(), Some(5));
    // the message names the offending input column, not just an axis
    assert!(
        stderr_of(&output).contains("\"x\""),
        "got: {}",
        stderr_of(&output)
    );
}

#[test]
fn exit_6_when_the_requested_method_cannot_apply() {
    let tied = write_temp("x,y\n1,2\n2,2\n3,3\n4,1\n");
    let output = kendall(&[
        "test",
        "-i",
        tied.path().to_str().unwrap(),
        "--method",
        "exact",
    ]);
    assert_eq!(output.status.code(), Some(6));
    assert!(stderr_of(&output).contains("--method normal"));
}

#[test]
fn errors_go_to_stderr_not_stdout() {
    let output = kendall(&["cor", "-i", "/nonexistent/input.csv"]);
    assert_eq!(stdout_of(&output), "");
    assert!(stderr_of(&output).starts_with("error: "));
}
