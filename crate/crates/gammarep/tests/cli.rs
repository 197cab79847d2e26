use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gammarep")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> (Vec<String>, Vec<Vec<String>>) {
    let mut lines = text.lines();
    let header = lines.next().unwrap().split(',').map(String::from).collect();
    let rows = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    (header, rows)
}

#[test]
fn eval_single_point() {
    let o = run(&["eval", "--fn", "psi", "--rep", "u-integral", "--a", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 1);
    let value = header.iter().position(|h| h == "value").unwrap();
    let v: f64 = rows[0][value].parse().unwrap();
    assert!((v + 0.577_215_664_901_532_9).abs() < 1e-9);
    assert!(!header.contains(&"wall_time".to_string()));
}

#[test]
fn domain_and_usage_errors_exit_two() {
    assert_eq!(run(&["eval", "--fn", "psi", "--a", "-1"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--fn", "psi", "--a", "0"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--fn", "nope", "--a", "1"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--fn", "psi", "--a", "1", "--bogus"]).status.code(), Some(2));
    assert_eq!(run(&["eval", "--fn", "psi", "--a", "1", "--tail-order", "9"]).status.code(), Some(2));
    assert_eq!(run(&["identities", "--suite", "unknown"]).status.code(), Some(2));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn csv_row_count_is_grid_times_reps() {
    let o = run(&["compare", "--fn", "psi", "--grid", "0.5,1,2,pi", "--format", "csv"]);
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(header[..4], ["fn", "rep", "arg", "x"]);
    assert_eq!(rows.len(), 4 * 7);
    assert!(rows.iter().all(|r| r.len() == header.len()));
    let x = header.iter().position(|h| h == "x").unwrap();
    let last: f64 = rows.last().unwrap()[x].parse().unwrap();
    assert_eq!(last, std::f64::consts::PI);
}

#[test]
fn reals_carry_seventeen_significant_digits() {
    let o = run(&["eval", "--fn", "psi", "--rep", "exp-integral", "--a", "0.5", "--format", "csv"]);
    let (header, rows) = csv_rows(&stdout(&o));
    let value = &rows[0][header.iter().position(|h| h == "value").unwrap()];
    let mantissa = value.trim_start_matches('-').split('e').next().unwrap();
    assert_eq!(mantissa.chars().filter(char::is_ascii_digit).count(), 17, "{value}");
}

#[test]
fn table_over_rational_arguments() {
    let o = run(&["table", "--fn", "psi-rational", "--q", "12", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let (header, rows) = csv_rows(&stdout(&o));
    assert_eq!(rows.len(), 11);
    assert!(!header.contains(&"err_est".to_string()));
    let pass = header.iter().position(|h| h == "pass").unwrap();
    assert!(rows.iter().all(|r| r[pass] == "true"));
}

#[test]
fn json_document_shape() {
    let o = run(&["compare", "--fn", "lngamma", "--grid", "1:3:3", "--format", "json"]);
    let doc: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let obj = doc.as_object().unwrap();
    assert_eq!(obj.keys().collect::<Vec<_>>(), ["config", "rows", "summary"]);
    let rows = doc["rows"].as_array().unwrap();
    assert_eq!(rows.len(), 3 * 5);
    for r in rows {
        assert!(r["value"].is_f64());
        assert!(r["pass"].is_boolean());
        assert!(r["rep"].is_string());
    }
    let s = &doc["summary"];
    let total = s["pass_count"].as_u64().unwrap() + s["fail_count"].as_u64().unwrap();
    assert_eq!(total, rows.len() as u64);
    assert!(s["max_residual"].is_f64());
    assert_eq!(doc["config"]["grid"].as_array().unwrap().len(), 3);
    let code = if s["fail_count"].as_u64().unwrap() == 0 { 0 } else { 1 };
    assert_eq!(o.status.code(), Some(code));
}

#[test]
fn identity_exit_codes() {
    let ok = run(&["identities", "--suite", "gauss", "--format", "csv"]);
    assert_eq!(ok.status.code(), Some(0));
    let (header, rows) = csv_rows(&stdout(&ok));
    assert_eq!(header[..3], ["suite", "identity", "case"]);
    assert_eq!(rows.len(), 46);

    let failing = run(&["identities", "--suite", "gauss", "--tol", "1e-30", "--format", "csv"]);
    assert_eq!(failing.status.code(), Some(1));
}

#[test]
fn output_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("out.csv");
    let p = path.to_str().unwrap();
    let args = ["compare", "--fn", "psi", "--grid", "rand:0.1:5:6", "--seed", "7", "--format", "csv"];
    let mut with_out = args.to_vec();
    with_out.extend(["--out", p]);
    let first = run(&with_out);
    assert!(first.stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    let again = run(&args);
    assert_eq!(written, stdout(&again));
    let threaded = run(&[&args[..], &["--threads", "3"]].concat());
    assert_eq!(stdout(&threaded), written);

    let other_seed = run(&["compare", "--fn", "psi", "--grid", "rand:0.1:5:6", "--seed", "8", "--format", "csv"]);
    assert_ne!(stdout(&other_seed), written);
}

#[test]
fn bench_sweeps_the_truncation() {
    let o = run(&["bench", "--fn", "psi", "--rep", "binomial-log", "--a", "1", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let (header, rows) = csv_rows(&stdout(&o));
    let err = header.iter().position(|h| h == "abs_error").unwrap();
    let errs: Vec<f64> = rows.iter().map(|r| r[err].parse().unwrap()).collect();
    assert!(errs.len() >= 3);
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
}

#[test]
fn timing_column_is_opt_in() {
    let o = run(&["eval", "--fn", "gamma", "--rep", "integral", "--timing", "--format", "csv"]);
    let (header, _) = csv_rows(&stdout(&o));
    assert_eq!(header.last().map(String::as_str), Some("wall_time"));
}
