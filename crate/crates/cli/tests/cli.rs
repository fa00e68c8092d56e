//! Exercises the binary's surface: flags, config files, formats, and the
//! exit-code contract (0 success, 1 mismatch/failure, 2 usage error).

use std::io::Write;
use std::process::{Command, Output};

fn wittx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_wittx"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn solve_emits_json_that_roundtrips() {
    let out = wittx(&["solve", "h2", "--algebra", "wb", "--lambda", "0"]);
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["dims"]["total"], 3);
    assert_eq!(value["lambda"], "0");
    // canonical serialization round-trips
    let again: serde_json::Value =
        serde_json::from_str(&serde_json::to_string(&value).unwrap()).unwrap();
    assert_eq!(again, value);
}

#[test]
fn solve_recognizes_named_basis_vectors() {
    let out = wittx(&[
        "solve",
        "mixing",
        "--algebra",
        "wa",
        "--lambda",
        "0",
        "--window",
        "6",
    ]);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["dim"], 2);
    let basis = value["basis"].as_array().unwrap();
    assert!(basis.contains(&serde_json::json!("beta_lambda")));
    assert!(basis.contains(&serde_json::json!("iota")));

    let out = wittx(&["solve", "inv", "--algebra", "wb", "--lambda", "7"]);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["dim"], 0);
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        wittx(&["solve", "nonsense", "--algebra", "wa", "--lambda", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        wittx(&["solve", "h2", "--algebra", "wa"]).status.code(),
        Some(2)
    );
    assert_eq!(
        wittx(&["solve", "abelian", "--algebra", "witt"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        wittx(&["tables", "--format", "yaml"]).status.code(),
        Some(2)
    );
    assert_eq!(wittx(&["tables", "--a", "1"]).status.code(), Some(2));
    assert_eq!(wittx(&["verify", "--suite", "nope"]).status.code(), Some(2));
    assert_eq!(wittx(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(
        wittx(&["solve", "h2", "--algebra", "wa", "--lambda", "1/0"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn fault_injection_exits_one_with_counterexample() {
    let out = wittx(&[
        "verify",
        "--suite",
        "jacobi",
        "--algebra",
        "wa",
        "--lambda",
        "1",
        "--window",
        "4",
        "--inject-jacobi-fault",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["pass"], false);
    let checks = report["suites"][0]["checks"].as_array().unwrap();
    assert!(checks
        .iter()
        .any(|c| c["pass"] == false && c["counterexample"].is_string()));
}

#[test]
fn sub_threshold_window_warns_and_passes() {
    let out = wittx(&[
        "verify",
        "--window",
        "2",
        "--algebra",
        "wa",
        "--lambda",
        "1",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(report["unstable_window"], true);
    let warnings = report["warnings"].as_array().unwrap();
    assert!(warnings
        .iter()
        .any(|w| w.as_str().unwrap().contains("unstable")));
    let suites: Vec<&str> = report["suites"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["suite"].as_str().unwrap())
        .collect();
    assert!(!suites.contains(&"dims"));
}

#[test]
fn config_file_supplies_defaults_and_flags_override() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    writeln!(file, "# single-instance setup").unwrap();
    writeln!(file, "algebra = wb").unwrap();
    writeln!(file, "lambda = inf").unwrap();
    writeln!(file, "window = 6").unwrap();
    let path = file.path().to_str().unwrap();

    let out = wittx(&["--config", path, "solve", "h2"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["lambda"], "inf");
    assert_eq!(value["n"], 6);

    // a flag beats the file
    let out = wittx(&["--config", path, "solve", "h2", "--window", "5"]);
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["n"], 5);

    let mut bad = tempfile::NamedTempFile::new().unwrap();
    writeln!(bad, "window 6").unwrap();
    let out = wittx(&["--config", bad.path().to_str().unwrap(), "solve", "h2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn table_formats_agree() {
    let args = [
        "tables",
        "--algebra",
        "wb",
        "--lambda",
        "1,inf",
        "--window",
        "6",
    ];
    let md = wittx(&args);
    assert!(md.status.success());
    assert!(stdout_of(&md).contains("| W_B(lambda) | lambda=1 | 3 | 3 | 2 | 3/3/2 | ok |"));

    let mut csv_args = args.to_vec();
    csv_args.extend(["--format", "csv"]);
    let csv = wittx(&csv_args);
    assert!(stdout_of(&csv)
        .lines()
        .any(|l| l == "W_B(lambda),\"lambda=1\",3,3,2,3,3,2,ok"));

    let mut json_args = args.to_vec();
    json_args.extend(["--format", "json"]);
    let json = wittx(&json_args);
    let report: serde_json::Value = serde_json::from_slice(&json.stdout).unwrap();
    assert_eq!(report["rows"].as_array().unwrap().len(), 2);
    assert_eq!(report["all_match"], true);
}

#[test]
fn tables_are_byte_deterministic() {
    let args = [
        "tables",
        "--algebra",
        "wa",
        "--window",
        "6",
        "--format",
        "json",
    ];
    assert_eq!(wittx(&args).stdout, wittx(&args).stdout);
}
