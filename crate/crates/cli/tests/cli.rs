use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_clf"))
        .args(args)
        .output()
        .expect("spawn clf")
}

fn json(args: &[&str]) -> Value {
    let out = run(&[args, &["--format", "json"]].concat());
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).unwrap()
}

fn col(env: &Value, name: &str) -> Vec<Value> {
    env["rows"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r[name].clone())
        .collect()
}

fn strs(v: &[&str]) -> Vec<Value> {
    v.iter().map(|&s| s.into()).collect()
}

#[test]
fn seq_columns() {
    let env = json(&["seq", "--n-max", "2"]);
    assert_eq!(env["command"], "seq");
    assert_eq!(env["parameters"]["n_max"], 2);
    assert_eq!(col(&env, "f_n"), strs(&["1", "2", "20/9"]));
    assert_eq!(col(&env, "F_n"), strs(&["1", "1", "5/8"]));
    let keys: Vec<&String> = env["rows"][0].as_object().unwrap().keys().collect();
    assert_eq!(keys, ["n", "P_n", "f_n", "f_n_dec20", "F_n"]);
}

#[test]
fn coeffs_examples() {
    let env = json(&["coeffs", "--order", "2", "--which", "Ck"]);
    assert_eq!(col(&env, "C_k_over_pi"), strs(&["1/2", "0", "1/8"]));
    let env = json(&["coeffs", "--order", "0", "--which", "ck"]);
    assert_eq!(env["rows"][0]["c_k"], serde_json::json!({"0": "1"}));
    let env = json(&["coeffs", "--order", "3", "--which", "gamma"]);
    assert_eq!(
        col(&env, "gamma_k"),
        strs(&["1", "1/8", "1/128", "-5/1024"])
    );
}

#[test]
fn ck_beyond_five_is_allowed() {
    let env = json(&["coeffs", "--order", "7", "--which", "Ck"]);
    assert_eq!(env["rows"].as_array().unwrap().len(), 8);
}

#[test]
fn remainder_examples() {
    let env = json(&["remainder", "--order", "0", "--n-list", "100"]);
    let scaled = env["rows"][0]["scaled_remainder"].as_f64().unwrap();
    assert!((scaled - 0.5).abs() < 0.02, "{scaled}");

    let env = json(&["remainder", "--order", "5", "--n-list", "64,128"]);
    let est = env["rows"][0]["order_estimate"].as_f64().unwrap();
    assert!((est - 6.0).abs() < 0.5, "{est}");

    let env = json(&["remainder", "--order", "1", "--n-list", "2"]);
    assert!(env["rows"][0]["remainder"].as_f64().unwrap().is_finite());
}

#[test]
fn f_reports_every_route() {
    let env = json(&["f", "--n", "3"]);
    assert_eq!(env["rows"].as_array().unwrap().len(), 8);
    assert_eq!(env["rows"][0]["value"], "56/25");
    let env = json(&["f", "--n", "3", "--method", "quad2d", "--method", "p4"]);
    assert_eq!(col(&env, "method"), strs(&["p4", "quad2d"]));
    assert!(env["rows"][1]["rel_discrepancy"].as_f64().unwrap() < 1e-10);
}

#[test]
fn validate_exit_codes() {
    assert_eq!(
        run(&["validate", "--n-max", "0", "--tol", "1e-10"])
            .status
            .code(),
        Some(0)
    );
    assert_eq!(
        run(&["validate", "--n-max", "20", "--tol", "1e-8"])
            .status
            .code(),
        Some(0)
    );
    let out = run(&[
        "validate", "--n-max", "40", "--tol", "1e-15", "--format", "json",
    ]);
    assert_eq!(out.status.code(), Some(1));
    // the report is still written in full
    let env: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(env["rows"].as_array().unwrap().len(), 41 * 8);
}

#[test]
fn validate_rows_are_ordered_and_n_zero_does_not_crash() {
    let env = json(&["validate", "--n-max", "6", "--method", "saddle"]);
    let n: Vec<u64> = col(&env, "n").iter().map(|v| v.as_u64().unwrap()).collect();
    assert_eq!(n, (0..=6).collect::<Vec<_>>());
    assert_eq!(env["rows"][0]["status"], "unchecked");
    assert!(env["rows"][0]["error"].is_string());
    assert_eq!(env["rows"][1]["status"], "pass");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["coeffs", "--order", "6", "--which", "final"][..],
        &["remainder", "--order", "6", "--n-list", "10"],
        &["remainder", "--order", "1", "--n-list", "1"],
        &["seq"],
        &["f", "--n", "3", "--method", "simpson"],
        &["coeffs", "--order", "2", "--which", "CK"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn output_is_deterministic() {
    for format in ["json", "csv", "pretty"] {
        let args = ["validate", "--n-max", "12", "--format", format];
        assert_eq!(run(&args).stdout, run(&args).stdout, "{format}");
    }
}

#[test]
fn json_roundtrips_byte_identically() {
    for args in [
        &["seq", "--n-max", "5"][..],
        &["coeffs", "--order", "4", "--which", "ck"],
        &["validate", "--n-max", "4"],
        &["remainder", "--order", "3", "--n-list", "10,20"],
    ] {
        let out = run(&[args, &["--format", "json"]].concat());
        let text = String::from_utf8(out.stdout).unwrap();
        let parsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(
            serde_json::to_string_pretty(&parsed).unwrap() + "\n",
            text,
            "{args:?}"
        );
    }
}

#[test]
fn csv_has_header_and_quotes_maps() {
    let out = run(&["coeffs", "--order", "1", "--which", "ck", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    assert_eq!(reader.headers().unwrap(), vec!["k", "c_k"]);
    let rows: Vec<csv::StringRecord> = reader.records().map(Result::unwrap).collect();
    assert_eq!(&rows[1][1], r#"{"0":"-1/2","2":"4","4":"-4"}"#);
}
