//! End-to-end tests of the `conformal` binary: documented invocations,
//! output schema, determinism, and exit codes.

use std::process::{Command, Output};

use serde_json::Value;

fn conformal(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_conformal"))
        .args(args)
        .output()
        .expect("failed to launch the binary")
}

fn json_stdout(output: &Output) -> Value {
    assert!(
        output.status.success(),
        "command failed: {}\n{}",
        output.status,
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout should be one JSON record")
}

fn row_strings(record: &Value) -> Vec<String> {
    record["results"]["row"]
        .as_array()
        .expect("row array")
        .iter()
        .map(|v| v.as_str().expect("counts are strings").to_string())
        .collect()
}

#[test]
fn partition_rows_and_values() {
    let record = json_stdout(&conformal(&[
        "partition",
        "--n",
        "2",
        "--m",
        "2",
        "--method",
        "gauss",
    ]));
    assert_eq!(record["schema"], 1);
    assert_eq!(record["command"], "partition");
    assert_eq!(row_strings(&record), vec!["1", "1", "2", "1", "1"]);

    let record = json_stdout(&conformal(&["partition", "--n", "1", "--m", "1"]));
    assert_eq!(row_strings(&record), vec!["1", "1"]);

    // the middle coefficient of the (3, 4) polynomial via the Toeplitz route
    let record = json_stdout(&conformal(&[
        "partition",
        "--n",
        "3",
        "--m",
        "4",
        "--s",
        "6",
        "--method",
        "toeplitz",
    ]));
    assert_eq!(record["results"]["value"], "5");

    // closed method carries the regime tag
    let record = json_stdout(&conformal(&[
        "partition",
        "--n",
        "2",
        "--m",
        "4",
        "--s",
        "8",
        "--method",
        "closed",
    ]));
    assert_eq!(record["results"]["value"], "1");
    assert!(record["results"]["regime"].is_string());
}

#[test]
fn partition_methods_agree_per_row() {
    let mut rows = Vec::new();
    for method in ["dp", "oracle", "gauss", "toeplitz", "closed"] {
        let record = json_stdout(&conformal(&[
            "partition",
            "--n",
            "4",
            "--m",
            "3",
            "--method",
            method,
        ]));
        rows.push(row_strings(&record));
    }
    for row in &rows[1..] {
        assert_eq!(row, &rows[0]);
    }
}

#[test]
fn gauss_products() {
    let record = json_stdout(&conformal(&["gauss", "--pairs", "2,1,2,1"]));
    assert_eq!(row_strings(&record), vec!["1", "2", "3", "2", "1"]);
    let record = json_stdout(&conformal(&["gauss", "--n", "2", "--m", "2"]));
    assert_eq!(record["results"]["order"], 4);
}

#[test]
fn mu_indices() {
    let record = json_stdout(&conformal(&[
        "mu",
        "--n",
        "4",
        "--m",
        "2",
        "--check-symbolic",
    ]));
    assert_eq!(record["results"]["r"], "9");
    assert_eq!(record["results"]["s"], "6");
    assert_eq!(record["results"]["q"], "3");
    assert_eq!(record["results"]["symbolic_r"], "9");

    let record = json_stdout(&conformal(&["mu", "--n", "1", "--m", "5"]));
    assert_eq!(record["results"]["r"], "3");
    assert_eq!(record["results"]["s"], "3");

    let record = json_stdout(&conformal(&["mu", "--pairs", "2,1,2,1"]));
    assert_eq!(record["results"]["r"], "5");
    assert_eq!(record["results"]["s"], "4");
}

#[test]
fn roots_examples() {
    let record = json_stdout(&conformal(&["roots", "--n", "2", "--x", "1,4"]));
    let lambda = record["results"]["lambda"].as_f64().unwrap();
    assert!((lambda - 2.0).abs() < 1e-10);
    assert_eq!(record["results"]["duality"]["pass"], true);

    let record = json_stdout(&conformal(&["roots", "--n", "3", "--x", "1,1,1"]));
    assert!((record["results"]["lambda"].as_f64().unwrap() - 1.0).abs() < 1e-12);

    let record = json_stdout(&conformal(&[
        "roots",
        "--n",
        "4",
        "--m",
        "2",
        "--x",
        "1,4,2,2",
        "--coeffs",
        "random:11",
    ]));
    assert!((record["results"]["lambda"].as_f64().unwrap() - 2.0).abs() < 1e-9);
    assert_eq!(record["results"]["pairing_condition"], true);
    let enhanced = record["results"]["bounds_enhanced"].as_array().unwrap();
    assert!(enhanced[0].as_f64().unwrap() <= enhanced[1].as_f64().unwrap());
}

#[test]
fn groups_catalog() {
    let record = json_stdout(&conformal(&["groups"]));
    let groups = record["results"]["groups"].as_array().unwrap();
    assert!(groups.len() >= 10);
    let h3 = groups.iter().find(|g| g["name"] == "H_3").unwrap();
    assert_eq!(h3["admits"], false);
    assert_eq!(h3["duality_holds"], false);
    let record = json_stdout(&conformal(&["groups", "--name", "B_n", "--param", "3"]));
    assert_eq!(
        record["results"]["groups"][0]["degrees"],
        serde_json::json!([2, 4, 6])
    );
}

#[test]
fn selfdual_pipeline() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("p.json");
    let q = dir.path().join("q.json");
    let product = dir.path().join("pq.json");

    let out = conformal(&[
        "selfdual",
        "build",
        "--n",
        "2",
        "--m",
        "1",
        "--kind",
        "skew",
        "--coeffs",
        "monic",
        "--out",
        p.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = conformal(&[
        "selfdual",
        "build",
        "--n",
        "2",
        "--m",
        "2",
        "--kind",
        "skew",
        "--coeffs",
        "random:5",
        "--out",
        q.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let out = conformal(&[
        "selfdual",
        "multiply",
        "--lhs",
        p.to_str().unwrap(),
        "--rhs",
        q.to_str().unwrap(),
        "--out",
        product.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let value: Value = serde_json::from_str(&std::fs::read_to_string(&product).unwrap()).unwrap();
    // skew times skew is reciprocal with added order
    assert_eq!(value["kind"], "reciprocal");
    assert_eq!(value["m"], 3);

    let out = conformal(&["selfdual", "print", "--file", product.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("reciprocal polynomial"));

    let record = json_stdout(&conformal(&[
        "selfdual",
        "dualcheck",
        "--n",
        "2",
        "--m",
        "1",
        "--kind",
        "skew",
        "--x",
        "1,4",
        "--lambda",
        "3",
    ]));
    assert_eq!(record["results"]["pass"], true);
}

#[test]
fn verify_suites() {
    let out = conformal(&["verify", "--suite", "groups"]);
    assert!(out.status.success());
    let record: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(record["results"]["pass"], true);
    // the summary table goes to stderr
    assert!(String::from_utf8_lossy(&out.stderr).contains("PASS"));

    let out = conformal(&[
        "verify",
        "--suite",
        "partitions",
        "--max-n",
        "4",
        "--max-m",
        "4",
    ]);
    assert!(out.status.success());
}

#[test]
fn deterministic_output_modulo_timing() {
    let mut records: Vec<Value> = Vec::new();
    for _ in 0..2 {
        let mut record = json_stdout(&conformal(&[
            "roots",
            "--n",
            "3",
            "--m",
            "2",
            "--x",
            "1,2,4",
            "--coeffs",
            "random:99",
        ]));
        record.as_object_mut().unwrap().remove("elapsed_ms");
        records.push(record);
    }
    assert_eq!(records[0], records[1]);
}

#[test]
fn counts_round_trip_exactly() {
    // a coefficient beyond 2^53: C(34+34, 34) = 28453041475240576740
    let record = json_stdout(&conformal(&["mu", "--n", "34", "--m", "34"]));
    let r: &str = record["results"]["r"].as_str().unwrap();
    let s: &str = record["results"]["s"].as_str().unwrap();
    let q: &str = record["results"]["q"].as_str().unwrap();
    let to_big = |t: &str| t.parse::<u128>().unwrap();
    assert_eq!(to_big(r) + to_big(s), 28453041475240576740u128);
    assert_eq!(to_big(r) - to_big(s), to_big(q));
}

#[test]
fn csv_format() {
    let out = conformal(&["--format", "csv", "partition", "--n", "2", "--m", "2"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("key,value\n"));
    assert!(text.contains("results.row[2],2"));
}

#[test]
fn exit_codes() {
    // usage error
    let out = conformal(&["partition", "--n", "2"]);
    assert_eq!(out.status.code(), Some(1));
    // unknown suite counts as usage
    let out = conformal(&["verify", "--suite", "bogus"]);
    assert_eq!(out.status.code(), Some(1));
    // resource ceiling from the environment override
    let out = Command::new(env!("CARGO_BIN_EXE_conformal"))
        .args([
            "partition",
            "--n",
            "8",
            "--m",
            "8",
            "--s",
            "32",
            "--method",
            "oracle",
        ])
        .env("CONFORMAL_ORACLE_CEILING", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
    // and the same call passes with the default ceiling
    let out = conformal(&[
        "partition",
        "--n",
        "8",
        "--m",
        "8",
        "--s",
        "32",
        "--method",
        "oracle",
    ]);
    assert_eq!(out.status.code(), Some(0));
}
