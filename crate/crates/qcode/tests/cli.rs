use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

const DESIGN256: &str = r#"{"n": 4, "p": 3, "V": [[1, 1, 2], [1, 2, 1], [1, 3, 3], [2, 1, 3]]}"#;

fn qcode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qcode"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json output")
}

fn write(dir: &Path, name: &str, body: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, body).unwrap();
    p.to_string_lossy().into_owned()
}

#[test]
fn construct_design256() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "g.json", DESIGN256);
    let output = dir.path().join("d.txt");
    let out = qcode(&[
        "construct",
        "--input",
        &input,
        "--output",
        output.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(
        String::from_utf8_lossy(&out.stdout).trim(),
        "runs=256 factors=14"
    );
    let text = fs::read_to_string(&output).unwrap();
    assert_eq!(text.lines().next(), Some("runs=256 factors=14"));
    assert_eq!(text.lines().count(), 257);
}

#[test]
fn construct_trivial_generator() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "g.json", r#"{"n": 1, "p": 1, "V": [[0]]}"#);
    let out = qcode(&["construct", "--input", &input]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout).into_owned();
    assert_eq!(text.lines().next(), Some("runs=4 factors=4"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn malformed_input_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "g.json", "{\"n\": 4,\n \"p\": ");
    let out = qcode(&["construct", "--input", &input]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));
}

#[test]
fn analyze_both_on_design256() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(dir.path(), "g.json", DESIGN256);
    let v = json(&qcode(&["analyze", "--input", &input, "--method", "both"]));
    assert_eq!(v["resolution"], "13/2");
    assert_eq!(v["runs"], 256);
    assert_eq!(v["A"], serde_json::json!([3, 3, 3, 2, 2, 2, 1]));
    assert_eq!(v["spectrum"].as_array().unwrap().len(), 3);
}

#[test]
fn construct_then_analyze_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "g.json",
        r#"{"n": 3, "p": 2, "V": [[1, 1], [1, 2], [3, 0]]}"#,
    );
    let design = dir.path().join("d.txt");
    assert!(qcode(&[
        "construct",
        "--input",
        &input,
        "--output",
        design.to_str().unwrap()
    ])
    .status
    .success());
    let direct = json(&qcode(&[
        "analyze",
        "--input",
        &input,
        "--method",
        "bruteforce",
    ]));
    let via_file = json(&qcode(&["analyze", "--input", design.to_str().unwrap()]));
    for key in ["spectrum", "gwlp", "resolution", "runs", "factors"] {
        assert_eq!(direct[key], via_file[key], "{}", key);
    }
}

#[test]
fn theory_precondition_failure_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let input = write(
        dir.path(),
        "g.json",
        r#"{"n": 2, "p": 3, "V": [[1, 1, 0], [1, 3, 2]]}"#,
    );
    let out = qcode(&["analyze", "--input", &input, "--method", "theory"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("precondition"));
}

#[test]
fn budget_guard_exits_3() {
    let out = qcode(&["search", "--n", "12", "--p", "3"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn matrices_p1() {
    let v = json(&qcode(&["matrices", "--p", "1"]));
    assert_eq!(v["C"], serde_json::json!([[0, 1, 2, 1], [0, 2, 0, 2]]));
    assert_eq!(v["B"], serde_json::json!([[0, 1, 0, 1]]));
}

#[test]
fn verify_all() {
    let out = qcode(&["verify", "--format", "text"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(!text.contains("[FAIL]"));
    assert!(text.contains("extension"));
}

#[test]
fn search_is_byte_identical() {
    let args = [
        "search",
        "--n",
        "2",
        "--p",
        "1",
        "--criterion",
        "max-resolution",
    ];
    let a = qcode(&args);
    let b = qcode(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert!(v[0]["witness_V"].is_array());
}

#[test]
fn extend_design256() {
    let dir = tempfile::tempdir().unwrap();
    let mut f = vec![0u32; 64];
    for c in [22, 25, 31, 39] {
        f[c] = 1;
    }
    let input = write(dir.path(), "f.json", &serde_json::to_string(&f).unwrap());
    let v = json(&qcode(&["extend", "--input", &input, "--t", "1"]));
    assert_eq!(v["r"], 70);
    assert_eq!(v["rho_exponent"], 17);
    assert_eq!(v["resolution_decimal"], "70.9999924");
}
