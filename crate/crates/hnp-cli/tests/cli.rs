//! End-to-end tests against the compiled binary: flag parsing, the JSON
//! input schema, output round-trips, and exit-code conventions
//! (0 success, 1 domain error, 2 usage error).

use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn hnp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hnp"))
        .args(args)
        .env_remove("HNP_ORACLE_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 output")
}

fn json_result(out: &Output) -> Value {
    let v: Value = serde_json::from_str(stdout(out).trim()).expect("valid JSON");
    assert_eq!(v["schema"], "hnp/1");
    v["result"].clone()
}

#[test]
fn decide_matches_documented_scenario() {
    let out = hnp(&[
        "decide",
        "--ambient",
        "A4",
        "--H",
        "(1,2)(3,4)",
        "--ramified",
        "[(1,2)(3,4),(1,3)(2,4)]",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let r = json_result(&out);
    assert_eq!(r["knot"]["name"], "0");
    assert_eq!(r["h1"]["name"], "Z/2");
    assert_eq!(r["wa_defect"]["name"], "Z/2");
    assert!(r["rule_trace"].as_array().unwrap().len() > 0);
}

#[test]
fn fgh_a12_is_z3_quickly() {
    let start = std::time::Instant::now();
    let out = hnp(&[
        "fgh",
        "--ambient",
        "A12",
        "--H",
        "(1,2,3)(4,5,6,7,8,9,10,11,12)",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "Z/3");
    assert!(start.elapsed().as_secs() < 10);
}

#[test]
fn tables_a4_match_and_exit_zero() {
    let out = hnp(&["tables", "a4", "--format", "json"]);
    assert!(out.status.success());
    let r = json_result(&out);
    assert_eq!(r["matches"], true);
    assert_eq!(r["tables"][0]["rows"].as_array().unwrap().len(), 4);
}

#[test]
fn json_output_round_trips() {
    let out = hnp(&[
        "decide",
        "--ambient",
        "S4",
        "--H",
        "(1,2,3,4)",
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let v: Value = serde_json::from_str(text.trim()).unwrap();
    let rerendered = serde_json::to_string(&v).unwrap();
    let v2: Value = serde_json::from_str(&rerendered).unwrap();
    assert_eq!(v, v2);
}

#[test]
fn input_file_schema() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{
            "ambient": {{"n": 4, "kind": "A"}},
            "H": {{"generators": ["(1,2)(3,4)"]}},
            "ramified": [{{"generators": ["(1,2)(3,4)", "(1,3)(2,4)"]}}]
        }}"#
    )
    .unwrap();
    let out = hnp(&[
        "knot",
        "--input",
        f.path().to_str().unwrap(),
        "--format",
        "json",
    ]);
    assert!(out.status.success());
    assert_eq!(json_result(&out)["name"], "0");
}

#[test]
fn input_file_with_explicit_ambient() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{
            "ambient": {{"generators": ["(1,2,3,4)", "(1,3)"], "degree": 4}},
            "H": {{"generators": ["(1,3)"]}}
        }}"#
    )
    .unwrap();
    let out = hnp(&["fgh", "--input", f.path().to_str().unwrap()]);
    assert!(out.status.success(), "{:?}", out);
}

#[test]
fn schema_errors_carry_json_pointers() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(f, r#"{{"ambient": {{"n": 4, "kind": "X"}}, "H": {{}}}}"#).unwrap();
    let out = hnp(&["knot", "--input", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("/ambient/kind"), "{}", err);
}

#[test]
fn exit_codes() {
    // Usage error: unknown subcommand.
    let out = hnp(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    // Usage error: malformed permutation.
    let out = hnp(&["fgh", "--ambient", "S4", "--H", "(1,2"]);
    assert_eq!(out.status.code(), Some(2));
    // Domain error: odd permutation inside an alternating ambient.
    let out = hnp(&["fgh", "--ambient", "A4", "--H", "(1,2)"]);
    assert_eq!(out.status.code(), Some(1));
    // Success.
    let out = hnp(&["fgh", "--ambient", "S4", "--H", "(1,2)"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn census_degree_three() {
    let out = hnp(&["census", "3", "--format", "json"]);
    assert!(out.status.success());
    let r = json_result(&out);
    let entries = r["entries"].as_array().unwrap();
    assert_eq!(entries.len(), 2);
    for e in entries {
        assert_eq!(e["verdict"], true);
    }
}

#[test]
fn oracle_and_budget_override() {
    let out = hnp(&["oracle", "--ambient", "A4", "--H", ""]);
    assert!(out.status.success());
    assert_eq!(stdout(&out).trim(), "Z/2");
    let out = Command::new(env!("CARGO_BIN_EXE_hnp"))
        .args(["oracle", "--ambient", "A4", "--H", ""])
        .env("HNP_ORACLE_BUDGET", "10")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn examples_lists_constructions() {
    let out = hnp(&["examples"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("F(S_12"));
    assert!(text.contains("n = 12"));
    assert!(text.contains("n = 13"));
}
