//! End-to-end runs of the `linrel` binary.

use std::io::Write;
use std::process::{Command, Output};

use tempfile::NamedTempFile;

fn linrel(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linrel"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn write_document(text: &str) -> NamedTempFile {
    let mut file = NamedTempFile::new().expect("temp file");
    file.write_all(text.as_bytes()).expect("write document");
    file
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

#[test]
fn analyze_reports_the_identity_relation() {
    let doc = write_document(
        r#"{"type":"relation","space_dim":2,"generators":[
            {"x":["1","0"],"y":["1","0"]},
            {"x":["0","1"],"y":["0","1"]}]}"#,
    );
    let out = linrel(&["analyze", doc.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("relation on C^2 (graph dimension 2)"), "got: {text}");
    assert!(text.contains("dom 2  ran 2  ker 0  mul 0"), "got: {text}");
    assert!(text.contains("singular chain space: dim 0"), "got: {text}");
    assert!(text.contains("1  (root space dim 2)"), "got: {text}");
}

#[test]
fn analyze_json_reports_pencil_structure() {
    let doc = write_document(r#"{"type":"pencil","E":[["1","0"]],"F":[["0","1"]]}"#);
    let out = linrel(&["analyze", doc.path().to_str().unwrap(), "--json"]);
    assert!(out.status.success());
    let report: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(report["space_dim"], 1);
    assert_eq!(report["singular_chain_space"]["dim"], 1);
    assert_eq!(report["spectrum"]["full_spectrum_flag"], true);
    assert_eq!(report["kronecker"]["epsilon"], serde_json::json!([2]));
}

#[test]
fn kronecker_names_the_singular_block() {
    let doc = write_document(r#"{"type":"pencil","E":[["1","0"]],"F":[["0","1"]]}"#);
    let out = linrel(&["kronecker", doc.path().to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("epsilon = (2)"), "got: {text}");
    assert!(text.contains("dim R_c = 1"), "got: {text}");
}

#[test]
fn rootspace_accepts_the_point_at_infinity() {
    let doc = write_document(
        r#"{"type":"relation","space_dim":2,"generators":[{"x":["0","0"],"y":["1","0"]}]}"#,
    );
    let out = linrel(&["rootspace", "--lambda", "inf", doc.path().to_str().unwrap()]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("root space at inf: dim 1"), "got: {}", stdout(&out));
}

#[test]
fn malformed_scalar_is_an_input_error() {
    let doc = write_document(
        r#"{"type":"relation","space_dim":1,"generators":[{"x":["1"],"y":["1/0"]}]}"#,
    );
    let out = linrel(&["analyze", doc.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8(out.stderr).expect("utf-8 stderr");
    assert!(err.contains("generators[0].y[0]"), "got: {err}");
}

#[test]
fn missing_file_is_an_input_error() {
    let out = linrel(&["analyze", "/nonexistent/input.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_smoke_run_passes() {
    let out = linrel(&["verify", "--trials", "1", "--seed", "42"]);
    assert!(out.status.success());
    assert!(stdout(&out).trim_end().ends_with("all suites passed"));
}

#[test]
fn verify_json_summarizes_every_suite() {
    let out = linrel(&["verify", "--trials", "1", "--seed", "42", "--json"]);
    assert!(out.status.success());
    let summary: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(summary["passed"], true);
    assert_eq!(summary["suites"].as_array().expect("suite list").len(), 9);
}
