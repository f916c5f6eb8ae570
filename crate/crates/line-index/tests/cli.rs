//! End-to-end tests of the binary: exit codes, output determinism, and
//! the DOT export.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_line-index"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn json_report_total() {
    let out = run(&["x*y + y^4 + z^2", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["rho"]["total"], "2");
}

#[test]
fn json_is_byte_identical_across_runs() {
    let a = run(&["x^2 + y^3 + z^7 + x*y*z", "--format", "json"]);
    let b = run(&["x^2 + y^3 + z^7 + x*y*z", "--format", "json"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn catalog_tpqr_with_dot_output() {
    let dir = std::env::temp_dir().join("line-index-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let dot_path = dir.join("t237.dot");
    let out = run(&[
        "--catalog",
        "tpqr",
        "2",
        "3",
        "7",
        "--dot",
        dot_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    for needle in ["(11,7,3)", "(7,5,2)", "(3,2,1)"] {
        assert!(text.contains(needle), "missing {needle} in:\n{text}");
    }
    let dot = std::fs::read_to_string(&dot_path).unwrap();
    assert!(dot.starts_with("graph resolution {"));
    assert!(dot.contains("E_3_2_1_c0"));
}

#[test]
fn structured_input_file() {
    let dir = std::env::temp_dir().join("line-index-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("terms.json");
    std::fs::write(
        &path,
        r#"[{"exp": [1, 1, 0], "coef": "1"},
           {"exp": [0, 4, 0], "coef": "1"},
           {"exp": [0, 0, 2], "coef": "-1/1"}]"#,
    )
    .unwrap();
    let out = run(&["--input", path.to_str().unwrap(), "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["rho"]["total"], "2");
}

#[test]
fn oracle_mode_suppresses_closed_form_warnings() {
    let with = run(&["--catalog", "tpqr", "2", "3", "7"]);
    let without = run(&["--catalog", "tpqr", "2", "3", "7", "--oracle"]);
    assert!(with.status.success() && without.status.success());
    assert!(stdout(&with).contains("warning:"));
    assert!(!stdout(&without).contains("warning:"));
}

#[test]
fn exit_code_parse_error() {
    assert_eq!(run(&["x + x"]).status.code(), Some(2));
    assert_eq!(run(&["x^2 + @"]).status.code(), Some(2));
    assert_eq!(run(&["--catalog", "nope", "2"]).status.code(), Some(2));
}

#[test]
fn exit_code_no_compact_facet() {
    // A Newton boundary with no 2-dimensional compact face.
    assert_eq!(run(&["x*y + z^4"]).status.code(), Some(3));
}

#[test]
fn exit_code_not_isolated() {
    // The x axis lies in the surface but no monomial x^a*z_j is present.
    assert_eq!(run(&["x*y^2 + y^3 + z^3"]).status.code(), Some(4));
}

#[test]
fn family_without_compact_face_reports_known_value() {
    let out = run(&["--catalog", "xvi", "5", "--format", "json"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["total"], "4");
}

#[test]
fn rejects_multiple_input_sources() {
    let out = run(&["x^2 + y^2 + z^2", "--catalog", "tpqr", "2", "3", "7"]);
    assert!(!out.status.success());
}
