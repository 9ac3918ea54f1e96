//! End-to-end tests of the `dualis` binary.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::{json, Value};
use tempfile::TempDir;

fn dualis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dualis")).args(args).output().expect("binary runs")
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let path = dir.path().join(name);
    std::fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

const ONE_ARROW: &str = r#"{
    "objects": {
        "Q": {"type": "quiver", "vertices": ["1", "2"], "arrows": [["1", "2", "a"]]},
        "A": {"type": "algebra", "dim": 2, "mult": [[0, 0, 1, "1"]]},
        "C": {"type": "coalgebra", "dim": 1, "comult": [[0, 0, 0, "2"]]}
    },
    "checks": [{"check": "verify_pathdual_iso", "objects": ["Q"]}]
}"#;

#[test]
fn run_passes_and_writes_report() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "spec.json", ONE_ARROW);
    let report = dir.path().join("report.json");
    let out = dualis(&["run", s(&spec), "--out", s(&report)]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("[PASS] #0 pathdual-iso(Q)"), "{text}");

    let json_out = dualis(&["run", s(&spec), "--json"]);
    assert_eq!(json_out.status.code(), Some(0));
    assert_eq!(std::fs::read(&report).unwrap(), json_out.stdout);
    let v = stdout_json(&json_out);
    assert_eq!(v["schema"], json!("dualis-report/1"));
    assert_eq!(v["checks"][0]["iso"]["rows"], json!(3));
}

#[test]
fn failing_check_exits_one_with_replay() {
    let dir = TempDir::new().unwrap();
    let spec = write(
        &dir,
        "spec.json",
        r#"{"objects": {"L": {"type": "quiver-template", "kind": "integer-line", "radius": 3}},
            "checks": [{"check": "semiperfect", "objects": ["L"], "params": {"side": "right", "expect": "holds"}}]}"#,
    );
    let out = dualis(&["run", s(&spec), "--json"]);
    assert_eq!(out.status.code(), Some(1));
    let v = stdout_json(&out);
    let replay = v["checks"][0]["replay"].clone();
    let again = write(&dir, "replay.json", &replay.to_string());
    assert_eq!(dualis(&["run", s(&again)]).status.code(), Some(1));
}

#[test]
fn input_errors_exit_two() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.json", "{\n  \"objects\": [\n}");
    let out = dualis(&["run", s(&bad)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2, column 13"));

    let missing = write(&dir, "missing.json", r#"{"checks": [{"check": "pathdual-iso", "objects": ["Nowhere"]}]}"#);
    let out = dualis(&["run", s(&missing)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("Nowhere"));

    let unknown = write(&dir, "unknown.json", r#"{"objects": {"Q": {"type": "quiver", "vertices": []}}, "checks": [{"check": "nope", "objects": ["Q"]}]}"#);
    assert_eq!(dualis(&["run", s(&unknown)]).status.code(), Some(2));
    assert_eq!(dualis(&["run", s(&dir.path().join("absent.json"))]).status.code(), Some(2));
    assert_eq!(dualis(&["suite", "no-such-suite"]).status.code(), Some(2));
    assert_ne!(dualis(&["--field", "fp:4", "suite", "randomized"]).status.code(), Some(0));
}

#[test]
fn empty_spec_passes() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "empty.json", r#"{"objects": {}, "checks": []}"#);
    let out = dualis(&["run", s(&spec), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["total"], json!(0));
}

#[test]
fn constructions_round_trip() {
    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "spec.json", ONE_ARROW);
    let unital = stdout_json(&dualis(&["unitalize", s(&spec), "A"]));
    assert_eq!(unital["dim"], json!(3));
    let counital = stdout_json(&dualis(&["counitalize", s(&spec), "C"]));
    let dual = stdout_json(&dualis(&["dualize", s(&spec), "Q"]));
    assert_eq!(dual["dim"], json!(3));
    let doc = json!({
        "objects": {"A1": unital, "C1": counital, "KQ": dual},
        "checks": [
            {"check": "algebra-axioms", "objects": ["A1"]},
            {"check": "coalgebra-axioms", "objects": ["C1"]},
            {"check": "coalgebra-axioms", "objects": ["KQ"]}
        ]
    });
    let again = write(&dir, "again.json", &doc.to_string());
    let out = dualis(&["run", s(&again), "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["checks"][0]["unital"], json!(true));
    assert_eq!(v["checks"][1]["counital"], json!(true));
    assert_eq!(dualis(&["unitalize", s(&spec), "C"]).status.code(), Some(2));
}

#[test]
fn semiperfect_and_coreflexive_verbs() {
    let out = dualis(&["semiperfect", "--template", "integer-line", "--radius", "3", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout_json(&out)["checks"][0]["verdict"],
        json!("left=fails-with-certificate,right=fails-with-certificate")
    );
    let out = dualis(&["semiperfect", "--template", "ray", "--side", "left", "--bound", "5", "--json"]);
    assert_eq!(stdout_json(&out)["checks"][0]["verdict"], json!("holds"));
    let out = dualis(&["coreflexive", "--template", "integer-line", "--radius", "2", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = stdout_json(&out);
    assert_eq!(v["checks"][0]["verdict"], json!("bijective"));
    assert_eq!(v["checks"][0]["kernel_rank"], json!(0));

    let dir = TempDir::new().unwrap();
    let spec = write(&dir, "spec.json", ONE_ARROW);
    let out = dualis(&["coreflexive", s(&spec), "Q", "--field", "fp:101", "--json"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(stdout_json(&out)["field"], json!("fp:101"));
}

#[test]
fn randomized_suite_knobs() {
    let out = dualis(&["suite", "randomized", "--seed", "1", "--dims", "4", "--trials", "50", "--json"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert_eq!(stdout_json(&out)["seed"], json!(1));
    let out = dualis(&["suite", "randomized", "--dims", "0"]);
    assert_eq!(out.status.code(), Some(0));
}
