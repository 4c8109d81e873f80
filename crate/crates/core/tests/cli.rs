use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nichols-ext"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).env("RUST_BACKTRACE", "0").output().expect("binary runs")
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = args.to_vec();
    all.extend(["--json", "-", "--deterministic"]);
    let out = run(&all);
    let v = serde_json::from_slice(&out.stdout).expect("json on stdout");
    (out.status.code().unwrap(), v)
}

fn statuses(v: &Value) -> Vec<(String, String)> {
    v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| (c["name"].as_str().unwrap().to_string(), c["status"].as_str().unwrap().to_string()))
        .collect()
}

#[test]
fn info_reports_dimension() {
    let (code, v) = json(&["info", "--N", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["config"]["N"], 3);
    assert!(v["checks"][0]["details"].as_str().unwrap().contains("dim R = 27"));
    let (code, v) = json(&["info", "--N", "2"]);
    assert_eq!(code, 0);
    assert!(v["checks"][0]["details"].as_str().unwrap().contains("dim R = 8"));
}

#[test]
fn configuration_errors_exit_2() {
    for args in [
        &["info", "--N", "4"][..],
        &["info", "--N", "3", "--field", "cyclotomic:2"],
        &["info", "--N", "3", "--field", "fp:9:3"],
        &["info", "--N", "3", "--mode", "sideways"],
        &["info", "--N", "2", "--mode", "graded"],
        &["verify", "--N", "3", "--suite", "nonsense"],
        &["verify", "--N", "3", "--convention", "up"],
        &["ext-dims", "--N", "3", "--n-max", "0"],
        &["frobnicate"],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty());
    }
}

#[test]
fn bad_root_order_suggests_a_field() {
    let out = run(&["info", "--N", "5", "--field", "cyclotomic:3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("smallest admissible L is 5"));
}

#[test]
fn ext_dims_tables() {
    let (code, v) = json(&["ext-dims", "--N", "3"]);
    assert_eq!(code, 0);
    assert_eq!(v["ext_dims"], serde_json::json!([1, 2, 5, 7, 12, 15, 22, 26, 35]));
    let (code, v) = json(&["ext-dims", "--N", "2"]);
    assert_eq!(code, 0);
    assert_eq!(v["ext_dims"], serde_json::json!([1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11]));
    let (code, v) = json(&["ext-dims", "--N", "3", "--mode", "graded", "--n-max", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["ext_dims"], serde_json::json!([1, 3, 6, 10, 15, 21, 28]));
}

#[test]
fn verify_all_passes_for_n3() {
    let (code, v) = json(&["verify", "--N", "3"]);
    assert_eq!(code, 0, "{v}");
    assert!(statuses(&v).iter().all(|(_, s)| s != "fail"));
}

#[test]
fn verify_relations_for_n5() {
    let (code, v) = json(&["verify", "--N", "5", "--suite", "relations"]);
    assert_eq!(code, 0, "{v}");
    let names: Vec<String> = statuses(&v).into_iter().map(|(n, _)| n).collect();
    assert_eq!(names, ["relations.presentation", "relations.nilpotency"]);
}

#[test]
fn opposite_convention_reports_the_validating_one() {
    let (code, v) = json(&["verify", "--N", "5", "--suite", "relations", "--convention", "right"]);
    assert_eq!(code, 1);
    let details = v["checks"][0]["details"].as_str().unwrap();
    assert!(details.contains("holds under left"), "{details}");
}

#[test]
fn json_is_byte_stable_and_matches_text() {
    let args = ["verify", "--N", "3", "--n-max", "5", "--json", "-", "--deterministic"];
    let a = run(&args);
    let b = run(&args);
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    let text = run(&["verify", "--N", "3", "--n-max", "5"]);
    let text = String::from_utf8(text.stdout).unwrap();
    for (name, status) in statuses(&v) {
        let line = text.lines().find(|l| l.split_whitespace().nth(1) == Some(&format!("{name}:"))).unwrap();
        assert!(line.starts_with(&status.to_uppercase()), "{line} vs {status}");
    }
}

#[test]
fn json_file_output() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = run(&["ext-dims", "--N", "5", "--json", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["ext_dims"], serde_json::json!([1, 2, 5, 7, 12, 15, 22]));
    assert!(String::from_utf8(out.stdout).unwrap().contains("ext_dims: [1, 2, 5, 7, 12, 15, 22]"));
}

fn write_complex(dir: &Path, args: &[&str]) -> std::path::PathBuf {
    let path = dir.join("complex.json");
    let mut all = vec!["complex", "--output", path.to_str().unwrap()];
    all.extend(args);
    assert_eq!(run(&all).status.code(), Some(0));
    path
}

#[test]
fn stored_complex_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_complex(dir.path(), &["--N", "3", "--n-max", "4"]);
    let (code, v) = json(&["verify", "--N", "3", "--n-max", "4", "--complex", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{v}");
    assert_eq!(v["ext_dims"], serde_json::json!([1, 2, 5, 7, 12]));
}

#[test]
fn mutated_differential_fails() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_complex(dir.path(), &["--N", "3", "--n-max", "4"]);
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    // perturb one entry of the second differential
    let entry = &mut doc["differentials"][1][1][0];
    let old = entry.as_str().unwrap().to_string();
    *entry = Value::String(format!("{old} + x2"));
    std::fs::write(&path, doc.to_string()).unwrap();
    let (code, v) = json(&["verify", "--N", "3", "--n-max", "4", "--suite", "complex", "--complex", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    let checks = statuses(&v);
    assert!(checks.contains(&("complex.d_squared".into(), "fail".into())), "{checks:?}");
}

#[test]
fn segment_export() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_complex(dir.path(), &["--N", "3", "--kind", "segment"]);
    let doc: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["ranks"], serde_json::json!([1, 2, 5, 7, 12]));
    assert_eq!(doc["minimal"], true);
}
