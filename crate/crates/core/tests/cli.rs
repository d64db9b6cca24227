use std::process::{Command, Output};

use foliahodge::model::{load_model, zoo};
use serde_json::Value;

fn fh(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_foliahodge")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = fh(args);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

#[test]
fn suite_passes_on_heisenberg() {
    let out = fh(&["suite", "zoo:heisenberg3"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("passed: yes"), "{text}");
}

#[test]
fn kodaira_thurston_fails_lefschetz_at_degree_one() {
    let v = json(&["lefschetz", "zoo:kodaira_thurston", "--json"]);
    let lef = &v["transverse_lefschetz"];
    assert_eq!(lef["max_s"], 0);
    assert_eq!(lef["hard_lefschetz"], false);
    assert_eq!(lef["per_degree"][1]["witness"], "[1 e2] ↦ 0");
    assert_eq!(v["passed"], true);
}

#[test]
fn invalid_model_names_the_rule() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.model");
    std::fs::write(&path, "generators: e1 e2 e3 e4 e5\nd: e4 = e1^e2\nd: e2 = e3^e5\nomega: e1^e3\n").unwrap();
    let out = fh(&["validate", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("d²(e4) ≠ 0"), "{err}");
}

#[test]
fn boothby_wang_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("kt5.model");
    let p = path.to_str().unwrap();
    let out = fh(&["boothby-wang", "zoo:kodaira_thurston", "-o", p, "--generator", "e0"]);
    assert_eq!(out.status.code(), Some(0));
    let written = load_model(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(written.same_structure(&zoo("kt_contact5").unwrap()));
    let v = json(&["validate", p, "--json"]);
    assert_eq!(v["model"], "bw(kodaira_thurston)");
    assert_eq!(v["passed"], true);
}

#[test]
fn json_is_reproducible() {
    let args = ["suite", "zoo:kt_contact5", "--json", "--seed", "7"];
    let a = fh(&args);
    let b = fh(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).unwrap();
    assert_eq!(v["seed"], 7);
}

#[test]
fn usage_errors() {
    for args in [&["frobnicate"][..], &["cohomology"], &["lefschetz", "zoo:torus4", "--seed", "x"]] {
        assert_eq!(fh(args).status.code(), Some(64), "{args:?}");
    }
    assert_eq!(fh(&["hodge", "zoo:klein"]).status.code(), Some(1));
    assert_eq!(fh(&["cohomology", "/nonexistent/model"]).status.code(), Some(1));
}

#[test]
fn max_degree_truncates() {
    let v = json(&["lefschetz", "zoo:torus6", "--json", "--max-degree", "1"]);
    let rows = v["transverse_lefschetz"]["per_degree"].as_array().unwrap();
    assert_eq!(rows.len(), 2);
    assert_eq!(v["transverse_lefschetz"]["max_s"], 2);
}

#[test]
fn cohomology_selects_complexes() {
    let v = json(&["cohomology", "zoo:heisenberg3", "--basic", "--json"]);
    let text = v.to_string();
    assert!(text.contains("[1,2,1]"), "{text}");
    assert!(!text.contains("[1,2,2,1]"), "{text}");
}
