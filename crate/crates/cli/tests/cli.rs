use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn hyperlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hyperlab"))
        .args(args)
        .env_remove("HYPERLAB_BUDGET")
        .output()
        .expect("run hyperlab")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8 stdout")
}

fn shipped(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures").join(name)
}

#[test]
fn validate_fixtures() {
    for f in ["paper-2-4", "ring:Z6"] {
        let o = hyperlab(&["validate", "--fixture", f]);
        assert_eq!(o.status.code(), Some(0), "{f}: {}", stdout(&o));
    }
}

#[test]
fn validate_broken_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(shipped("paper-2-4.json")).unwrap()).unwrap();
    doc["g"]["2,2,2,2"] = Value::from("3");
    std::fs::write(&path, doc.to_string()).unwrap();
    let o = hyperlab(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("witness"), "{}", stdout(&o));

    let o = hyperlab(&["validate", path.to_str().unwrap(), "--first-violation", "--json"]);
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report["violations"].as_array().unwrap().len(), 1);
}

#[test]
fn shipped_files_load() {
    let o = hyperlab(&["validate", shipped("paper-2-4.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let o = hyperlab(&["export", "--fixture", "paper-2-4"]);
    assert_eq!(stdout(&o), std::fs::read_to_string(shipped("paper-2-4.json")).unwrap());
    let o = hyperlab(&["validate", shipped("paper-3-3.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn parse_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("conflict.json");
    let mut doc: Value = serde_json::from_str(&std::fs::read_to_string(shipped("paper-2-4.json")).unwrap()).unwrap();
    doc["f"]["3,1"] = serde_json::json!(["2"]);
    std::fs::write(&path, doc.to_string()).unwrap();
    let o = hyperlab(&["validate", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("conflicting"));

    assert_eq!(hyperlab(&["validate", "--fixture", "ring:Q"]).status.code(), Some(2));
    assert_eq!(hyperlab(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(hyperlab(&["search", "--holds", "prime", "--fails", "nice"]).status.code(), Some(2));
}

#[test]
fn classify_paper_example() {
    let o = hyperlab(&["classify", "--fixture", "paper-2-4", "--ideal", "0", "--mult-set", "2,3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("\nweakly-s-prime: true"), "{text}");
    assert!(text.contains("\nprime: false counterexample (1,1,2,3)"), "{text}");

    let o = hyperlab(&["classify", "--fixture", "ring:Z4", "--ideal", "0", "--mult-set", "1", "--json"]);
    let record: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(record["predicates"]["weakly-s-prime"]["holds"], Value::Bool(true));
    assert_eq!(record["predicates"]["weakly-s-prime"]["note"], Value::from("vacuously true"));
    assert_eq!(record["predicates"]["s-prime"]["holds"], Value::Bool(false));
}

#[test]
fn classify_preconditions_exit_three() {
    let cases: [&[&str]; 4] = [
        &["--fixture", "ring:Z6", "--ideal", "0,3", "--mult-set", "3"],
        &["--fixture", "ring:Z6", "--ideal", "0,2", "--mult-set", "1"],
        &["--fixture", "ring:Z6", "--ideal", "0", "--mult-set", "2"],
        &["--fixture", "ring:Z6", "--ideal", "0,1,2,3,4,5", "--mult-set", "1"],
    ];
    for args in cases {
        let o = hyperlab(&[&["classify"], args].concat());
        assert_eq!(o.status.code(), Some(3), "{args:?}");
    }
}

#[test]
fn theorems_corpora() {
    let o = hyperlab(&["theorems", "--corpus", "none"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("summary: 0 verified, 0 counterexamples"));

    let o = hyperlab(&["theorems", "--corpus", "paper-3-3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("multiplicative set meets the hyperideal in {2}"));

    let o = hyperlab(&["theorems", "--corpus", "ring:Z4", "--json"]);
    assert_eq!(o.status.code(), Some(0));
    let report: Value = serde_json::from_slice(&o.stdout).unwrap();
    let first = &report["reports"][0];
    for key in ["propertyId", "instance", "status"] {
        assert!(first.get(key).is_some(), "{key}");
    }
}

#[test]
fn search_examples() {
    let o = hyperlab(&["search", "--holds", "weakly-s-prime", "--fails", "s-prime", "--corpus", "ring:Z4"]);
    assert!(stdout(&o).lines().any(|l| l == "ring:Z4 Q={0} S={1}"));
    let o = hyperlab(&["search", "--holds", "weakly-prime", "--fails", "prime", "--corpus", "ring:Z6"]);
    assert!(stdout(&o).lines().any(|l| l == "ring:Z6 Q={0} S={1}"));
    let o = hyperlab(&["search", "--holds", "prime", "--fails", "weakly-s-prime"]);
    assert_eq!(stdout(&o), "0 separating instances\n");
}

#[test]
fn ideals_listing() {
    let o = hyperlab(&["ideals", "--fixture", "ring:Z6"]);
    assert_eq!(stdout(&o), "{0}\n{0,3} prime\n{0,2,4} prime\n{0,1,2,3,4,5}\n");
}

#[test]
fn budget_env() {
    let o = Command::new(env!("CARGO_BIN_EXE_hyperlab"))
        .args(["ideals", "--fixture", "ring:Z12"])
        .env("HYPERLAB_BUDGET", "evals=100,subsets=4")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("capacity"));
    let o = Command::new(env!("CARGO_BIN_EXE_hyperlab"))
        .args(["ideals", "--fixture", "ring:Z4"])
        .env("HYPERLAB_BUDGET", "lots")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}
