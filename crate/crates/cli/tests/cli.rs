use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn dpcolor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpcolor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn shipped_corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

#[test]
fn poly_of_k3() {
    let out = dpcolor(&["poly", "K3"]);
    assert!(out.status.success());
    assert_eq!(json_of(&out)["polynomial"], "x^3 - 3x^2 + 2x");
}

#[test]
fn dpf_even_cycle_is_strict() {
    let out = dpcolor(&["dpf", "C4", "--m", "3"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["value"], "15");
    assert_eq!(v["P"], "18");
    assert_eq!(v["equal"], false);
    assert_eq!(v["witnesses"].as_array().unwrap().len(), 1);
}

#[test]
fn dpf_budget_refusal_exits_2() {
    let out = dpcolor(&["dpf", "K5", "--m", "4", "--budget", "10"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("refused"));
}

#[test]
fn dpf_rejects_disconnected() {
    assert_eq!(dpcolor(&["dpf", "C3+C4", "--m", "3"]).status.code(), Some(2));
}

#[test]
fn certify_petersen_gt0() {
    let out = dpcolor(&["certify", "petersen", "--gt0"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json_of(&out);
    assert_eq!(v["outcome"], "found");
    assert_eq!(v["certificate"]["kind"], "gt0");
}

#[test]
fn certify_exit_codes() {
    // Every edge of C4 has even ℓ, so no tree qualifies.
    let none = dpcolor(&["certify", "C4"]);
    assert_eq!(none.status.code(), Some(1));
    assert_eq!(json_of(&none)["definitive"], true);
    let capped = dpcolor(&["certify", "C6", "--tree-cap", "1"]);
    assert_eq!(capped.status.code(), Some(2));
    assert_eq!(json_of(&capped)["outcome"], "inconclusive");
}

#[test]
fn cover_count_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("cover.json");
    // A single twisted edge on C4 at m = 2 kills every transversal.
    fs::write(
        &path,
        r#"{"m":2,"matchings":{"0-1":[[1,1],[2,2]],"1-2":[[1,1],[2,2]],"2-3":[[1,1],[2,2]],"0-3":[[1,2],[2,1]]}}"#,
    )
    .unwrap();
    let out = dpcolor(&["cover", "count", "C4", path.to_str().unwrap(), "--ie"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v = json_of(&out);
    assert_eq!(v["count"], "0");
    assert_eq!(v["count_ie"], "0");
}

#[test]
fn graph_file_argument() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("tri.el");
    fs::write(&path, "3 3\n0 1\n1 2\n0 2\n").unwrap();
    let out = dpcolor(&["analyze", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v = json_of(&out);
    assert_eq!(v["girth"], 3);
    assert_eq!(v["chromatic_number"], 3);
}

#[test]
fn construct_outputs() {
    let out = dpcolor(&["construct", "theta", "1", "2", "2"]);
    assert_eq!(json_of(&out)[0]["n"], 4);
    let dot = dpcolor(&["construct", "--dot", "named", "petersen"]);
    assert!(String::from_utf8_lossy(&dot.stdout).starts_with("graph \"petersen\""));
    let phi = dpcolor(&["construct", "phi", "C4", "--depth", "1"]);
    assert!(json_of(&phi).as_array().unwrap().len() > 1);
    let join = dpcolor(&["construct", "join", "C5", "--p", "2"]);
    assert_eq!(json_of(&join)[0]["n"], 7);
    let sum = dpcolor(&["construct", "clique-sum", "K3", "K3", "--c1", "0,1", "--c2", "0,1"]);
    assert_eq!(json_of(&sum)[0]["n"], 4);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(dpcolor(&["nope"]).status.code(), Some(2));
    assert_eq!(dpcolor(&["poly", "Q9"]).status.code(), Some(2));
    assert_eq!(dpcolor(&["construct", "theta", "1", "1", "2"]).status.code(), Some(2));
}

#[test]
fn verify_shipped_corpus() {
    let corpus = shipped_corpus();
    let out = dpcolor(&["verify", "--max-m", "3", "--corpus", corpus.to_str().unwrap()]);
    let v = json_of(&out);
    assert_eq!(out.status.code(), Some(0), "{}", v["checks"]);
    assert_eq!(v["semantics"], "finite-m observations");
    assert_eq!(v["summary"]["fail"], 0);
    for entry in v["corpus"].as_array().unwrap() {
        assert_eq!(entry["sha256"].as_str().unwrap().len(), 64);
    }
}

#[test]
fn verify_sequential_matches_parallel() {
    let par = json_of(&dpcolor(&["verify", "--max-m", "3"]));
    let seq = json_of(&dpcolor(&["--sequential", "verify", "--max-m", "3"]));
    assert_eq!(par["scenarios"], seq["scenarios"]);
    assert_eq!(par["checks"], seq["checks"]);
}
