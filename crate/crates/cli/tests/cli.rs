use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn linkset(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_linkset")).args(args).output().unwrap()
}

fn json(args: &[&str]) -> (i32, Value) {
    let mut all = vec!["--format", "json"];
    all.extend_from_slice(args);
    let out = linkset(&all);
    let v = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!("{e}: {}{}", String::from_utf8_lossy(&out.stdout), String::from_utf8_lossy(&out.stderr))
    });
    (out.status.code().unwrap(), v)
}

fn verdict(report: &Value, name: &str) -> bool {
    report["verdicts"]
        .as_array()
        .unwrap()
        .iter()
        .find(|v| v["name"] == name)
        .unwrap_or_else(|| panic!("no verdict {name} in {report}"))["passed"]
        .as_bool()
        .unwrap()
}

#[test]
fn catalog_listing() {
    let (code, r) = json(&["catalog"]);
    assert_eq!(code, 0);
    assert_eq!(r["counts"]["graphs"], 10);
    assert_eq!(r["counts"]["lambdaSets"], 11);
    assert_eq!(r["counts"]["assets"], 20);
}

#[test]
fn export_items() {
    let out = linkset(&["catalog", "--export", "G10"]);
    assert!(out.status.success());
    let g: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(g["edges"].as_array().unwrap().len(), 29);
    let out = linkset(&["catalog", "--export", "Λ(G9)"]);
    let l: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(l["pairs"].as_array().unwrap().len(), 9);
    let out = linkset(&["catalog", "--export", "nothing"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn enumerate_counts() {
    let (code, r) = json(&["enumerate", "--graph", "K6", "--type", "3,3"]);
    assert_eq!(code, 0);
    assert_eq!(r["counts"]["pairs"], 10);
    let (_, r) = json(&["enumerate", "--graph", "K7", "--type", "4,3", "--hamiltonian"]);
    assert_eq!(r["counts"]["pairs"], 105);
}

#[test]
fn verify_linked_with_shipped_witness() {
    let (code, r) = json(&["verify", "linked", "--graph", "G8", "--witness", "assets/h_G8.json"]);
    assert_eq!(code, 0, "{r}");
    assert!(r["passed"].as_bool().unwrap());
    assert!(verdict(&r, "parity-even"));
    assert!(verdict(&r, "witness-sum-odd"));
    assert_eq!(r["counts"]["pairs"], 12);
    assert_eq!(r["details"]["sigma"], 1);
}

#[test]
fn parity_failure_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let out = linkset(&["catalog", "--export", "Γ⁽²⁾(K6)"]);
    let mut lam: Value = serde_json::from_slice(&out.stdout).unwrap();
    lam["name"] = "nine".into();
    lam["pairs"].as_array_mut().unwrap().pop();
    let path = dir.path().join("nine.json");
    std::fs::write(&path, lam.to_string()).unwrap();
    let (code, r) = json(&["verify", "linked", "--graph", "K6", "--lambda", path.to_str().unwrap()]);
    assert_eq!(code, 1, "{r}");
    assert!(!r["passed"].as_bool().unwrap());
}

#[test]
fn bad_input_exits_two() {
    let out = linkset(&["verify", "linked", "--graph", "NOPE"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    let out = linkset(&["verify", "minimal", "--battery", "/does/not/exist.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_minimal_battery() {
    let (code, r) = json(&["verify", "minimal", "--battery", "assets/P9.battery.json"]);
    assert_eq!(code, 0, "{r}");
    assert!(r["passed"].as_bool().unwrap());
}

#[test]
fn splitting_count() {
    let (code, r) = json(&["verify", "splitting-count", "--graph", "Q8"]);
    assert_eq!(code, 0, "{r}");
    assert!(r["passed"].as_bool().unwrap());
}

fn bundle(dir: &Path, name: &str) -> Value {
    serde_json::from_str(&std::fs::read_to_string(dir.join(name)).unwrap()).unwrap()
}

#[test]
fn construct_writes_bundles() {
    let dir = tempfile::tempdir().unwrap();
    let out_dir = dir.path().to_str().unwrap();
    for (p, q, file, pairs) in [
        ("5", "3", "K8-5-3.bundle.json", 12),
        ("7", "4", "K11-7-4.bundle.json", 9),
        ("5", "5", "K10-5-5.bundle.json", 18),
    ] {
        let out = linkset(&["--out", out_dir, "construct", "--p", p, "--q", q]);
        assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
        let b = bundle(dir.path(), file);
        assert_eq!(b["lambda"]["pairs"].as_array().unwrap().len(), pairs, "{file}");
        assert!(b.get("minorMap").is_some());
    }
    let prime = bundle(dir.path(), "K10-prime.bundle.json");
    assert_eq!(prime["lambda"]["pairs"].as_array().unwrap().len(), 6);
    assert!(prime.get("witnessDiagram").is_some());
    let large = bundle(dir.path(), "K11-7-4.bundle.json");
    assert!(large.get("witnessDiagram").is_none());
    let path = dir.path().join("K8-5-3.bundle.json");
    let (code, r) = json(&["verify", "minimal", "--battery", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{r}");
}

#[test]
fn montecarlo_is_reproducible() {
    let args = ["--seed", "11", "montecarlo", "--graph", "K6", "--trials", "30"];
    let (code, a) = json(&args);
    assert_eq!(code, 0);
    let (_, b) = json(&args);
    assert_eq!(a, b);
    assert_eq!(a["counts"]["trials"], 30);
    assert_eq!(a["counts"]["sigma=1"], 30);
    assert!(verdict(&a, "sigma-constant-one"));
}

#[test]
fn report_file_round_trips() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = linkset(&["--format", "json", "--out", path.to_str().unwrap(), "verify", "linked", "--graph", "P7"]);
    assert!(out.status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["inputsDigest"].as_str().unwrap().len(), 64);
    let again = serde_json::to_string_pretty(&v).unwrap();
    assert_eq!(serde_json::from_str::<Value>(&again).unwrap(), v);
}

#[test]
fn lift_writes_a_verifiable_bundle() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("K11.bundle.json");
    let p = path.to_str().unwrap();
    let out = linkset(&["--max-n", "11", "--out", p, "verify", "lift", "--graph", "G10", "--host-n", "11"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stdout));
    let b = bundle(dir.path(), "K11.bundle.json");
    assert_eq!(b["graph"]["vertices"].as_array().unwrap().len(), 11);
    let (code, r) = json(&["--max-n", "11", "verify", "minimal", "--battery", p]);
    assert_eq!(code, 0, "{r}");
    let out = linkset(&["verify", "lift", "--graph", "G10", "--host-n", "11"]);
    assert_eq!(out.status.code(), Some(2));
}
