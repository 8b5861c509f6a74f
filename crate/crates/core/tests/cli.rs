use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn modlie(cache: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_modlie")).args(args).env("MODLIE_CACHE", cache).output().unwrap()
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", String::from_utf8_lossy(&out.stdout)))
}

fn first_check(v: &Value) -> (&Value, &Value, &Value) {
    let c = &v[0]["checks"][0];
    (&c["expected"], &c["computed"], &c["provenance"])
}

#[test]
fn documented_verify_examples() {
    let dir = tempfile::tempdir().unwrap();
    let out = modlie(dir.path(), &["verify", "dimh2-w1n", "--p", "5", "--n", "2", "--output", "json"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(first_check(&v), (&Value::from(4), &Value::from(4), &Value::from("[PAPER]")));
    assert_eq!(v[0]["status"], "pass");
    assert_eq!(v[0]["schema"], 1);
    assert!(v[0]["git_hash"].is_string() && v[0]["version"].is_string());

    assert!(modlie(dir.path(), &["verify", "lambda-identities", "--p", "7"]).status.success());
    let out = modlie(dir.path(), &["verify", "h2plus-sl2", "--p", "5", "--m", "1", "--output", "json"]);
    assert!(out.status.success());
    assert_eq!(first_check(&json(&out)).1, &Value::from(0));
}

#[test]
fn reports_are_deterministic_and_cached() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "h2-deformed", "--output", "json"];
    let first = modlie(dir.path(), &args);
    let second = modlie(dir.path(), &args);
    assert_eq!(json(&first)[0]["cached"], false);
    assert_eq!(json(&second)[0]["cached"], true);
    assert!(modlie(dir.path(), &["cache", "clear"]).status.success());
    let third = modlie(dir.path(), &args);
    assert_eq!(first.stdout, third.stdout);
}

#[test]
fn corrupt_cache_entry_is_recomputed() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["verify", "phi21-class", "--output", "json"];
    let clean = modlie(dir.path(), &args);
    for entry in std::fs::read_dir(dir.path()).unwrap() {
        std::fs::write(entry.unwrap().path(), "{ truncated").unwrap();
    }
    let out = modlie(dir.path(), &args);
    assert!(out.status.success());
    assert_eq!(out.stdout, clean.stdout);
    assert!(String::from_utf8_lossy(&out.stderr).contains("corrupt cache entry"));
    let listing = modlie(dir.path(), &["cache", "list"]);
    assert!(String::from_utf8_lossy(&listing.stdout).contains("claim/phi21-class/"));
}

#[test]
fn errors_exit_with_code_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = modlie(dir.path(), &["verify", "no-such-claim"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("no-such-claim"));

    let file = dir.path().join("bad.json");
    std::fs::write(&file, r#"{"p":5,"dim":2,"basis":["a","b"],"bracket":[[0,1,1,1],[1,0,5,4]]}"#).unwrap();
    let out = modlie(dir.path(), &["cohomology", "--file", file.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("bracket entry #1"));
}

#[test]
fn list_names_every_claim() {
    let dir = tempfile::tempdir().unwrap();
    let out = String::from_utf8(modlie(dir.path(), &["verify", "--list"]).stdout).unwrap();
    for id in ["dimh2-w1n", "lambda-identities", "h2plus-sl2", "kuznetsov", "trivial-coefficients"] {
        assert!(out.lines().any(|l| l.starts_with(id)), "{id} missing");
    }
}

#[test]
fn cohomology_builtins() {
    let dir = tempfile::tempdir().unwrap();
    let dim = |args: &[&str]| {
        let mut all = vec!["cohomology", "--no-cache", "--output", "json"];
        all.extend_from_slice(args);
        json(&modlie(dir.path(), &all))["dim"].as_u64().unwrap()
    };
    assert_eq!(dim(&["--builtin", "w1n", "--n", "1"]), 1);
    assert_eq!(dim(&["--builtin", "sl2", "--m", "1"]), 5);
    let trivial_w = dim(&["--builtin", "w1n", "--n", "1", "--module", "trivial"]);
    let trivial_wa = dim(&["--builtin", "current", "--n", "1", "--m", "1", "--module", "trivial"]);
    assert_eq!(trivial_wa, 5 * trivial_w);
    assert_eq!(dim(&["--builtin", "semidirect", "--m", "1", "--degree-shift", "5"]), 1);
}

#[test]
fn file_algebra_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let w = modlie::liealg::make_w1(1, &modlie::arith::Fp::new(5).unwrap()).unwrap();
    let file = dir.path().join("w1.json");
    std::fs::write(&file, w.to_json()).unwrap();
    let out = modlie(dir.path(), &["cohomology", "--file", file.to_str().unwrap(), "--output", "json", "--dump"]);
    let v = json(&out);
    assert_eq!(v["dim"], 1);
    assert_eq!(v["representatives"].as_array().unwrap().len(), 1);
}
