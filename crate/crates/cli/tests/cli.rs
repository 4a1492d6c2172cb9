use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn models() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../models")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bredonkit")).args(args).env("BREDONKIT_THREADS", "2").output().unwrap()
}

fn json(args: &[&str]) -> Value {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn model(name: &str) -> String {
    models().join(name).display().to_string()
}

#[test]
fn point_table() {
    let doc = json(&["point", "--p", "3", "--m-range", "-4:4", "--n-range", "-2:2"]);
    assert_eq!(doc["command"], "point --p 3 --m-range -4:4 --n-range -2:2");
    let rows = doc["payload"].as_array().unwrap();
    assert_eq!(rows.len(), 45);
    let at = |m: i64, n: i64| rows.iter().find(|r| r["m"] == m && r["n"] == n).unwrap();
    assert_eq!(at(0, 0)["dimension"], 1);
    assert_eq!(at(-2, 1)["labels"][0], "a^0 k^0 u^1");
    assert_eq!(at(3, -2)["dimension"], 1);
    assert_eq!(at(1, -2)["dimension"], 0);
}

#[test]
fn point_formats() {
    let out = run(&["point", "--p", "5", "--m-range", "0:1", "--n-range", "0:0", "--format", "csv"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("p,m,n,"));
    assert_eq!(text.lines().count(), 3);
    let out = run(&["point", "--p", "5", "--format", "md"]);
    assert!(String::from_utf8(out.stdout).unwrap().starts_with("| p | m | n |"));
}

#[test]
fn space_on_models() {
    let row = |args: &[&str]| json(args)["payload"][0].clone();
    let r = row(&["space", "--model", &model("s_xi2_c6.gcw"), "--grading", "2", "--reduced"]);
    assert_eq!(r["group"], "Z");
    let r = row(&["space", "--model", &model("s_xi_c3.gcw"), "--grading", "xi", "--coeff", "fp"]);
    assert_eq!(r["group"], "0");
    let r = row(&["space", "--model", &model("s0_c3.gcw"), "--grading", "0", "--reduced"]);
    assert_eq!(r["group"], "Z");
}

#[test]
fn euler_commands() {
    let r = json(&["euler", "--n", "6", "--reduced-regular"])["payload"][0].clone();
    assert_eq!(r["vanishes"], true);
    assert_eq!(r["witness_orders"], serde_json::json!([2, 3]));
    let r = json(&["euler", "--n", "4", "--reduced-regular"])["payload"][0].clone();
    assert_eq!(r["vanishes"], false);
    let r = json(&["euler", "--n", "6", "--rep", "xi^2"])["payload"][0].clone();
    assert_eq!(r["order"], "3");
}

#[test]
fn obstruct_certificates() {
    let doc = json(&["obstruct", "--p", "2", "--d", "3"]);
    assert_eq!(doc["payload"]["rechecked"], true);
    assert!(doc["payload"]["problem"].is_object());
    let out = run(&["obstruct", "--p", "3", "--d", "2", "--surrogate", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("p,d,source,"));
    assert!(text.contains("surrogate-skeleton"));
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["selftest"]).status.code(), Some(0));
    // a surrogate skeleton too small to carry the witness
    assert_eq!(run(&["obstruct", "--p", "3", "--d", "3", "--surrogate", "2"]).status.code(), Some(1));
    assert_eq!(run(&["point", "--p", "4"]).status.code(), Some(2));
    assert_eq!(run(&["euler", "--n", "6", "--rep", "zeta"]).status.code(), Some(2));
    assert_eq!(run(&["space", "--model", "/nonexistent.gcw", "--grading", "0"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.gcw");
    std::fs::write(&bad, "group 3\ncell x dim one\n").unwrap();
    let out = run(&["space", "--model", bad.to_str().unwrap(), "--grading", "0"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
}

#[test]
fn selftest_reports_every_check() {
    let doc = json(&["selftest"]);
    let rows = doc["payload"].as_array().unwrap();
    assert_eq!(rows.len(), 7);
    assert!(rows.iter().all(|r| r["passed"] == true));
}

#[test]
fn deterministic_up_to_timestamp() {
    let strip = |mut v: Value| {
        v.as_object_mut().unwrap().remove("timestamp");
        v
    };
    let args = ["point", "--p", "5", "--m-range", "-6:6", "--n-range", "-3:3"];
    let a = strip(json(&args));
    let b = strip(json(&args));
    assert_eq!(a, b);
}
