use std::process::{Command, Output};

use serde_json::Value;

fn periodkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_periodkit"))
        .args(args)
        .output()
        .expect("spawn")
}

fn json_ok(args: &[&str]) -> Value {
    let out = periodkit(args);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("json on stdout")
}

const WITNESS_141: &str = "[[1,0,1,2,3,0],[0,1,1,5,7,0],[0,0,0,0,0,1]]";

#[test]
fn disc_form_of_d6() {
    let v = json_ok(&["lattice", "disc-form", "--name", "D6"]);
    assert_eq!(
        v["bilinear"],
        serde_json::json!([["0", "1/2"], ["1/2", "1/2"]])
    );
    assert_eq!(v["order"], 4);
}

#[test]
fn stability_of_141_witness() {
    let v = json_ok(&["config", "stability", "--config", WITNESS_141]);
    assert_eq!(v["status"], "Unstable");
    assert_eq!(v["stratum"], "141");
}

#[test]
fn stability_reads_a_file() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("c.json");
    std::fs::write(&path, WITNESS_141).expect("write");
    let v = json_ok(&[
        "config",
        "stability",
        "--config",
        path.to_str().expect("utf8"),
    ]);
    assert_eq!(v["stratum"], "141");
}

#[test]
fn jacobian_dims_on_a_seeded_system() {
    let v = json_ok(&["jacobian", "dims", "--seed", "0"]);
    assert_eq!(v["dim_R10"], 6);
    let v = json_ok(&["jacobian", "period-rank", "--seed", "0", "--kappa", "3"]);
    for key in ["dim_R10", "dim_target", "rank", "kernel_dim"] {
        assert!(v.get(key).is_some(), "missing {key}");
    }
    assert_eq!(v["rank"], 4);
    assert_eq!(v["kernel_dim"], 2);
}

#[test]
fn domain_errors_exit_one_with_json() {
    let out = periodkit(&["config", "stability", "--config", "[[1,2]]"]);
    assert_eq!(out.status.code(), Some(1));
    let v: Value = serde_json::from_slice(&out.stdout).expect("json");
    assert!(v["error"]["kind"].is_string() && v["error"]["message"].is_string());
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(periodkit(&["bogus"]).status.code(), Some(2));
    assert_eq!(periodkit(&["lattice", "disc-form"]).status.code(), Some(2));
}

#[test]
fn filtered_verify_is_deterministic_and_written() {
    let dir = tempfile::tempdir().expect("tempdir");
    let path = dir.path().join("r.json");
    let args = [
        "verify",
        "--seed",
        "7",
        "--filter",
        "lattice",
        "--json",
        path.to_str().expect("utf8"),
    ];
    let a = periodkit(&args);
    let b = periodkit(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let v: Value = serde_json::from_slice(&a.stdout).expect("json");
    let file: Value =
        serde_json::from_str(&std::fs::read_to_string(&path).expect("report file")).expect("json");
    assert_eq!(v, file);
    let checks = v["checks"].as_array().expect("checks");
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["group"] == "lattice"));
    assert_eq!(v["seed"], 7);
}
