use std::io::Write;
use std::path::PathBuf;
use std::process::{Command, Output, Stdio};

use serde_json::{json, Value};

fn data(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn pvp(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pvp"))
        .args(args)
        .env_remove("PVP_INPUT")
        .env_remove("PVP_BUDGET")
        .env_remove("PVP_SEED")
        .output()
        .expect("binary runs")
}

fn report(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is a JSON report")
}

fn run_file(cmd: &str, file: &str) -> (i32, Value) {
    let out = pvp(&[cmd, "--input", data(file).to_str().unwrap()]);
    (out.status.code().unwrap(), report(&out))
}

#[test]
fn prolong_from_file() {
    let (code, r) = run_file("prolong", "prolong.json");
    assert_eq!(code, 0);
    assert_eq!(r["command"], "prolong");
    assert_eq!(r["status"], "ok");
    assert_eq!(
        r["result"]["matrix"],
        json!([["x", "0", "0"], ["1", "x", "0"], ["0", "2", "x"]])
    );
    assert_eq!(r["inputs_echo"]["n"], 2);
    assert!(r["checks"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn verify_passes_and_corruption_fails() {
    let (code, r) = run_file("verify", "verify.json");
    assert_eq!(code, 0);
    assert_eq!(
        r["result"],
        json!({"fundamental": true, "leibniz_orders_checked": [0, 1, 2]})
    );
    let (code, r) = run_file("verify", "verify_corrupt.json");
    assert_eq!(code, 1);
    assert_eq!(r["status"], "check_failed");
    assert_eq!(r["result"]["fundamental"], false);
}

#[test]
fn compose_and_jets() {
    let (code, r) = run_file("compose", "compose.json");
    assert_eq!(code, 0);
    // (x + 2)(x + 1)x
    assert_eq!(r["result"]["A_l"], json!([["x^3 + 3*x^2 + 2*x"]]));
    let (code, r) = run_file("jets", "jets.json");
    assert_eq!(code, 0);
    let names: Vec<&str> = r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"associativity") && names.contains(&"block_homomorphism"));
}

#[test]
fn invariance_exit_codes() {
    let (code, r) = run_file("check-invariance", "invariance_diagonal.json");
    assert_eq!((code, r["result"].clone()), (0, json!({"invariant": true})));
    let (code, r) = run_file("check-invariance", "invariance_antidiagonal.json");
    assert_eq!(
        (code, r["result"].clone()),
        (1, json!({"invariant": false, "failing_generator": 0}))
    );
}

#[test]
fn structure_commands() {
    let (code, r) = run_file("components", "components.json");
    assert_eq!(code, 0);
    assert_eq!(r["result"]["l"], 4);
    assert_eq!(r["result"]["fixed_by_sigma_l"], json!([true, true, true, true]));
    let (code, r) = run_file("exact-seq", "exact_seq.json");
    assert_eq!(code, 0);
    assert_eq!(r["result"]["exact"], true);
    assert_eq!(
        (r["result"]["group_order"].clone(), r["result"]["l"].clone()),
        (json!(6), json!(6))
    );
}

#[test]
fn inline_and_stdin_input() {
    let out = pvp(&["components", "--input", r#"{"r": [3]}"#]);
    assert_eq!(report(&out)["result"]["l"], 3);

    let mut child = Command::new(env!("CARGO_BIN_EXE_pvp"))
        .args(["compose", "--input", "-"])
        .env_remove("PVP_INPUT")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(br#"{"A": [["x"]], "l": 2}"#)
        .unwrap();
    let out = child.wait_with_output().unwrap();
    assert_eq!(report(&out)["result"]["A_l"], json!([["x^2 + x"]]));
}

#[test]
fn output_file_and_env_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let target = dir.path().join("report.json");
    let out = Command::new(env!("CARGO_BIN_EXE_pvp"))
        .args(["prolong", "--output", target.to_str().unwrap()])
        .env("PVP_INPUT", r#"{"A": [["x"]], "n": 3}"#)
        .env("PVP_ORDER", "2")
        .output()
        .unwrap();
    // Order 3 exceeds the limit of 2 set through the environment.
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    let written: Value = serde_json::from_str(&std::fs::read_to_string(&target).unwrap()).unwrap();
    assert_eq!(written["status"], "budget_exceeded");
}

#[test]
fn malformed_input_exits_2() {
    let out = pvp(&["prolong", "--input", "{\"A\": [[\"x +\"]], \"n\": 1}"]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(report(&out)["status"], "invalid_input");
    let out = pvp(&["prolong", "--input", "/nonexistent/file.json"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn selftest_is_deterministic_and_respects_budget() {
    let a = pvp(&["selftest", "--seed", "11", "--jobs", "3"]);
    let b = pvp(&["selftest", "--seed", "11", "--jobs", "1"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let tight = pvp(&["selftest", "--budget", "1"]);
    assert_eq!(tight.status.code(), Some(3));
    let r = report(&tight);
    assert!(r["checks"]
        .as_array()
        .unwrap()
        .iter()
        .any(|c| c["detail"].as_str().is_some_and(|d| d.contains("budget"))));
}
