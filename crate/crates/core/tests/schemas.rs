use std::path::PathBuf;

use pvp_core::cli::{run, Command, RunOptions};
use serde_json::Value;

fn load(name: &str) -> Value {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("schemas").join(name);
    serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

fn assert_valid(schema_file: &str, instance: &Value) {
    let schema = load(schema_file);
    let validator = jsonschema::validator_for(&schema).unwrap_or_else(|e| panic!("{schema_file}: {e}"));
    let errors: Vec<String> = validator
        .iter_errors(instance)
        .map(|e| format!("{} at {}", e, e.instance_path()))
        .collect();
    assert!(errors.is_empty(), "{schema_file}: {errors:?}\n{instance:#}");
}

fn assert_invalid(schema_file: &str, instance: &Value) {
    let validator = jsonschema::validator_for(&load(schema_file)).unwrap();
    assert!(!validator.is_valid(instance), "{schema_file} accepted {instance}");
}

fn data(name: &str) -> String {
    std::fs::read_to_string(PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)).unwrap()
}

const CASES: [(&str, &str); 9] = [
    ("prolong", "prolong.json"),
    ("verify", "verify.json"),
    ("verify", "verify_corrupt.json"),
    ("compose", "compose.json"),
    ("jets", "jets.json"),
    ("check-invariance", "invariance_diagonal.json"),
    ("check-invariance", "invariance_antidiagonal.json"),
    ("components", "components.json"),
    ("exact-seq", "exact_seq.json"),
];

#[test]
fn inputs_validate() {
    for (cmd, file) in CASES {
        let input: Value = serde_json::from_str(&data(file)).unwrap();
        assert_valid(&format!("{cmd}.input.schema.json"), &input);
    }
}

#[test]
fn reports_validate() {
    let options = RunOptions::default();
    for (cmd, file) in CASES {
        let command: Command = cmd.parse().unwrap();
        let text = data(file);
        let report = run(command, Some(&text), &options);
        let json: Value = serde_json::from_str(&report.to_json()).unwrap();
        assert_valid(&format!("{cmd}.report.schema.json"), &json);
    }
}

#[test]
fn error_reports_validate() {
    let options = RunOptions::default();
    for command in Command::ALL.into_iter().filter(|c| c.needs_input()) {
        for text in ["{broken", r#"{"unexpected": 1}"#] {
            let json: Value = serde_json::from_str(&run(command, Some(text), &options).to_json()).unwrap();
            assert_valid(&format!("{}.report.schema.json", command.name()), &json);
        }
    }
}

#[test]
fn selftest_report_validates() {
    let json: Value = serde_json::from_str(&run(Command::Selftest, None, &RunOptions::default()).to_json()).unwrap();
    assert_valid("selftest.report.schema.json", &json);
}

#[test]
fn schemas_reject_malformed_inputs() {
    assert_invalid("prolong.input.schema.json", &serde_json::json!({"A": [["x"]]}));
    assert_invalid("components.input.schema.json", &serde_json::json!({"r": [0]}));
    assert_invalid(
        "check-invariance.input.schema.json",
        &serde_json::json!({"order": 0, "m": 2, "generators": []}),
    );
    assert_invalid(
        "compose.input.schema.json",
        &serde_json::json!({"spec": "mahler", "A": [["x"]], "l": 2}),
    );
}
