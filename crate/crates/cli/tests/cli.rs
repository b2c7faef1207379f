use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nslattice"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

fn schema(name: &str) -> Value {
    let path: PathBuf = [
        env!("CARGO_MANIFEST_DIR"),
        "schemas",
        &format!("{name}.json"),
    ]
    .iter()
    .collect();
    serde_json::from_str(&std::fs::read_to_string(path).expect("schema file")).expect("schema json")
}

fn json_of(args: &[&str]) -> Value {
    let mut full = args.to_vec();
    full.extend(["--json", "--quiet"]);
    let o = run(&full);
    assert!(
        o.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&o.stderr)
    );
    serde_json::from_str(&stdout(&o)).expect("valid json")
}

fn assert_valid(name: &str, args: &[&str]) -> Value {
    let v = json_of(args);
    let validator = jsonschema::validator_for(&schema(name)).expect("schema compiles");
    let errors: Vec<String> = validator.iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?}: {errors:?}");
    v
}

#[test]
fn outputs_match_schemas() {
    assert_valid("classgroup", &["classgroup", "-23"]);
    assert_valid("classgroup", &["classgroup", "-420"]);
    assert_valid("count", &["count", "--m", "4", "--d", "5"]);
    assert_valid("count", &["count", "--m", "4", "--d", "2"]);
    assert_valid("count", &["count", "--m", "3", "--d", "7", "--oracle"]);
    assert_valid(
        "exists",
        &["exists", "--m", "6", "--d", "1", "--property", "smooth"],
    );
    assert_valid(
        "exists",
        &["exists", "--m", "3", "--d", "4", "--property", "very-ample"],
    );
    assert_valid("classify", &["classify", "--m", "12", "--d", "5"]);
    assert_valid("classify", &["classify", "--m", "4", "--d", "4"]);
    assert_valid("lists", &["lists", "--which", "idoneal"]);
    assert_valid("lists", &["lists", "--which", "p4", "--bound", "100"]);
    assert_valid("verify", &["verify", "--m-max", "3", "--d-max", "3"]);
    assert_valid("pr2", &["pr2", "--d", "12"]);
}

#[test]
fn schemas_reject_wrong_payloads() {
    let v = json_of(&["count", "--m", "4", "--d", "5"]);
    let validator = jsonschema::validator_for(&schema("exists")).unwrap();
    assert!(!validator.is_valid(&v));
    let mut broken = json_of(&["pr2", "--d", "6"]);
    broken["total"] = Value::from("four");
    assert!(!jsonschema::validator_for(&schema("pr2"))
        .unwrap()
        .is_valid(&broken));
}

#[test]
fn p4_exception_example() {
    let v = assert_valid(
        "exists",
        &["exists", "--m", "1", "--d", "5", "--property", "very-ample"],
    );
    assert_eq!(v["answer"], Value::Bool(false));
}

#[test]
fn star_list_example() {
    let o = run(&["lists", "--which", "star", "--quiet"]);
    assert!(o.status.success());
    let text = stdout(&o);
    let first = text.lines().next().unwrap();
    assert!(first.starts_with("1,2,4,6,10,12,18,22,28,30,42,58,60,70,78,102,130,190,210,330,462 "));
    assert!(text.contains("GRH"));
    let v = json_of(&["lists", "--which", "star"]);
    assert_eq!(v["values"].as_array().unwrap().len(), 21);
    assert!(v["notes"][0].as_str().unwrap().contains("GRH"));
}

#[test]
fn picard_rank_two_example() {
    let o = run(&["pr2", "--d", "7", "--quiet"]);
    assert_eq!(stdout(&o), "N = 2, N_sm = 0, N_va = 0\n");
}

#[test]
fn human_output_shows_branch() {
    let o = run(&[
        "exists",
        "--m",
        "5",
        "--d",
        "2",
        "--property",
        "smooth",
        "--quiet",
    ]);
    assert!(stdout(&o).contains("branch: "));
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["classify", "--m", "12", "--d", "7", "--json"][..],
        &["verify", "--m-max", "4", "--d-max", "5", "--json"][..],
        &["classgroup", "-4004"][..],
    ] {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.stdout, b.stdout);
        assert_eq!(a.stderr, b.stderr);
    }
}

#[test]
fn header_goes_to_stderr_and_quiet_suppresses_it() {
    let o = run(&["pr2", "--d", "1"]);
    assert!(String::from_utf8_lossy(&o.stderr).starts_with("nslattice "));
    let q = run(&["pr2", "--d", "1", "--quiet"]);
    assert!(q.stderr.is_empty());
    assert_eq!(o.stdout, q.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["pr2", "--d", "1"]).status.code(), Some(0));
    assert_eq!(
        run(&["verify", "--m-max", "3", "--d-max", "3"])
            .status
            .code(),
        Some(0)
    );
    let usage = run(&["frobnicate"]);
    assert_eq!(usage.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&usage.stderr).contains("Usage"));
    assert_eq!(
        run(&["exists", "--m", "1", "--d", "5", "--property", "ample"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(run(&["count", "--m", "1"]).status.code(), Some(1));
    assert_eq!(run(&["classgroup", "-5"]).status.code(), Some(1));
    assert_eq!(
        run(&["classify", "--m", "200", "--d", "200"]).status.code(),
        Some(3)
    );
    assert_eq!(
        run(&["count", "--m", "4611686018427387904", "--d", "4"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
