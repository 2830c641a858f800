use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn qdw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qdw"))
        .args(args)
        .env_remove("QDW_BUDGET")
        .output()
        .expect("binary runs")
}

fn qdw_on(cmd: &str, file: &str, extra: &[&str]) -> Output {
    let path = fixture(file);
    let mut args = vec![cmd, path.to_str().unwrap()];
    args.extend_from_slice(extra);
    qdw(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn json(o: &Output) -> serde_json::Value {
    serde_json::from_slice(&o.stdout).expect("json output")
}

#[test]
fn check_accepts_valid_file() {
    let o = qdw_on("check", "l2.json", &[]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn check_reports_associativity_witness() {
    let o = qdw_on("check", "broken_assoc.json", &[]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    assert!(out.contains("associativity"), "{out}");
    assert!(out.contains("[1, 1, 2]"), "{out}");
}

#[test]
fn check_json_lists_documents() {
    let o = qdw_on("check", "godel_pair.json", &["--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["valid"], true);
    assert_eq!(v["documents"].as_array().unwrap().len(), 2);
}

#[test]
fn check_resolves_quantales_across_files() {
    let a = fixture("l2.json");
    let b = fixture("indiscrete.json");
    let o = qdw(&["check", a.to_str().unwrap(), b.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn missing_quantale_is_reported() {
    let o = qdw_on("check", "missing_ref.json", &[]);
    assert_eq!(o.status.code(), Some(4));
    assert!(String::from_utf8_lossy(&o.stderr).contains("nowhere"));
}

#[test]
fn syntax_error_has_location() {
    let o = qdw_on("check", "bad_syntax.json", &["--format", "json"]);
    assert_eq!(o.status.code(), Some(3));
    let v = json(&o);
    assert_eq!(v["error"], "parse");
    assert!(v["message"].as_str().unwrap().contains("bad_syntax.json:4:"));
}

#[test]
fn missing_file_is_io_error() {
    let o = qdw(&["check", "/nonexistent/file.json"]);
    assert_eq!(o.status.code(), Some(5));
}

#[test]
fn poset_documents_load() {
    assert_eq!(qdw_on("check", "poset.json", &[]).status.code(), Some(0));
}

#[test]
fn two_chain_is_priestley() {
    let o = qdw_on("priestley", "two_chain.json", &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("priestley: true"));
}

#[test]
fn godel_pair_dual_carrier() {
    let o = qdw_on("dualize", "godel_pair.json", &["--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    let carrier: Vec<Vec<String>> = serde_json::from_value(v["carrier"].clone()).unwrap();
    let expected: Vec<Vec<&str>> = vec![
        vec!["0", "0"],
        vec!["0", "1/2"],
        vec!["0", "1"],
        vec!["1/2", "1/2"],
        vec!["1/2", "1"],
        vec!["1", "1"],
    ];
    assert_eq!(carrier, expected);
}

#[test]
fn indiscrete_reflects_to_a_point() {
    let o = qdw_on("reflect", "indiscrete.json", &[]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("reflection: 1 point"));
    let v = json(&qdw_on("reflect", "indiscrete.json", &["--format", "json"]));
    assert_eq!(v["points"], 1);
}

#[test]
fn atoms_are_dense() {
    let o = qdw_on("closure", "b4_atoms.json", &["--subset", "m1,m2", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["closure"], serde_json::json!(["c", "m1", "m2"]));
    assert_eq!(v["dense"], true);
}

#[test]
fn closure_rejects_unknown_point() {
    let o = qdw_on("closure", "b4_atoms.json", &["--subset", "zz"]);
    assert_eq!(o.status.code(), Some(64));
}

#[test]
fn completion_of_symmetric_space() {
    let o = qdw_on("complete", "metric.json", &["--name", "p", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v = json(&o);
    assert_eq!(v["cauchy_complete"], true);
    assert_eq!(v["adjoint_pairs"].as_array().unwrap().len(), 2);
}

#[test]
fn ambiguous_target_is_usage_error() {
    assert_eq!(qdw_on("complete", "metric.json", &[]).status.code(), Some(64));
}

#[test]
fn budget_overflow_exits_with_cardinality() {
    let o = qdw_on("priestley", "two_chain.json", &["--budget", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(2));
    let v = json(&o);
    assert_eq!(v["error"], "search_space_too_large");
    assert!(v["message"].as_str().unwrap().contains('4'));
}

#[test]
fn budget_from_environment() {
    let path = fixture("two_chain.json");
    let o = Command::new(env!("CARGO_BIN_EXE_qdw"))
        .args(["priestley", path.to_str().unwrap()])
        .env("QDW_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn reports_are_deterministic() {
    let a = qdw_on("dualize", "godel_pair.json", &["--format", "json"]);
    let b = qdw_on("dualize", "godel_pair.json", &["--format", "json"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn verify_core_passes() {
    let o = qdw(&["verify", "core", "--seed", "1"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn verify_duality_small_fails_only_on_godel_j() {
    let o = qdw(&["verify", "duality", "--max-size", "1", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v = json(&o);
    let failed: Vec<&str> = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert_eq!(failed, vec!["j-iso-godel-fails"]);
    assert_eq!(v["config"]["max_size"], 1);
}

#[test]
fn verify_ordered_passes() {
    assert_eq!(qdw(&["verify", "ordered"]).status.code(), Some(0));
}

#[test]
fn unknown_suite_is_usage_error() {
    assert_eq!(qdw(&["verify", "everything"]).status.code(), Some(64));
}

#[test]
fn help_exits_cleanly() {
    assert_eq!(qdw(&["--help"]).status.code(), Some(0));
    assert_eq!(qdw(&["--version"]).status.code(), Some(0));
    assert_eq!(qdw(&[]).status.code(), Some(64));
}
