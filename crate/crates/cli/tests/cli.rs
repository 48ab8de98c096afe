use std::io::Write;
use std::process::{Command, Output, Stdio};

use serde_json::Value;

fn leavitt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_leavitt"))
        .args(args)
        .env_remove("LEAVITT_FIELD")
        .output()
        .expect("binary runs")
}

fn with_stdin(args: &[&str], input: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_leavitt"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let o = leavitt(&full);
    let v: Value = serde_json::from_slice(&o.stdout).expect("valid json");
    assert_eq!(v["schema"], 1);
    v
}

#[test]
fn normal_form_example() {
    let o = leavitt(&["nf", "--m", "2", "--n", "3", "--expr", "x(1,3) y(3,1)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "1 - 1*x(1,1) y(1,1) - 1*x(1,2) y(2,1)");
}

#[test]
fn field_override_from_the_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_leavitt"))
        .args(["nf", "--m", "2", "--n", "3", "--expr", "x(1,3) y(3,1)"])
        .env("LEAVITT_FIELD", "32003")
        .output()
        .unwrap();
    assert_eq!(stdout(&o).trim(), "1 + 32002*x(1,1) y(1,1) + 32002*x(1,2) y(2,1)");
    assert_eq!(json(&["--field", "1000003", "nf", "--m", "1", "--n", "1", "--expr", "1"])["field"], "mod-1000003");
}

#[test]
fn ibn_example() {
    let v = json(&["vmon", "ibn", "--m", "2", "--n", "3", "--k", "2", "--l", "3"]);
    assert_eq!(v["verdict"], "distinct");
    assert_eq!((v["mu_k"].as_str(), v["mu_l"].as_str()), (Some("2"), Some("3")));
}

#[test]
fn diamond_of_the_smallest_system() {
    let o = leavitt(&["diamond", "--system", "S", "--m", "1", "--n", "1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("all resolved"));
    let v = json(&["diamond", "--system", "S", "--m", "1", "--n", "1"]);
    let amb = v["ambiguities"].as_array().unwrap();
    assert_eq!(amb.len(), 2);
    assert_eq!(amb[0]["witness"], "x(1,1) y(1,1) x(1,1)");
    assert_eq!(amb[0]["branch1_nf"], amb[0]["branch2_nf"]);
}

#[test]
fn json_keys_are_sorted_and_output_is_stable() {
    let args = ["--json", "bergman", "graph", "--m", "2", "--n", "3", "--z", "2"];
    let a = stdout(&leavitt(&args));
    assert_eq!(a, stdout(&leavitt(&args)));
    let keys: Vec<&str> = a.lines().filter(|l| l.starts_with("  \"")).map(|l| l.trim().split('"').nth(1).unwrap()).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
}

#[test]
fn usage_errors_exit_with_two() {
    assert_eq!(leavitt(&["nf", "--m", "2"]).status.code(), Some(2));
    assert_eq!(leavitt(&["nf", "--m", "2", "--n", "3", "--expr", "x(3,1)"]).status.code(), Some(2));
    assert_eq!(leavitt(&["--field", "7", "nf", "--m", "2", "--n", "3", "--expr", "1"]).status.code(), Some(2));
    assert_eq!(leavitt(&["suite", "--criteria", "11"]).status.code(), Some(2));
}

#[test]
fn failed_properties_exit_with_one() {
    // x12 y21 is reducible at (2,2), so its completion has no preimage
    let o = leavitt(&["zero", "complete", "--m", "2", "--n", "2", "--word", "x(1,1) x(1,2) y(2,1) x(1,1) y(1,1) y(1,1)"]);
    assert_eq!(o.status.code(), Some(1));
    let o = leavitt(&["zero", "complete", "--m", "2", "--n", "2", "--word", "x(1,1) x(1,1) y(1,1) x(1,1) y(1,1) y(1,1)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "x(1,1) x(1,1) y(1,1) y(1,2) x(2,1) x(1,1) y(1,1) y(1,1)");
}

#[test]
fn zero_commands_report_certificates() {
    let v = json(&["zero", "classify", "--m", "2", "--n", "2", "--word", "x(1,2) y(2,1) y(1,1) x(1,1)"]);
    let f = v["output"]["factors"].as_array().unwrap();
    assert_eq!((f[0]["class"].as_str(), f[1]["class"].as_str()), (Some("xy"), Some("yx")));
    assert_eq!(v["certificate"]["factors_multiply_back"], true);
    let v = json(&["zero", "base-change", "--m", "2", "--n", "2", "--block", "1,2", "--map", "completion"]);
    assert_eq!(v["certificate"]["unitriangular"], true);
    let v = json(&["zero", "transform", "--m", "2", "--n", "3", "--word", "x(1,1) x(1,2) y(2,1) y(1,1)"]);
    assert_eq!(v["certificate"]["admissible"], true);
}

#[test]
fn star_commands() {
    let a = r#"{"base":2,"i":0,"j":1,"entries":["x(1,1)","x(1,2)"]}"#;
    let b = r#"{"base":2,"i":1,"j":0,"entries":["y(1,1)","y(2,1)"]}"#;
    let v = json(&["star", "mul", "--a", a, "--b", b, "--m", "1", "--n", "2"]);
    assert_eq!(v["output"]["entries"], serde_json::json!(["1"]));
    let u = r#"[["x(1,1)","x(1,2)"],["x(2,1)","x(2,2)"]]"#;
    let w = r#"[["y(1,1)","y(1,2)"],["y(2,1)","y(2,2)"]]"#;
    let v = json(&["star", "entry", "--u", u, "--v", w, "--i", "2", "--j", "3"]);
    assert_eq!(v["certificate"]["matches_iterated_star"], true);
}

#[test]
fn presented_algebra_commands() {
    let o = leavitt(&["amn", "phi", "--m", "2", "--n", "3", "--z", "1", "--letter", "e(1,2,3,1,2)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(leavitt(&["amn", "verify-relations", "--m", "2", "--n", "2", "--z", "1"]).status.code(), Some(0));
    assert_eq!(leavitt(&["amn", "diamond", "--m", "2", "--n", "2", "--z", "1"]).status.code(), Some(0));
    assert_eq!(leavitt(&["bergman", "collapse-n1", "--m", "3", "--z", "1"]).status.code(), Some(0));
}

#[test]
fn monoid_pipeline_through_stdin() {
    let graph = stdout(&leavitt(&["--json", "vmon", "from-graph", "--m", "2", "--n", "3", "--z", "2"]));
    let o = with_stdin(&["--json", "vmon", "tietze", "-", "--keep", "v(0,1)", "v(1,1)", "v(2,1)"], &graph);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["generators"], serde_json::json!(["v(0,1)", "v(1,1)", "v(2,1)"]));
    let reduced = String::from_utf8(o.stdout).unwrap();
    let o = with_stdin(&["vmon", "reach", "-", "--from", "4*v(0,1)", "--to", "6*v(1,1)", "--depth", "2"], &reduced);
    assert_eq!(o.status.code(), Some(0));
    let o = with_stdin(&["vmon", "reach", "-", "--from", "v(0,1)", "--to", "v(1,1)", "--depth", "4"], &reduced);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn suite_runs_selected_criteria() {
    let o = leavitt(&["suite", "--criteria", "1,9"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("PASS criterion  1"));
    assert!(out.contains("PASS criterion  9"));
}
