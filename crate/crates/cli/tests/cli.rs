use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multiflag")).args(args).output().expect("binary runs")
}

fn run_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_multiflag")).args(args).env(key, value).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("stdout is JSON")
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(format!("{}/tests/golden/{name}", env!("CARGO_MANIFEST_DIR"))).unwrap()
}

#[test]
fn classify_named_instance() {
    let o = run(&["classify", "[[3,1],[1,1,1,1],[1,1,1,1]]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "{\"finite\":true,\"labels\":[\"S_{4,4}\"]}\n");
}

#[test]
fn classify_infinite_type_exits_with_witness() {
    let o = run(&["classify", "[[3,3],[2,2,2],[1,1,1,1,1,1]]"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o), golden("classify_e8.json"));
    assert_eq!(json(&o)["witness"]["tits_q"], 0);
}

#[test]
fn orbits_golden() {
    let o = run(&["orbits", "[[1,1],[1,1],[1,1]]"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("orbits_three_lines.json"));
    assert_eq!(json(&o).as_array().unwrap().len(), 5);
}

#[test]
fn pi_golden() {
    assert_eq!(stdout(&run(&["pi", "[[1,1],[1,1],[1,1]]"])), golden("pi_three_lines.json"));
}

#[test]
fn hasse_dot_golden() {
    let o = run(&["hasse", "[[3],[1,1,1],[1,1,1]]", "--format", "dot"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), golden("hasse_s3.dot"));
    let j = json(&run(&["hasse", "[[3],[1,1,1],[1,1,1]]"]));
    assert_eq!(j["edges"].as_array().unwrap().len(), 8);
    assert_eq!(j["order"], "hom-rank");
}

#[test]
fn output_is_stable() {
    let a = run(&["orbits", "[[2,1],[1,1,1],[1,1,1]]"]);
    let b = run(&["orbits", "[[2,1],[1,1,1],[1,1,1]]"]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn hom_reports_paths() {
    let o = run(&["hom", "[[1,1],[1,1],[1,1]]", "[[1,1],[1,1],[1,1]]"]);
    assert_eq!(stdout(&o), "{\"hom\":1,\"paths\":[\"formula\",\"linalg\"]}\n");
    let rep = stdout(&run(&["rep", "[[2],[1,1],[1,1]]", "--index", "0", "--field", "5"]));
    let o = run(&["hom", rep.trim(), rep.trim()]);
    assert_eq!(o.status.code(), Some(0));
    let j = json(&o);
    assert_eq!(j["paths"], serde_json::json!(["linalg"]));
    // The diagonal pair of complete flags in the plane has a Borel of endomorphisms.
    assert_eq!(j["hom"], 3);
}

#[test]
fn codim_by_family() {
    let fam = r#"[{"dim":[[1],[1,0],[1,0]],"mult":1},{"dim":[[1],[0,1],[0,1]],"mult":1}]"#;
    let o = run(&["codim", "[[2],[1,1],[1,1]]", "--family", fam]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(json(&o)["codim"], 1);
}

#[test]
fn oracle_counts_and_budget() {
    let o = run(&["oracle", "[[1,1],[1,1],[1,1]]", "--q", "3", "--match"]);
    assert_eq!(o.status.code(), Some(0));
    let j = json(&o);
    assert_eq!(j["census"]["orbits"], 5);
    assert_eq!(j["bijective"], true);
    let o = run_env(&["oracle", "[[3],[1,1,1],[1,1,1]]"], "MULTIFLAG_BUDGET", "10");
    assert_eq!(o.status.code(), Some(2));
    let j = json(&o);
    assert_eq!(j["reason"], "budget_exceeded");
    assert_eq!(j["budget"], 10);
}

#[test]
fn usage_errors() {
    let o = run(&["classify", "[[1,2],[3]"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 10"));
    assert_eq!(run(&["orbits", "[[1],[1],[1]]", "--format", "dot"]).status.code(), Some(1));
    assert_eq!(run(&["classify", "[[1,2],[3],[2]]"]).status.code(), Some(1));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn orbits_refuse_infinite_type() {
    let o = run(&["orbits", "[[2,2],[1,1,1,1],[1,1,1,1]]"]);
    assert_eq!(o.status.code(), Some(2));
    let j = json(&o);
    assert_eq!(j["reason"], "infinite_type");
    assert!(j["witness"]["summand"].is_array());
}
