//! Exit codes and output of the `g2` binary.

use std::process::{Command, Output};

fn g2(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_g2"))
        .args(args)
        .output()
        .expect("g2 runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

#[test]
fn weyl_selector_passes() {
    let o = g2(&["verify", "weyl.*"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["schema_version"], 1);
    let table = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["check_id"] == "weyl.table")
        .unwrap();
    assert_eq!(table["artifacts"]["entries"].as_array().map(Vec::len), Some(12));
}

#[test]
fn bigcell_selector_is_deterministic() {
    let a = g2(&["verify", "bigcell.*", "--seed", "7"]);
    let b = g2(&["verify", "bigcell.*", "--seed", "7"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(g2(&["verify", "nosuch.*"]).status.code(), Some(2));
    assert_eq!(g2(&["verify", "all", "--p", "6"]).status.code(), Some(2));
    assert_eq!(g2(&["verify", "all", "--kappa", "3..1"]).status.code(), Some(2));
    assert_eq!(g2(&["emit", "nope"]).status.code(), Some(2));
    assert_eq!(g2(&["bigcell", "decompose", "--point", "0,1,0"]).status.code(), Some(2));
    assert_eq!(g2(&["orbit", "reduce", "--n", "1,2"]).status.code(), Some(2));
    assert_eq!(g2(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn emit_x_alpha_latex() {
    let o = g2(&["emit", "x_alpha"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(
        stdout(&o),
        "x_{\\alpha} = \\frac{\\frac{1}{2}x_{21}-x_{31}}{x_{21}^{2}+x_{32}}\n"
    );
}

#[test]
fn emit_group_law_z21() {
    let o = g2(&["emit", "group_law", "--format", "latex"]);
    assert!(stdout(&o)
        .lines()
        .any(|l| l == "z_{21} = -y_{10}y_{11}'+y_{11}y_{10}'+y_{21}+y_{21}'"));
}

#[test]
fn decompose_example_point() {
    let o = g2(&["bigcell", "decompose", "--point", "1,0,0"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    let json_end = s.rfind('}').unwrap() + 1;
    let v: serde_json::Value = serde_json::from_str(&s[..json_end]).unwrap();
    assert_eq!(v["n_bar"], "(0, 1/2, 1, 0, 3/4)");
    assert_eq!(v["m"], serde_json::json!([["1", "0"], ["-3/4", "1"]]));
    assert_eq!(v["bruhat"]["t"], serde_json::json!(["3/4", "4/3"]));
    assert!(s.ends_with("x_alpha = 1/2\n"));
}

#[test]
fn out_flag_writes_report_and_prints_text() {
    let path = std::env::temp_dir().join(format!("g2-report-{}.json", std::process::id()));
    let o = g2(&["verify", "lie.*", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("PASS  lie.closure"));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["summary"]["failed"], 0);
    let _ = std::fs::remove_file(path);
}

#[test]
fn small_prime_skips_kappa_certificate() {
    let o = g2(&["verify", "nbar.kappa_certificate", "--p", "3", "--format", "text"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("SKIP"));
}

#[test]
fn report_independent_of_thread_count() {
    let a = g2(&["verify", "nbar.*,levi.*", "--seed", "3", "--jobs", "1"]);
    let b = g2(&["verify", "nbar.*,levi.*", "--seed", "3", "--jobs", "3"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
}
