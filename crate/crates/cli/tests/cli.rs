use std::process::{Command, Output};

fn cameronlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cameronlab")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf8 output")
}

#[test]
fn hom_prints_dimension() {
    let o = cameronlab(&["hom", "--category", "BA", "--from", "4", "--to", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "2");
}

#[test]
fn refined_hom_by_label() {
    let o = cameronlab(&["hom", "-c", "FA", "--from", "3", "--lambda", "sgn", "--to", "2", "--mu", "(-)"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(stdout(&o).trim(), "1");
}

#[test]
fn psi_check_lists_identities() {
    let o = cameronlab(&["psi", "--category", "CA", "-n", "3", "--check"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert_eq!(out.lines().count(), 5);
    assert!(out.lines().all(|l| l.starts_with("PASS")));
}

#[test]
fn factorize_prints_both_factors() {
    let o = cameronlab(&["factorize", "--category", "FA", "--map", "3->3:[2,2,3]"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "surjective FA 3->2 [1,1,2]\ninjective  FA 2->3 [2,3]\n");
}

#[test]
fn mutation_graph_dot_to_stdout() {
    let o = cameronlab(&["mutation-graph", "--category", "FA", "-m", "2", "-n", "3", "--dot", "-"]);
    assert!(o.status.success());
    let dot = stdout(&o);
    assert!(dot.starts_with("graph \"FA_2_3\""));
    assert_eq!(dot.matches(" -- ").count(), 6);
}

#[test]
fn table_is_a_csv_matrix() {
    let o = cameronlab(&["table", "--category", "OA", "--max-n", "3"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "m\\n,1,2,3\n1,1,0,0\n2,1,1,0\n3,0,1,1\n");
}

#[test]
fn unknown_category_is_a_usage_error() {
    let o = cameronlab(&["hom", "--category", "XY", "--from", "1", "--to", "1"]);
    assert!(!o.status.success());
    assert_ne!(o.status.code(), Some(1));
}

#[test]
fn unknown_flag_is_a_usage_error() {
    let o = cameronlab(&["verify", "--frobnicate"]);
    assert!(!o.status.success());
}

#[test]
fn unknown_suite_is_rejected() {
    let o = cameronlab(&["verify", "--category", "OA", "--suite", "nope"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn passing_suite_exits_zero() {
    let o = cameronlab(&["verify", "--category", "OA", "--suite", "core", "--max-n", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 failed"));
}

#[test]
fn failing_suite_exits_one() {
    let o = cameronlab(&["verify", "--category", "BA", "--suite", "graphs", "--max-n", "4"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn json_report_matches_golden_file() {
    let o = cameronlab(&[
        "verify", "--category", "OA", "--suite", "homs", "--max-n", "3", "--format", "json", "--no-timings",
    ]);
    assert!(o.status.success());
    let golden = include_str!("golden/oa_homs_n3.json");
    assert_eq!(stdout(&o), golden);
}

#[test]
fn json_report_schema() {
    let o = cameronlab(&["verify", "--category", "CA", "--suite", "graphs", "--max-n", "3", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).expect("valid json");
    assert_eq!(v["suite"], "graphs");
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    for c in checks {
        for key in ["id", "params", "expected", "provenance", "computed", "pass", "status", "runtime_ms"] {
            assert!(c.get(key).is_some(), "missing {key}");
        }
    }
    assert_eq!(v["summary"]["total"].as_u64().unwrap() as usize, checks.len());
}

#[test]
fn csv_has_one_header_for_several_suites() {
    let o = cameronlab(&["verify", "--category", "OA", "--suite", "core,graphs", "--max-n", "3", "--format", "csv"]);
    let out = stdout(&o);
    assert_eq!(out.lines().filter(|l| l.starts_with("suite,")).count(), 1);
    assert!(out.lines().any(|l| l.starts_with("graphs,")));
}
