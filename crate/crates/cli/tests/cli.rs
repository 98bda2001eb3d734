//! End-to-end runs of the `peakless` binary.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_peakless"))
        .args(args)
        .env_remove("PEAKLESS_ORACLE_CAP")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn count_prints_sequence() {
    assert_eq!(stdout(&["count", "-n", "6"]), "1 1 1 2 4 8 17\n");
}

#[test]
fn count_csv_and_json() {
    assert_eq!(
        stdout(&["count", "-n", "3", "--format", "csv"]),
        "n,count\n0,1\n1,1\n2,1\n3,2\n"
    );
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["count", "-n", "4", "--format", "json"])).unwrap();
    assert_eq!(v["values"], serde_json::json!(["1", "1", "1", "2", "4"]));
}

#[test]
fn dist_prints_summary() {
    assert_eq!(stdout(&["dist", "-n", "4"]), "0:1 1:3  E[H]=3/4\n");
}

#[test]
fn enumerate_peakless_four() {
    assert_eq!(
        stdout(&["enumerate", "-n", "4", "--peakless"]),
        "FFFF\nFUFD\nUFFD\nUFDF\n"
    );
    assert_eq!(stdout(&["enumerate", "-n", "4"]).lines().count(), 9);
}

#[test]
fn bounded_single_row_and_table() {
    assert_eq!(
        stdout(&["bounded", "-n", "8", "-l", "1"]),
        "1 1 1 2 4 7 12 21 37\n"
    );
    assert_eq!(stdout(&["bounded", "-n", "4", "-l", "0"]), "1 1 1 1 1\n");
    let table = stdout(&[
        "bounded", "-n", "10", "-l", "4", "--table", "--format", "csv",
    ]);
    assert_eq!(table, stdout(&["export", "table", "-n", "10", "-l", "4"]));
    assert!(table.starts_with("n,ell,count\n0,0,1\n"));
    assert_eq!(table.lines().count(), 1 + 11 * 5);
}

#[test]
fn oracle_cap_exceeded_exits_three() {
    let out = run(&["enumerate", "-n", "20"]);
    assert_eq!(out.status.code(), Some(3));
    let out = run(&["enumerate", "-n", "5", "--oracle-cap", "4"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn oracle_cap_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_peakless"))
        .args(["enumerate", "-n", "6", "--peakless"])
        .env("PEAKLESS_ORACLE_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn resource_limit_exits_three() {
    assert_eq!(run(&["asympt", "-n", "100000"]).status.code(), Some(3));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(run(&["bogus"]).status.code(), Some(2));
    assert_eq!(run(&["count"]).status.code(), Some(2));
    assert_eq!(run(&["asympt", "-n", "0"]).status.code(), Some(2));
    assert_eq!(
        run(&["count", "-n", "3", "--format", "xml"]).status.code(),
        Some(2)
    );
}

#[test]
fn verify_quick_passes_with_json_report() {
    let text = stdout(&["verify", "quick", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    let checks = v["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["passed"] == true));
}

#[test]
fn asympt_report_csv() {
    let csv = stdout(&[
        "asympt", "--kind", "count", "-n", "250,500", "--format", "csv",
    ]);
    let mut lines = csv.lines();
    assert_eq!(lines.next(), Some("n,exact,predicted,ratio"));
    assert_eq!(lines.count(), 2);
    let avg = stdout(&["export", "report", "--kind", "avg_height", "-n", "50"]);
    assert!(avg.starts_with("n,exact,predicted,ratio\n50,"));
}

#[test]
fn output_is_byte_stable() {
    for args in [
        &[
            "bounded", "-n", "30", "-l", "6", "--table", "--format", "csv", "--jobs", "1",
        ][..],
        &[
            "bounded", "-n", "30", "-l", "6", "--table", "--format", "csv", "--jobs", "4",
        ][..],
        &["dist", "-n", "40", "--format", "json"][..],
        &[
            "asympt",
            "-n",
            "100,200",
            "--kind",
            "avg_height",
            "--format",
            "json",
        ][..],
    ] {
        assert_eq!(run(args).stdout, run(args).stdout, "{args:?}");
    }
    assert_eq!(
        run(&["export", "table", "-n", "30", "-l", "6", "--jobs", "1"]).stdout,
        run(&["export", "table", "-n", "30", "-l", "6", "--jobs", "4"]).stdout
    );
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("peakless-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("fixture.txt");
    let out = run(&["export", "fixture", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let body = std::fs::read_to_string(&path).unwrap();
    assert!(body.contains("17 175502 DERIVED-bruteforce"), "{body}");
    std::fs::remove_dir_all(&dir).unwrap();
}
