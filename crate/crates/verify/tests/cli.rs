use std::process::{Command, Output};

use serde_json::Value;

fn quotcodes(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_quotcodes")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited")
}

#[test]
fn reports_are_byte_identical() {
    for args in [&["repro", "example-4.6"][..], &["verify", "lemma-2.3", "--q", "5", "--m", "3"][..]] {
        let a = quotcodes(args);
        let b = quotcodes(args);
        assert_eq!(code(&a), 0, "{}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout);
    }
}

#[test]
fn golden_curve_report() {
    let o = quotcodes(&["--format", "txt", "verify", "curve", "--q", "5", "--m", "3"]);
    assert_eq!(String::from_utf8_lossy(&o.stdout), include_str!("golden/curve_5_3.txt"));
    // the horizontal line count differs from the stated one, hence exit 2
    assert_eq!(code(&o), 2);
}

#[test]
fn theorem_45_at_8_3() {
    let o = quotcodes(&["verify", "theorem-4.5", "--q", "8", "--m", "3", "--d", "1"]);
    assert_eq!(code(&o), 2);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let by_claim = |c: &str| v.as_array().unwrap().iter().find(|r| r["claim"] == c).unwrap().clone();
    assert_eq!(by_claim("theorem-4.5:distance")["verdict"], "match");
    assert_eq!(by_claim("theorem-4.5:supports")["verdict"], "match");
    let count = by_claim("theorem-4.5:count");
    assert_eq!(count["claimed"], "441");
    assert_eq!(count["computed"], "3528");
    assert_eq!(count["verdict"], "mismatch");
    assert!(count.get("runtime_ms").is_none());
}

#[test]
fn example_42_reproduces() {
    let o = quotcodes(&["repro", "example-4.2"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    let r = &v[0];
    assert_eq!(r["computed"], "4");
    assert_eq!(r["witness"]["circuit"]["rechecked"], true);
}

#[test]
fn usage_errors_exit_1() {
    let o = quotcodes(&["verify", "no-such-suite"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("unknown suite"));

    let o = quotcodes(&["params", "--q", "4", "--m", "3"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("does not divide"));

    let o = quotcodes(&["build", "--q", "5", "--m", "3", "--family", "two-point", "--a", "3"]);
    assert_eq!(code(&o), 1);
    assert!(String::from_utf8_lossy(&o.stderr).contains("--b"));

    assert_eq!(code(&quotcodes(&["--format", "yaml", "params", "--q", "5", "--m", "3"])), 1);
}

#[test]
fn build_writes_matrix_file() {
    let dir = std::env::temp_dir().join(format!("quotcodes-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("c.txt");
    let o = quotcodes(&["build", "--q", "5", "--m", "3", "--d", "1", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("65 3 GF(5^2)"));
    assert_eq!(lines.count(), 3);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn csv_and_divisor_flags() {
    let o = quotcodes(&[
        "--format", "csv", "verify", "theorem-5.3", "--q", "7", "--m", "4", "--d", "2", "--E", "origin:1",
    ]);
    assert_eq!(code(&o), 0);
    let text = String::from_utf8(o.stdout).unwrap();
    let mut r = csv::Reader::from_reader(text.as_bytes());
    let rows: Vec<csv::StringRecord> = r.records().map(Result::unwrap).collect();
    assert_eq!(rows.len(), 5);
    assert_eq!(&rows[0][6], "(0, 0):1");

    let o = quotcodes(&["dual-distance", "--q", "5", "--m", "3", "--d", "1", "--E", "(0, 0):1"]);
    assert_eq!(code(&o), 0);
    let v: Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["n"], 64);
}
