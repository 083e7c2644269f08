use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

fn torvanish(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_torvanish"))
        .current_dir(dir)
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn success_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    let o = torvanish(
        dir.path(),
        &["tor", "--ring", "F32003[x,y]/(x*y)", "--M", "R/(x)", "--N", "R/(x)", "--bound", "6"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), fs::read_to_string(golden("tor_example.json")).unwrap());
}

#[test]
fn out_flag_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = torvanish(
        dir.path(),
        &["serre", "--n", "2", "--ring", "F32003[x,y]/(x*y)", "--M", "R/(x)", "--out", "serre.json"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(o.stdout.is_empty());
    let v: serde_json::Value = serde_json::from_str(&fs::read_to_string(dir.path().join("serre.json")).unwrap()).unwrap();
    assert_eq!(v["verdict"], "satisfies");
    assert_eq!(v["config"]["out"], "serre.json");
}

#[test]
fn violation_writes_quarantine() {
    let dir = tempfile::tempdir().unwrap();
    let o = torvanish(
        dir.path(),
        &[
            "rigidity", "--ring", "F32003[x,y]/(x*y)", "--M", "R/(x)", "--N", "R/(y)", "--n", "1", "--bound", "6",
            "--quarantine", "q.json",
        ],
    );
    assert_eq!(o.status.code(), Some(1));
    let q = fs::read_to_string(dir.path().join("q.json")).unwrap();
    assert_eq!(q, fs::read_to_string(golden("rigidity_quarantine.json")).unwrap());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["quarantine"], "q.json");
}

#[test]
fn consistent_rigidity_writes_nothing() {
    let dir = tempfile::tempdir().unwrap();
    let o = torvanish(
        dir.path(),
        &["rigidity", "--ring", "F32003[x,y]/(x*y)", "--M", "R/(x)", "--N", "R/(y)", "--n", "2", "--bound", "6"],
    );
    assert_eq!(o.status.code(), Some(0));
    assert!(!dir.path().join("quarantine.json").exists());
}

#[test]
fn parse_error_matches_golden() {
    let dir = tempfile::tempdir().unwrap();
    fs::copy(golden("bad_input.txt"), dir.path().join("bad_input.txt")).unwrap();
    let o = torvanish(dir.path(), &["depth", "--input", "bad_input.txt"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(stdout(&o), fs::read_to_string(golden("parse_error.json")).unwrap());
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad_input.txt:3:18: unknown variable `z`"), "{err}");
}

#[test]
fn unknown_flag_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    let o = torvanish(dir.path(), &["tor", "--frobnicate"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn harness_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let a = torvanish(dir.path(), &["harness", "--seed", "0", "--report", "a.json"]);
    let b = torvanish(dir.path(), &["harness", "--seed", "0", "--report", "b.json"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(b.status.code(), Some(0));
    let ra = fs::read(dir.path().join("a.json")).unwrap();
    let rb = fs::read(dir.path().join("b.json")).unwrap();
    assert!(!ra.is_empty());
    assert_eq!(ra, rb);
    let sa = stdout(&a).replace("a.json", "");
    let sb = stdout(&b).replace("b.json", "");
    assert_eq!(sa, sb);
    assert!(!dir.path().join("quarantine.json").exists());
}
