//! Exit-code and output contract of the command-line interface.

use std::fs;
use std::path::Path;
use std::process::Command;

fn binary() -> Command {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_vgc"));
    cmd.env_remove("VGC_FIXTURES");
    cmd
}

fn fixture(name: &str) -> std::path::PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

#[test]
fn group_order_prints_a_bare_integer() {
    let out = binary()
        .args(["group", "--order", "--file"])
        .arg(fixture("g216.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "216");
}

#[test]
fn group_summary_names_the_generators() {
    let out = binary()
        .args(["group", "--file"])
        .arg(fixture("s4_rho.json"))
        .output()
        .unwrap();
    assert!(out.status.success());
    let stdout = String::from_utf8_lossy(&out.stdout);
    assert!(stdout.contains("order 24"), "{stdout}");
    assert!(stdout.contains("s, t, l1, l2"), "{stdout}");
}

#[test]
fn malformed_group_file_is_a_config_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("broken.json");
    fs::write(&path, "{\"name\": \"x\", nope").unwrap();
    let out = binary().args(["group", "--file"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let stderr = String::from_utf8_lossy(&out.stderr);
    assert!(stderr.contains("line"), "{stderr}");
}

#[test]
fn unreadable_fixture_directory_is_a_config_error() {
    let out = binary()
        .args(["run", "--suite", "group", "--fixtures", "/nonexistent/fixture-dir"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("fixture"));
}

#[test]
fn empty_selection_warns_and_reports_nothing() {
    let out = binary().args(["run", "--format", "json"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("no suites selected"));
    let report: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("valid JSON report");
    assert_eq!(report["suite"], "");
    assert_eq!(report["checks"], serde_json::json!([]));
}

#[test]
fn unknown_suite_name_is_rejected_by_the_parser() {
    let out = binary().args(["run", "--suite", "bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn report_can_be_written_to_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = binary()
        .args(["run", "--suite", "picard", "--format", "json", "--out"])
        .arg(&path)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let report: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(report["suite"], "picard");
    assert_eq!(report["checks"].as_array().unwrap().len(), 4);
}

#[test]
fn fixtures_env_var_is_honored() {
    let out = Command::new(env!("CARGO_BIN_EXE_vgc"))
        .env("VGC_FIXTURES", "/nonexistent/fixture-dir")
        .args(["run", "--suite", "picard"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}
