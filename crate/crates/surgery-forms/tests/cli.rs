//! End-to-end checks of the thin command-line binary: exit codes and
//! a construct → transfer → forget round trip through JSON files.

use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_surgery-forms"))
}

#[test]
fn selftest_exits_zero() {
    let out = bin().arg("selftest").output().unwrap();
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(out.status.success(), "selftest failed:\n{}", text);
    assert_eq!(text.lines().filter(|l| l.starts_with("PASS")).count(), 10);
}

#[test]
fn unknown_verb_is_usage_error() {
    let out = bin().arg("frobnicate").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn missing_fixtures_is_environment_error() {
    let out = bin()
        .arg("selftest")
        .env("SURGERY_FORMS_FIXTURES", "/nonexistent")
        .current_dir(std::env::temp_dir())
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn construct_transfer_signature_pipeline() {
    let dir = std::env::temp_dir().join("surgery-forms-cli-test");
    std::fs::create_dir_all(&dir).unwrap();
    let e8 = dir.join("e8.json");
    let status = bin()
        .args(["construct", "e8", "--out"])
        .arg(&e8)
        .status()
        .unwrap();
    assert!(status.success());
    let out = bin().args(["signature", "--input"]).arg(&e8).output().unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "8");

    let alpha = dir.join("alpha.json");
    assert!(bin()
        .args(["construct", "alpha", "--out"])
        .arg(&alpha)
        .status()
        .unwrap()
        .success());
    let out = bin()
        .args(["transfer", "--k", "2,1", "--input"])
        .arg(&alpha)
        .output()
        .unwrap();
    assert!(out.status.success());
    let value: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(value["matrix"]["rows"], 4);
}
