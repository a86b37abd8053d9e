use std::path::PathBuf;
use std::process::{Command, Output};

use bkit::report::Report;

fn bkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bkit"))
        .args(args)
        .current_dir(PathBuf::from(env!("CARGO_MANIFEST_DIR")))
        .env_remove("BKIT_BOUND")
        .output()
        .expect("bkit runs")
}

fn stdout(args: &[&str]) -> String {
    let out = bkit(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn every_data_file_validates() {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        let rel = format!("data/{}", path.file_name().unwrap().to_string_lossy());
        assert!(stdout(&["validate", &rel]).starts_with("valid "), "{rel}");
    }
}

#[test]
fn json_report_round_trips() {
    let text = stdout(&["--json", "pi0", "data/par.fincat"]);
    let report: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(report.command, "pi0");
    assert_eq!(report.result["components"], 1);
    assert_eq!(report.inputs.len(), 1);
    assert!(report.timing_ms.is_none());
    assert_eq!(report.to_json(), text);
}

#[test]
fn timing_is_opt_in() {
    let text = stdout(&["--json", "--timing", "thin", "data/par.fincat"]);
    let report: Report = serde_json::from_str(&text).unwrap();
    assert!(report.timing_ms.is_some());
}

#[test]
fn input_errors_exit_with_two() {
    for args in [
        &["pi0", "data/missing.fincat"][..],
        &["kan", "data/pick1.fun", "data/up0.cpsh"],
        &["slice", "data/two.fincat", "7"],
        &["check-laws", "--suite", "nope"],
        &["no-such-command"],
        &["pi0"],
    ] {
        assert_eq!(bkit(args).status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn bound_override() {
    let out = Command::new(env!("CARGO_BIN_EXE_bkit"))
        .args(["orthogonal", "data/pick1.fun", "data/collapse.fun"])
        .current_dir(PathBuf::from(env!("CARGO_MANIFEST_DIR")))
        .env("BKIT_BOUND", "1,1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let out = Command::new(env!("CARGO_BIN_EXE_bkit"))
        .args(["orthogonal", "data/pick1.fun", "data/collapse.fun"])
        .env("BKIT_BOUND", "banana")
        .current_dir(PathBuf::from(env!("CARGO_MANIFEST_DIR")))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn documented_commands() {
    assert!(stdout(&["neighborhood", "data/two.fincat", "1"]).contains("{0, 1}"));
    assert!(stdout(&["closure", "data/two.fincat", "1"]).contains("{1}"));
    assert_eq!(stdout(&["is-final", "data/pick1.fun"]), "final: true\n");
    assert_eq!(stdout(&["is-initial", "data/pick1.fun"]), "initial: false\n");
    assert_eq!(stdout(&["covering", "data/collapse.fun"]), "covering: false\n");
    assert!(stdout(&["duality", "data/idem.fincat"]).contains("slice duality: true"));
    assert!(stdout(&["pi1-retract", "data/pick1.fun", "data/collapse.fun", "data/pair2.cpsh"]).contains("unit iso: true"));
    assert_eq!(stdout(&["pos-tensor", "data/vee.fpos", "--up", "t", "--down", "a"]), "tensor: false\n");
    assert_eq!(stdout(&["pos-tensor", "data/chain3.fpos", "--up", "1,2", "--down", "0,1"]), "tensor: true\n");
    assert!(stdout(&["check-laws", "--suite", "atoms", "--suite", "kan-oracle", "--cases", "5"]).contains("0 failed"));
}
