//! Black-box checks of the command-line interface: golden outputs,
//! determinism, and exit codes.

use std::process::Command;

fn atkin(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_atkin"))
        .args(args)
        .output()
        .expect("binary runs")
}

#[test]
fn golden_outputs() {
    let out = atkin(&["atkin-poly", "--r", "2", "--n", "1", "--format", "text"]);
    assert!(out.status.success());
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "X - 720");

    let out = atkin(&["extremal", "--weight", "12", "--terms", "8", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        v["series"]["coefficients"],
        serde_json::json!([0, 0, 1, 56, 1002, 9296, 57708, 269040])
    );

    let out = atkin(&["faber", "--k", "0", "--n", "1", "--format", "latex"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "X - 744");
}

#[test]
fn deterministic_output() {
    let args = ["cfrac", "--depth", "4", "--format", "json"];
    let a = atkin(&args);
    let b = atkin(&args);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn exit_codes() {
    // Invalid input -> 2.
    let out = atkin(&["atkin-poly", "--r", "3", "--n", "1"]);
    assert_eq!(out.status.code(), Some(2));
    let out = atkin(&["congruence", "--p", "9"]);
    assert_eq!(out.status.code(), Some(2));
    let out = atkin(&["verify", "--suite", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));
    // A passing verification suite -> 0, with machine-clean stdout.
    let out = atkin(&["verify", "--suite", "congruence", "--pmax", "13", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["all_pass"], serde_json::json!(true));
}
