use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_frobcong")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf-8 output")
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().expect("exit code")
}

fn success(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?} failed: {}", String::from_utf8_lossy(&out.stderr));
    stdout(&out)
}

#[test]
fn expand_prints_leading_terms() {
    assert_eq!(success(&["expand", "t", "--trunc", "4"]).trim(), "q + 6q^2 + 27q^3");
    assert_eq!(success(&["expand", "z", "--trunc", "1"]).trim(), "1");
    assert_eq!(success(&["expand", "cpsi21", "--trunc", "4"]).trim(), "1 + 4q + 9q^2 + 20q^3");
}

#[test]
fn expand_json_lists_coefficients() {
    let v: Value = serde_json::from_str(&success(&["--json", "expand", "t", "--trunc", "3"])).unwrap();
    assert_eq!(v["symbol"], "t");
    assert_eq!(v["leading_exponent"], 1);
    assert_eq!(v["truncation"], 3);
    assert_eq!(v["coefficients"], serde_json::json!([1, 6]));
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&["expand", "no-such-symbol", "--trunc", "5"]), 2);
    assert_eq!(code(&["expand", "t", "--trunc", "0"]), 2);
    assert_eq!(code(&["verify", "no-such-id"]), 2);
    assert_eq!(code(&["verify", "reflexive", "--trunc", "10"]), 2);
    assert_eq!(code(&["scan", "cphi2", "--alpha", "0"]), 2);
    assert_eq!(code(&["scan", "no-such-family"]), 2);
    assert_eq!(code(&["transform", "x", "--matrix", "1,2,3"]), 2);
    assert_eq!(code(&["--jobs", "0", "list"]), 2);
}

#[test]
fn budget_errors_exit_3() {
    assert_eq!(code(&["scan", "cphi2", "--alpha", "9"]), 3);
    assert_eq!(code(&["oracle", "--nmax", "99"]), 3);
}

#[test]
fn unsupported_transforms_exit_4() {
    assert_eq!(code(&["transform", "A1", "--matrix", "1,0,2,1"]), 4);
    assert_eq!(code(&["transform", "phi", "--named", "W"]), 4);
}

#[test]
fn transform_images() {
    assert_eq!(success(&["transform", "x", "--named", "W"]).trim(), "-1/4 * eta(2)eta(10)^3 / (eta(4)^3 eta(20))");
    let x = success(&["list"]).lines().find(|l| l.starts_with("x\t")).unwrap().split('\t').nth(1).unwrap().to_string();
    assert_eq!(success(&["transform", "x", "--matrix", "1,0,0,1"]).trim(), x);
    let v: Value = serde_json::from_str(&success(&["--json", "transform", "t", "--matrix", "2,1,5,3"])).unwrap();
    assert_eq!(v["constant"], "1");
    assert_eq!(v["image"], "eta(5)^6 / (eta(1)^6)");
}

#[test]
fn verify_reports_are_deterministic_json() {
    let args = ["--json", "verify", "reflexive", "--trunc", "60"];
    let a = success(&args);
    assert_eq!(a, success(&args));
    let v: Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["id"], "reflexive");
    assert_eq!(v["status"], "pass");
    assert_eq!(v["truncation"], 60);
    assert!(v["first_mismatch"].is_null());
}

#[test]
fn verify_text_line() {
    assert_eq!(success(&["verify", "pentagonal", "--trunc", "100"]).trim(), "pentagonal: pass (T = 100)");
}

#[test]
fn scans_pass() {
    let out = success(&["scan", "cphi2", "--alpha", "1", "--nmax", "500"]);
    assert!(out.starts_with("cphi2 alpha=1: pass"), "{out}");
    assert!(out.contains("L_1: pass"), "{out}");
    assert!(success(&["scan", "ph3", "--alpha", "1", "--nmax", "500"]).contains("pass"));
}

#[test]
fn list_names_generators() {
    let out = success(&["list"]);
    for symbol in ["t", "x", "y", "z"] {
        assert!(out.lines().any(|l| l.starts_with(&format!("{symbol}\t"))), "missing {symbol}");
    }
    let v: Value = serde_json::from_str(&success(&["--json", "list"])).unwrap();
    assert_eq!(v.as_array().unwrap().len(), out.lines().count());
}

#[test]
fn oracle_agrees() {
    let out = success(&["oracle", "--nmax", "8"]);
    assert_eq!(out.lines().count(), 2);
    assert!(out.lines().all(|l| l.ends_with("pass")), "{out}");
}

#[test]
fn cache_writes_and_reuses_golden_files() {
    let dir: PathBuf = std::env::temp_dir().join(format!("frobcong-cache-{}", std::process::id()));
    let _ = fs::remove_dir_all(&dir);
    let d = dir.to_str().unwrap();
    let first = success(&["--cache", d, "expand", "t", "--trunc", "20"]);
    assert!(dir.join("t_20.txt").exists());
    let second = success(&["--cache", d, "expand", "t", "--trunc", "20"]);
    assert_eq!(first, second);
    assert_eq!(first, success(&["expand", "t", "--trunc", "20"]));
    fs::remove_dir_all(&dir).unwrap();
}
