//! End-to-end tests of the kmforms binary: exit codes, output formats and
//! cache behaviour.

use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_kmforms"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn temp_dir(tag: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kmforms-cli-{tag}-{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn verify_eq_1_8_reports_match() {
    let out = run(&["verify", "eq1.8", "--order", "8"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("PASS"));
    assert!(text.contains("-9"));
    assert!(text.contains("27"));
    assert!(text.contains("-12"));
}

#[test]
fn delta5_json_contains_leading_coefficient() {
    let out = run(&["delta5", "--trace", "12", "--format", "json", "--no-cache"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("[1,1,1,\"64\"]"), "{text}");
    assert!(text.contains("\"form\":\"delta5\""));
}

#[test]
fn weyl_counts() {
    let out = run(&["weyl", "1", "--max-len", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).contains("22"));
    let out = run(&["weyl", "2", "--max-len", "3"]);
    assert!(stdout(&out).contains("53"));
}

#[test]
fn unknown_subcommand_is_usage_error() {
    let out = run(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn unknown_check_is_usage_error() {
    let out = run(&["verify", "nonsense-check"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn tampered_table_fails_symmetry_audit_with_exit_1() {
    let dir = temp_dir("tamper");
    let path = dir.join("delta5.json");
    let out = run(&[
        "delta5",
        "--trace",
        "8",
        "--no-cache",
        "--output",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    // Clean table passes.
    let out = run(&["verify", "symmetry", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    // Break the f(n,l,m) = -f(n,-l,m) antisymmetry.
    let text = std::fs::read_to_string(&path).unwrap();
    let tampered = text.replacen("[1,1,1,\"64\"]", "[1,1,1,\"128\"]", 1);
    assert_ne!(text, tampered);
    std::fs::write(&path, tampered).unwrap();
    let out = run(&["verify", "symmetry", "--input", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("VIOLATION"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn cache_round_trip_is_deterministic() {
    let dir = temp_dir("cache");
    let cache = dir.join("cache");
    let args = |trace: &str| {
        vec![
            "delta5".to_string(),
            "--trace".to_string(),
            trace.to_string(),
            "--cache-dir".to_string(),
            cache.to_str().unwrap().to_string(),
        ]
    };
    let first = run(&args("10").iter().map(String::as_str).collect::<Vec<_>>());
    assert!(first.status.success());
    let second = run(&args("10").iter().map(String::as_str).collect::<Vec<_>>());
    assert_eq!(stdout(&first), stdout(&second));
    // A shallower request is served from the deep cache entry and matches
    // a direct computation byte for byte.
    let served = run(&args("8").iter().map(String::as_str).collect::<Vec<_>>());
    let direct = run(&["delta5", "--trace", "8", "--no-cache"]);
    assert_eq!(stdout(&served), stdout(&direct));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn cache_env_var_is_honored() {
    let dir = temp_dir("envcache");
    let out = bin()
        .args(["delta5", "--trace", "8"])
        .env("KMFORMS_CACHE", &dir)
        .output()
        .unwrap();
    assert!(out.status.success());
    let entries: Vec<_> = std::fs::read_dir(&dir).unwrap().flatten().collect();
    assert_eq!(entries.len(), 1);
    assert!(entries[0].file_name().to_string_lossy().ends_with(".json.gz"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn multiplicities_json_shape() {
    let out = run(&["multiplicities", "1", "--trace", "10"]);
    assert!(out.status.success());
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["example"], 1);
    assert_eq!(doc["normalizer"], 1);
    assert!(doc["m"].as_array().unwrap().len() > 3);
    assert_eq!(doc["rays"].as_array().unwrap().len(), 3);
}

#[test]
fn jacobi_phi01_csv() {
    let out = run(&["jacobi", "phi01", "--order", "2", "--format", "csv"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.starts_with("n,l,c\n"));
    assert!(text.contains("1,-1,-64"));
    assert!(text.contains("0,0,10"));
}
