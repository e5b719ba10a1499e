use std::process::Command;

use clap::Parser;
use kummer_cli::config::{Cli, JobConfig};
use kummer_cli::{cache, execute};
use serde_json::{json, Value};

const ELLIPTIC: &[&str] = &["kummer", "zeta", "--p", "7", "--t", "2", "--pi", "x^3 - x"];

fn run(args: &[&str]) -> kummer_cli::Outcome {
    execute(args.iter().copied())
}

fn doc(args: &[&str]) -> Value {
    let out = run(args);
    assert_eq!(out.code, 0, "{}", out.stderr);
    serde_json::from_str(&out.stdout).unwrap()
}

fn with(base: &[&str], extra: &[&str]) -> Vec<String> {
    base.iter().chain(extra).map(|s| s.to_string()).collect()
}

#[test]
fn zeta_of_the_elliptic_curve() {
    let d = doc(ELLIPTIC);
    assert_eq!(d["schema"], 1);
    assert_eq!(d["ok"], true);
    assert_eq!(d["eigenspaces"][0]["char_poly"], json!([7, 0, 1]));
    assert_eq!(d["zeta"]["counts"], json!([4, 60]));
    assert_eq!(d["zeta"]["denominator"], json!([1, -7]));
}

#[test]
fn coefficient_list_matches_expression() {
    let a = doc(ELLIPTIC);
    let b = doc(&["kummer", "zeta", "--p", "7", "--t", "2", "--coeffs", "[0, -1, 0, 1]"]);
    assert_eq!(a, b);
}

#[test]
fn dl_with_verification() {
    let d = doc(&["kummer", "dl", "--d", "1", "--q", "2", "--verify"]);
    assert_eq!(d["hodge"]["h"], json!([1, 2]));
    assert_eq!(d["hodge"]["alternating"], 1);
    assert!(d["checks"].as_array().unwrap().iter().all(|c| c["ok"] == true));
}

#[test]
fn usage_errors_exit_with_two() {
    // p | t
    assert_eq!(run(&["kummer", "zeta", "--p", "3", "--t", "3", "--pi", "x"]).code, 2);
    assert_eq!(run(&["kummer", "zeta", "--p", "7", "--t", "2", "--pi", "x^3 - "]).code, 2);
    assert_eq!(run(&["kummer", "zeta", "--p", "7", "--t", "2", "--pi", "x", "--bogus"]).code, 2);
    assert_eq!(run(&["kummer", "zeta", "--p", "7", "--t", "2", "--pi", "5"]).code, 2);
    // x^2 + x^3 over F_5 is singular at 0 only for j = 2
    let out = run(&["kummer", "eigenspaces", "--p", "5", "--t", "4", "--pi", "x^2 + x^3", "--j", "2"]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.is_empty());
    assert_eq!(run(&["kummer", "--help"]).code, 0);
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let base = with(ELLIPTIC, &["--cache-dir", dir.path().to_str().unwrap()]);
    let first = execute(base.clone());
    let second = execute(base.clone());
    assert_eq!(first.stderr.trim(), r#"{"cache_hit":false}"#);
    assert_eq!(second.stderr.trim(), r#"{"cache_hit":true}"#);
    assert_eq!(first.stdout, second.stdout);

    let cli = Cli::try_parse_from(&base).unwrap();
    let job = JobConfig::from_cli(&cli);
    let key = cache::key(&job.canonical().unwrap());
    let mut other = job.clone();
    other.precision.0 = Some(8);
    assert_ne!(cache::key(&other.canonical().unwrap()), key);
    // budgets and threads do not change results
    let mut same = job.clone();
    same.threads = Some(3);
    same.count_budget = Some(1);
    assert_eq!(cache::key(&same.canonical().unwrap()), key);

    let path = cache::path(dir.path(), &key);
    let text = std::fs::read(&path).unwrap();
    std::fs::write(&path, &text[..text.len() / 2]).unwrap();
    assert_eq!(cache::get(dir.path(), &key), None);
    let third = execute(base);
    assert_eq!(third.stderr.trim(), r#"{"cache_hit":false}"#);
    assert_eq!(third.stdout, first.stdout);
}

#[test]
fn thread_count_does_not_change_output() {
    let one = execute(with(ELLIPTIC, &["--threads", "1"]));
    let four = execute(with(ELLIPTIC, &["--threads", "4"]));
    assert_eq!(one.stdout, four.stdout);
    let v1 = run(&["kummer", "--threads", "1", "verify"]);
    let v4 = run(&["kummer", "--threads", "4", "verify"]);
    assert_eq!(v1.code, 0);
    assert_eq!(v1.stdout, v4.stdout);
}

#[test]
fn job_config_round_trips_through_json() {
    let cli = Cli::try_parse_from(with(ELLIPTIC, &["--precision", "5", "--lift", "naive"])).unwrap();
    let job = JobConfig::from_cli(&cli);
    let text = serde_json::to_string(&job).unwrap();
    let back: JobConfig = serde_json::from_str(&text).unwrap();
    assert_eq!(back, job);
    assert_eq!(job.canonical().unwrap()["pi"], json!([[0], [6], [0], [1]]));
}

#[test]
fn out_writes_the_report() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("zeta.json");
    let out = execute(with(ELLIPTIC, &["--out", path.to_str().unwrap()]));
    assert_eq!(out.code, 0);
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(&path).unwrap(), run(ELLIPTIC).stdout);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_kummer");
    let ok = Command::new(bin).args(&ELLIPTIC[1..]).env_remove("KUMMER_CACHE_DIR").output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), run(ELLIPTIC).stdout);
    let bad = Command::new(bin).args(["zeta", "--p", "4", "--t", "3", "--pi", "x"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
}
