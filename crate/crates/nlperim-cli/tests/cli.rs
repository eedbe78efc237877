//! End-to-end checks of the command-line interface.

use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_nlperim"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("binary runs")
}

fn tmp(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join("nlperim-cli-tests");
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

#[test]
fn perimeter_grid_input() {
    let path = tmp("square2.txt", "##\n##\n");
    let out = run(&["perimeter", "--lambda", "2", "--input", path.to_str().unwrap()]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["classical"], 8);
    let total: f64 = v["total"].as_str().unwrap().parse().unwrap();
    // 8 (2 zeta(2) - 1)
    let expect = 8.0 * (2.0 * std::f64::consts::PI.powi(2) / 6.0 - 1.0);
    assert!((total - expect).abs() < 1e-9);
}

#[test]
fn perimeter_direct_flag_and_pairs_input() {
    let path = tmp("pair.txt", "0 0\n2 0\n");
    let out = run(&[
        "perimeter", "--lambda", "2", "--input", path.to_str().unwrap(), "--direct", "--window", "128",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let gap: f64 = v["direct_gap"].as_str().unwrap().parse().unwrap();
    assert!(gap.abs() < 1e-9);
}

#[test]
fn perimeter_missing_file_exits_one() {
    let out = run(&["perimeter", "--lambda", "2", "--input", "/nonexistent/poly.txt"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn reduce_writes_terminal_and_trace() {
    let path = tmp("u.txt", "#.#\n###\n");
    let trace = std::env::temp_dir().join("nlperim-cli-tests/u-trace.json");
    let out = run(&[
        "reduce", "--lambda", "2", "--input", path.to_str().unwrap(), "--trace", trace.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert_eq!(stdout.lines().count(), 5, "five cells out");
    let tr: serde_json::Value = serde_json::from_str(&fs::read_to_string(&trace).unwrap()).unwrap();
    assert_eq!(tr["terminal_class"], "ReducedStrictly");
}

#[test]
fn minimizers_csv_shape_and_determinism() {
    let a = run(&["minimizers", "--lambda", "2", "--n-max", "12"]);
    let b = run(&["minimizers", "--lambda", "2", "--n-max", "12"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout, "byte-identical reruns");
    let text = String::from_utf8(a.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("# schema=1"));
    assert_eq!(lines.next(), Some("n,shape,per_lambda,classical_per"));
    // n = 10 lists both candidates
    let ten: Vec<&str> = text.lines().filter(|l| l.starts_with("10,")).collect();
    assert_eq!(ten.len(), 2, "{ten:?}");
}

#[test]
fn crossover_json() {
    let out = run(&["crossover", "--n", "10"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    let root: f64 = v["lambda_star"].as_str().unwrap().parse().unwrap();
    assert!((root - 3.278_684).abs() < 1e-4);
    assert_eq!(v["shapes"].as_array().unwrap().len(), 2);
}

#[test]
fn verify_exit_codes() {
    let out = run(&["verify", "--lambda", "2.5", "--n", "6", "--samples", "50"]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["count_connected"], 216);
}

#[test]
fn landscape_critlen_d2_csv() {
    let out = run(&["landscape", "--lambda", "2.4", "--h", "0.41", "--n-max", "30"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("# schema=1\nn,shape,delta_h\n"));
    assert_eq!(text.lines().count(), 32);

    let out = run(&["critlen", "--h", "0.41", "--lambda-min", "2.2", "--lambda-max", "2.6", "--steps", "2", "--l-max", "40"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("lambda,l_c,f_at_l_c"));

    let out = run(&["d2", "--h", "0.4", "--lambda-min", "2.5", "--lambda-max", "3.0", "--steps", "1", "--l-max", "5"]);
    assert!(out.status.success());
}

#[test]
fn diagnostics_flags_corner_violations() {
    let clean = run(&["diagnostics", "--lambda", "2.0", "--l-max", "20"]);
    assert_eq!(clean.status.code(), Some(0), "{}", String::from_utf8_lossy(&clean.stdout));
    let flagged = run(&["diagnostics", "--lambda", "1.81", "--l-max", "20"]);
    assert_eq!(flagged.status.code(), Some(2));
    let v: serde_json::Value = serde_json::from_slice(&flagged.stdout).unwrap();
    assert!(v["violations"].as_u64().unwrap() >= 7);
}
