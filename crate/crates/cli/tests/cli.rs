//! End-to-end tests of the binary through its public surface.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_ball-approx"))
}

fn tmp_dir(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("ball_approx_cli_{name}_{}", std::process::id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn read(dir: &Path, name: &str) -> String {
    std::fs::read_to_string(dir.join(name))
        .unwrap_or_else(|_| panic!("missing artifact {name} in {}", dir.display()))
}

fn assert_success(output: &Output) {
    assert!(
        output.status.success(),
        "command failed\nstdout: {}\nstderr: {}",
        String::from_utf8_lossy(&output.stdout),
        String::from_utf8_lossy(&output.stderr)
    );
}

#[test]
fn verify_passes_and_writes_report() {
    let dir = tmp_dir("verify");
    let output = bin()
        .args(["verify", "--points", "300", "--draws", "2"])
        .args(["--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert_success(&output);
    let report = read(&dir, "verify_report.json");
    assert!(report.contains("tournament-min-equivalence"));
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("[PASS] tournament-min-equivalence"));
}

#[test]
fn verify_negative_control_fails() {
    let output = bin()
        .args(["verify", "--points", "100", "--draws", "1", "--negative-control"])
        .output()
        .unwrap();
    assert!(!output.status.success(), "negative control must exit nonzero");
    let stdout = String::from_utf8_lossy(&output.stdout);
    assert!(stdout.contains("[FAIL] tournament-min-equivalence"));
}

#[test]
fn train_zero_horizon_single_row() {
    let dir = tmp_dir("train0");
    let output = bin()
        .args(["train", "--horizon", "0", "--samples", "2000"])
        .args(["--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert_success(&output);
    let trace = read(&dir, "trace.csv");
    let lines: Vec<&str> = trace.lines().collect();
    assert_eq!(lines.len(), 2, "header plus the single t=0 row");
    assert!(lines[1].starts_with("0,"));
}

#[test]
fn train_runs_are_bitwise_reproducible() {
    let args = [
        "train",
        "--horizon",
        "2000",
        "--samples",
        "4000",
        "--every-k",
        "200",
        "--seed",
        "11",
    ];
    let dir_a = tmp_dir("repro_a");
    let dir_b = tmp_dir("repro_b");
    for dir in [&dir_a, &dir_b] {
        let output = bin()
            .args(args)
            .args(["--out", dir.to_str().unwrap()])
            .output()
            .unwrap();
        assert_success(&output);
    }
    assert_eq!(
        read(&dir_a, "trace.csv"),
        read(&dir_b, "trace.csv"),
        "identical configs must produce byte-identical traces"
    );
    assert_eq!(read(&dir_a, "family.json"), read(&dir_b, "family.json"));
}

#[test]
fn config_echo_round_trip_reproduces_run() {
    let dir_a = tmp_dir("echo_a");
    let output = bin()
        .args(["train", "--horizon", "1000", "--samples", "3000", "--every-k", "100"])
        .args(["--seed", "3", "--out", dir_a.to_str().unwrap()])
        .output()
        .unwrap();
    assert_success(&output);
    // Re-run purely from the echoed configuration.
    let dir_b = tmp_dir("echo_b");
    let echo = dir_a.join("run_config.json");
    let output = bin()
        .args(["train", "--config", echo.to_str().unwrap()])
        .args(["--out", dir_b.to_str().unwrap()])
        .output()
        .unwrap();
    assert_success(&output);
    assert_eq!(read(&dir_a, "trace.csv"), read(&dir_b, "trace.csv"));
}

#[test]
fn fourier_gibbs_preset_sets_flag() {
    let dir = tmp_dir("gibbs");
    let output = bin()
        .args(["fourier", "--preset", "gibbs"])
        .args(["--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert_success(&output);
    let flags = read(&dir, "fourier_flags.json");
    assert!(flags.contains("\"gibbs_in_range\": true"));
    let csv = read(&dir, "gibbs.csv");
    assert_eq!(csv.lines().count(), 4); // header + three N values
}

#[test]
fn fourier_custom_scan_writes_csv() {
    let dir = tmp_dir("custom");
    let output = bin()
        .args(["fourier", "--d", "1", "--x", "1/4", "--n-list", "4,8,16,32,64"])
        .args(["--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert_success(&output);
    let csv = read(&dir, "scan.csv");
    assert!(csv.starts_with("N,S_N,deviation,running_max\n"));
    assert_eq!(csv.lines().count(), 6);
    let last = csv.lines().last().unwrap();
    let deviation: f64 = last.split(',').nth(2).unwrap().parse().unwrap();
    assert!(deviation < 0.01, "S_64(1/4) should be near 1");
}

#[test]
fn report_collates_and_flags_gaps() {
    let dir = tmp_dir("report");
    // Only a fourier artifact: the report must mention the missing pieces.
    let output = bin()
        .args(["fourier", "--preset", "gibbs"])
        .args(["--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert_success(&output);
    let output = bin()
        .args(["report", "--out", dir.to_str().unwrap(), "--svg"])
        .output()
        .unwrap();
    assert_success(&output);
    let summary = read(&dir, "summary.md");
    assert!(summary.contains("Gibbs overshoot"));
    assert!(summary.contains("Missing inputs"));
    assert!(summary.contains("trace.csv"));
}

#[test]
fn report_on_empty_directory_errors() {
    let dir = tmp_dir("empty");
    let output = bin()
        .args(["report", "--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert!(!output.status.success());
    let stderr = String::from_utf8_lossy(&output.stderr);
    assert!(stderr.contains("no run artifacts"));
}

#[test]
fn full_mode_smoke_run() {
    let dir = tmp_dir("full");
    let output = bin()
        .args(["train", "--mode", "full", "--n", "2", "--horizon", "40"])
        .args(["--m0", "30.0", "--delta", "0.05", "--eta", "0.02"])
        .args(["--grid-points", "150", "--samples", "3000", "--every-k", "5"])
        .args(["--out", dir.to_str().unwrap()])
        .output()
        .unwrap();
    assert_success(&output);
    let trace = read(&dir, "trace.csv");
    // Magnitudes grow under descent from the tangent configuration.
    let first: f64 = trace
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    let last: f64 = trace
        .lines()
        .last()
        .unwrap()
        .split(',')
        .nth(1)
        .unwrap()
        .parse()
        .unwrap();
    assert!(last > first, "magnitude should grow: {first} -> {last}");
}
