//! `report`: collate the artifacts of previous runs into one summary.

use anyhow::{bail, Context, Result};
use std::fmt::Write as _;
use std::path::Path;

pub fn run(out: Option<&Path>, svg: bool) -> Result<bool> {
    let out = out.context("report needs --out pointing at a directory with run artifacts")?;
    if !out.is_dir() {
        bail!("{} is not a directory", out.display());
    }

    let mut summary = String::from("# Run summary\n");
    let mut found_any = false;
    let mut gaps = Vec::new();

    // Verification suites.
    match read(out, "verify_report.json") {
        Some(text) => {
            found_any = true;
            let report: serde_json::Value = serde_json::from_str(&text)?;
            writeln!(summary, "\n## Verification suites\n")?;
            writeln!(summary, "| check | status | max deviation |")?;
            writeln!(summary, "|---|---|---|")?;
            for check in report["checks"].as_array().unwrap_or(&Vec::new()) {
                writeln!(
                    summary,
                    "| {} | {} | {:.3e} |",
                    check["name"].as_str().unwrap_or("?"),
                    if check["pass"].as_bool().unwrap_or(false) {
                        "pass"
                    } else {
                        "FAIL"
                    },
                    check["max_deviation"].as_f64().unwrap_or(f64::NAN)
                )?;
            }
        }
        None => gaps.push("verify_report.json (run `ball-approx verify`)"),
    }

    // Training side.
    match (read(out, "trace.csv"), read(out, "train_fit.json")) {
        (Some(trace), Some(fit_text)) => {
            found_any = true;
            let fits: serde_json::Value = serde_json::from_str(&fit_text)?;
            writeln!(summary, "\n## Network training (answer: convergent)\n")?;
            if let Some(slope) = fits["magnitude_slope"].as_f64() {
                writeln!(
                    summary,
                    "- magnitude growth exponent: {slope:.4} (radial theory: 1/3)"
                )?;
            }
            if let Some(slope) = fits["l1_slope"].as_f64() {
                writeln!(
                    summary,
                    "- L1 error decay exponent: {slope:.4} (radial theory: -1/3)"
                )?;
            }
            if let Some(gate) = fits["radial_gate"].as_bool() {
                writeln!(
                    summary,
                    "- growth-rate gate: {}",
                    if gate { "pass" } else { "FAIL" }
                )?;
            }
            let rows = trace.lines().count().saturating_sub(1);
            writeln!(summary, "- trace rows: {rows} (trace.csv)")?;
            if svg {
                write_trace_plots(out, &trace)?;
                writeln!(summary, "- plots: trace_magnitude.svg, trace_l1.svg")?;
            }
        }
        _ => gaps.push("trace.csv / train_fit.json (run `ball-approx train`)"),
    }

    // Fourier side.
    match read(out, "fourier_flags.json") {
        Some(text) => {
            found_any = true;
            let flags: serde_json::Value = serde_json::from_str(&text)?;
            writeln!(summary, "\n## Fourier partial sums (answer: divergent)\n")?;
            if let Some(v) = flags["gibbs_in_range"].as_bool() {
                writeln!(
                    summary,
                    "- Gibbs overshoot in [0.084, 0.094]: {}",
                    if v { "yes" } else { "NO" }
                )?;
            }
            if let Some(v) = flags["oscillation_persistent"].as_bool() {
                writeln!(
                    summary,
                    "- center oscillation persists (d=3): {}",
                    if v { "yes" } else { "NO" }
                )?;
            }
            if let Some(v) = flags["running_max_monotone"].as_bool() {
                writeln!(
                    summary,
                    "- center deviation grows across dyadic windows (d=5): {}",
                    if v { "yes" } else { "NO" }
                )?;
            }
            if svg {
                for name in ["pinsky_scan", "third_center_scan", "scan"] {
                    if let Some(csv) = read(out, &format!("{name}.csv")) {
                        let plot = crate::svg::scan_plot(&csv)?;
                        super::write_artifact(out, &format!("{name}.svg"), &plot)?;
                        writeln!(summary, "- plot: {name}.svg")?;
                    }
                }
            }
        }
        None => gaps.push("fourier_flags.json (run `ball-approx fourier`)"),
    }

    if !found_any {
        bail!(
            "no run artifacts found in {}; run verify/train/fourier first",
            out.display()
        );
    }
    if !gaps.is_empty() {
        writeln!(summary, "\n## Missing inputs\n")?;
        for gap in &gaps {
            writeln!(summary, "- {gap}")?;
        }
    }
    super::write_artifact(out, "summary.md", &summary)?;
    println!("{summary}");
    Ok(true)
}

fn read(out: &Path, name: &str) -> Option<String> {
    std::fs::read_to_string(out.join(name)).ok()
}

fn write_trace_plots(out: &Path, trace: &str) -> Result<()> {
    let mut t = Vec::new();
    let mut mag = Vec::new();
    let mut l1 = Vec::new();
    let header: Vec<&str> = trace.lines().next().unwrap_or("").split(',').collect();
    let l1_col = header.iter().position(|h| *h == "l1");
    for line in trace.lines().skip(1) {
        let cols: Vec<&str> = line.split(',').collect();
        let tv: f64 = cols[0].parse().unwrap_or(0.0);
        if tv <= 0.0 {
            continue;
        }
        t.push(tv);
        mag.push(cols[1].parse().unwrap_or(f64::NAN));
        if let Some(i) = l1_col {
            l1.push(cols[i].parse().unwrap_or(f64::NAN));
        }
    }
    let mag_series: Vec<(f64, f64)> = t.iter().copied().zip(mag).collect();
    super::write_artifact(
        out,
        "trace_magnitude.svg",
        &crate::svg::log_log_plot(&mag_series, "t", "|w_1|"),
    )?;
    let l1_series: Vec<(f64, f64)> = t.iter().copied().zip(l1).collect();
    super::write_artifact(
        out,
        "trace_l1.svg",
        &crate::svg::log_log_plot(&l1_series, "t", "L1 error"),
    )?;
    Ok(())
}
