//! `fourier`: partial-sum scans. The presets reproduce the three
//! phenomena: the Gibbs overshoot (d=1 jump), the persistent center
//! oscillation (d=3, Pinsky), and the growing center divergence (d=5).

use crate::config::RunConfig;
use anyhow::{bail, Context, Result};
use ball_approx::*;
use serde::Serialize;
use std::path::Path;

#[derive(Serialize, Default)]
struct FourierFlags {
    #[serde(skip_serializing_if = "Option::is_none")]
    gibbs_in_range: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oscillation_persistent: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    running_max_monotone: Option<bool>,
}

pub fn run(config: &RunConfig, out: Option<&Path>) -> Result<bool> {
    let section = config.fourier.clone().unwrap_or_default();
    let mut flags = FourierFlags::default();
    let mut pass = true;

    match section.preset.as_deref() {
        Some("gibbs") => {
            let mut csv = String::from("N,overshoot\n");
            let mut in_range = true;
            for n in [64u32, 128, 256] {
                let overshoot = gibbs_overshoot(n)?;
                in_range &= (0.084..=0.094).contains(&overshoot);
                println!("Gibbs overshoot at N={n}: {overshoot:.5}");
                csv.push_str(&format!("{n},{overshoot}\n"));
            }
            flags.gibbs_in_range = Some(in_range);
            pass = in_range;
            println!(
                "{} overshoot within [0.084, 0.094] for N in {{64, 128, 256}}",
                if in_range { "[PASS]" } else { "[FAIL]" }
            );
            if let Some(out) = out {
                super::write_artifact(out, "gibbs.csv", &csv)?;
            }
        }
        Some("pinsky") => {
            let x = vec![Rational::zero(); 3];
            let ns: Vec<u32> = (1..=1024).collect();
            let scan = divergence_scan(3, &x, &ns)?;
            let early = scan.window_amplitude(128, 256);
            let late = scan.window_amplitude(512, 1024);
            let persistent = late >= 0.5 * early;
            flags.oscillation_persistent = Some(persistent);
            pass = persistent;
            println!(
                "{} center oscillation persists: amplitude [512,1024] = {late:.4} vs [128,256] = {early:.4}",
                if persistent { "[PASS]" } else { "[FAIL]" }
            );
            if let Some(out) = out {
                super::write_artifact(out, "pinsky_scan.csv", &scan.to_csv())?;
            }
        }
        Some("third") => {
            let values = center_scan_streaming(5, 8192)?;
            let mut csv = String::from("N,S_N,deviation,running_max\n");
            let mut running: f64 = 0.0;
            for (i, &s) in values.iter().enumerate().skip(31) {
                let deviation = (s - 1.0).abs();
                running = running.max(deviation);
                csv.push_str(&format!("{},{s},{deviation},{running}\n", i + 1));
            }
            let mut monotone = true;
            let mut prior: f64 = values[..32].iter().map(|s| (s - 1.0).abs()).fold(0.0, f64::max);
            for i in 5..=12u32 {
                let lo = (1usize << i) - 1;
                let hi = (1usize << (i + 1)).min(values.len());
                let window_max = values[lo..hi].iter().map(|s| (s - 1.0).abs()).fold(0.0, f64::max);
                println!("window [2^{i}, 2^{}]: max |S_N(0) - 1| = {window_max:.3}", i + 1);
                monotone &= window_max > prior;
                prior = prior.max(window_max);
            }
            flags.running_max_monotone = Some(monotone);
            pass = monotone;
            println!(
                "{} running max strictly increases across dyadic windows",
                if monotone { "[PASS]" } else { "[FAIL]" }
            );
            if let Some(out) = out {
                super::write_artifact(out, "third_center_scan.csv", &csv)?;
                // Exploratory off-center scan, budget-limited to N <= 60.
                let x: Vec<Rational> = vec![
                    Rational::new(1, 4).unwrap(),
                    Rational::zero(),
                    Rational::zero(),
                    Rational::zero(),
                    Rational::zero(),
                ];
                let ns = [8u32, 16, 24, 32, 40, 48, 56, 60];
                let scan = divergence_scan(5, &x, &ns)?;
                super::write_artifact(out, "third_offcenter_scan.csv", &scan.to_csv())?;
            }
        }
        Some(other) => bail!("unknown preset {other:?} (gibbs | pinsky | third)"),
        None => {
            let d = section.d.context("custom scans need --d")?;
            let x_text = section.x.context("custom scans need --x")?;
            let n_text = section.n_list.context("custom scans need --n-list")?;
            let x: Vec<Rational> = x_text
                .split(',')
                .map(|s| s.trim().parse())
                .collect::<Result<_, _>>()?;
            let ns: Vec<u32> = n_text
                .split(',')
                .map(|s| s.trim().parse().context("parsing N list"))
                .collect::<Result<_>>()?;
            let scan = divergence_scan(d, &x, &ns)?;
            for e in &scan.entries {
                println!(
                    "N={:<6} S_N={:<12.6} deviation={:<12.6} running_max={:.6}",
                    e.n, e.value, e.deviation, e.running_max
                );
            }
            if let Some(out) = out {
                super::write_artifact(out, "scan.csv", &scan.to_csv())?;
            }
        }
    }

    if let Some(out) = out {
        super::write_artifact(out, "fourier_flags.json", &serde_json::to_string_pretty(&flags)?)?;
        config.save(&out.join("run_config.json"))?;
    }
    Ok(pass)
}
