//! `train`: run the selected descent mode, persist the trace, and fit the
//! growth/decay exponents. In the radial modes the magnitude exponent is a
//! gate: the command fails when it leaves 1/3 +- 0.01.

use crate::config::RunConfig;
use anyhow::{anyhow, bail, Result};
use ball_approx::*;
use serde::Serialize;
use std::path::Path;

use ball_approx::training::TrainError;

#[derive(Serialize)]
struct FitReport {
    magnitude_slope: Option<f64>,
    magnitude_points: Option<usize>,
    l1_slope: Option<f64>,
    l2_slope: Option<f64>,
    window: (u64, u64),
    radial_gate: Option<bool>,
}

pub fn run(config: &RunConfig, out: Option<&Path>) -> Result<bool> {
    let section = config.train.clone().unwrap_or_default();
    let mode = match section.mode.as_str() {
        "radial" => TrainMode::Radial,
        "radial-exact" => TrainMode::RadialExact,
        "full" => TrainMode::Full,
        other => bail!("unknown mode {other:?} (radial | radial-exact | full)"),
    };
    let scheme = match section.scheme.as_str() {
        "equal-angle" => DirectionScheme::EqualAngle,
        "fibonacci-sphere" => DirectionScheme::FibonacciSphere,
        "repelled-random" => DirectionScheme::RepelledRandom,
        other => bail!("unknown scheme {other:?}"),
    };
    let units = 1usize << section.n;
    let family = make_directions(section.d, units, scheme, config.seed)?;
    let weights0 = NetworkWeights::from_family(&family, section.m0)?;
    let estimator = if section.grid_points > 0 {
        GradEstimator::Grid {
            points_per_dim: section.grid_points,
        }
    } else {
        GradEstimator::MonteCarlo {
            samples: section.samples,
            seed: config.seed ^ 0x657374,
        }
    };
    let train_config = TrainConfig {
        mode,
        eta: section.eta,
        c: section.c,
        horizon: section.horizon,
        mc_samples: section.samples,
        seed: config.seed,
        schedule: if section.every_k == 0 {
            SnapshotSchedule::Dyadic
        } else {
            SnapshotSchedule::EveryK { k: section.every_k }
        },
        delta: section.delta,
        estimator,
    };
    let trace = train(&train_config, &weights0, &family)?;

    let window = ((section.horizon / 100).max(1), section.horizon);
    let mag_fit = fit_power_law(&trace, TraceField::Magnitude(0), window);
    let l1_fit = fit_power_law(&trace, TraceField::L1, window);
    let l2_fit = fit_power_law(&trace, TraceField::L2, window);

    let radial = matches!(mode, TrainMode::Radial | TrainMode::RadialExact);
    let gate = match (radial, &mag_fit) {
        (true, Ok(fit)) => {
            let pass = (fit.slope - 1.0 / 3.0).abs() <= 0.01;
            println!(
                "{} magnitude growth exponent = {:.4} (target 1/3 +- 0.01)",
                if pass { "[PASS]" } else { "[FAIL]" },
                fit.slope
            );
            Some(pass)
        }
        (true, Err(TrainError::WindowTooSmall { got, min })) => {
            println!("growth-rate gate skipped: {got} fit points (need {min})");
            None
        }
        (true, Err(e)) => return Err(anyhow!("magnitude fit failed: {e}")),
        (false, _) => None,
    };
    if let Ok(fit) = &l1_fit {
        println!("L1 decay exponent = {:.4} over {} points", fit.slope, fit.points);
    }
    if let Some(last) = trace.rows.last() {
        println!(
            "final: t={} |w_1|={:.4} energy={:.3e} l1={:.3e}",
            last.t, last.magnitudes[0], last.energy, last.l1
        );
    }

    if let Some(out) = out {
        super::write_artifact(out, "trace.csv", &trace.to_csv())?;
        super::write_artifact(out, "family.json", &family.to_json())?;
        let fits = FitReport {
            magnitude_slope: mag_fit.as_ref().ok().map(|f| f.slope),
            magnitude_points: mag_fit.as_ref().ok().map(|f| f.points),
            l1_slope: l1_fit.as_ref().ok().map(|f| f.slope),
            l2_slope: l2_fit.as_ref().ok().map(|f| f.slope),
            window,
            radial_gate: gate,
        };
        super::write_artifact(out, "train_fit.json", &serde_json::to_string_pretty(&fits)?)?;
        config.save(&out.join("run_config.json"))?;
    }
    Ok(gate.unwrap_or(true))
}
