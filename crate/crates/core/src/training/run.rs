//! Training runs: mode dispatch, snapshot recording, and the CSV trace.

use super::descent::{full_grad_step, radial_exact, radial_step, GradEstimator};
use super::energy::energy_direct;
use super::energy::lr_error;
use super::TrainError;
use crate::geometry::HalfSpaceFamily;
use crate::net::NetworkWeights;
use crate::rng::sub_seed;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TrainMode {
    /// Iterate |w| <- |w| + c/|w|^2 per unit; directions never move.
    Radial,
    /// Evaluate the closed form (g0^3 + 3ct)^(1/3) at the snapshots.
    RadialExact,
    /// Full gradient descent on the estimated energy.
    Full,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum SnapshotSchedule {
    /// t = 0, 1, 2, 4, 8, ... and the final step.
    Dyadic,
    /// Every k-th step plus the final step.
    EveryK { k: u64 },
    /// Explicit step list (0 and the final step are always included).
    Explicit { steps: Vec<u64> },
}

impl SnapshotSchedule {
    fn snapshots(&self, horizon: u64) -> Vec<u64> {
        let mut ts = vec![0];
        match self {
            SnapshotSchedule::Dyadic => {
                let mut t = 1;
                while t <= horizon {
                    ts.push(t);
                    t *= 2;
                }
            }
            SnapshotSchedule::EveryK { k } => {
                let k = (*k).max(1);
                let mut t = k;
                while t <= horizon {
                    ts.push(t);
                    t += k;
                }
            }
            SnapshotSchedule::Explicit { steps } => {
                ts.extend(steps.iter().copied().filter(|&t| t <= horizon));
            }
        }
        ts.push(horizon);
        ts.sort_unstable();
        ts.dedup();
        ts
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainConfig {
    pub mode: TrainMode,
    /// Step size for full mode; None picks the default 0.1/N.
    pub eta: Option<f64>,
    /// Radial constant c.
    pub c: f64,
    /// Number of steps T.
    pub horizon: u64,
    /// Monte Carlo samples per snapshot metric (energy, L1, L2).
    pub mc_samples: usize,
    pub seed: u64,
    pub schedule: SnapshotSchedule,
    /// Largeness scale: initial magnitudes must exceed 1/delta.
    pub delta: f64,
    /// Gradient estimator for full mode.
    pub estimator: GradEstimator,
}

impl TrainConfig {
    pub fn radial(c: f64, horizon: u64, mc_samples: usize, seed: u64) -> Self {
        TrainConfig {
            mode: TrainMode::Radial,
            eta: None,
            c,
            horizon,
            mc_samples,
            seed,
            schedule: SnapshotSchedule::Dyadic,
            delta: 0.05,
            estimator: GradEstimator::MonteCarlo {
                samples: 10_000,
                seed: 0,
            },
        }
    }
}

/// One recorded snapshot.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub t: u64,
    pub magnitudes: Vec<f64>,
    pub energy: f64,
    pub energy_se: f64,
    pub l1: f64,
    pub l2: f64,
}

/// A training trace plus the configuration that produced it.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrainTrace {
    pub config: TrainConfig,
    pub rows: Vec<TraceRow>,
}

impl TrainTrace {
    /// CSV body with header `t,mag_1..mag_N,energy,energy_se,l1,l2`.
    pub fn to_csv(&self) -> String {
        let n = self.rows.first().map_or(0, |r| r.magnitudes.len());
        let mut out = String::from("t");
        for j in 1..=n {
            out.push_str(&format!(",mag_{j}"));
        }
        out.push_str(",energy,energy_se,l1,l2\n");
        for row in &self.rows {
            out.push_str(&format!("{}", row.t));
            for m in &row.magnitudes {
                out.push_str(&format!(",{m}"));
            }
            out.push_str(&format!(
                ",{},{},{},{}\n",
                row.energy, row.energy_se, row.l1, row.l2
            ));
        }
        out
    }
}

fn snapshot(
    t: u64,
    weights: &NetworkWeights,
    family: &HalfSpaceFamily,
    cfg: &TrainConfig,
) -> Result<TraceRow, TrainError> {
    let energy = energy_direct(
        weights,
        family,
        cfg.mc_samples,
        sub_seed(cfg.seed, 0x736e_6170, t),
    )?;
    let (l1, _) = lr_error(
        weights,
        family,
        1,
        cfg.mc_samples,
        sub_seed(cfg.seed, 0x6c31, t),
    )?;
    let (l2, _) = lr_error(
        weights,
        family,
        2,
        cfg.mc_samples,
        sub_seed(cfg.seed, 0x6c32, t),
    )?;
    Ok(TraceRow {
        t,
        magnitudes: weights.magnitudes().to_vec(),
        energy: energy.total,
        energy_se: energy.std_error,
        l1,
        l2,
    })
}

/// Runs the configured mode for `horizon` steps, recording snapshots.
///
/// Requires the initial magnitudes to satisfy |w_j| > 1/delta. In the
/// radial modes directions are exactly constant and magnitudes strictly
/// increase.
pub fn train(
    cfg: &TrainConfig,
    weights0: &NetworkWeights,
    family: &HalfSpaceFamily,
) -> Result<TrainTrace, TrainError> {
    weights0.check_family(family)?;
    if !(cfg.c > 0.0) {
        return Err(TrainError::BadRadialConstant(cfg.c));
    }
    let min_mag = 1.0 / cfg.delta;
    for (j, &m) in weights0.magnitudes().iter().enumerate() {
        if !(m > min_mag) {
            return Err(TrainError::InitialMagnitudeTooSmall {
                j,
                mag: m,
                min: min_mag,
            });
        }
    }
    let snapshots = cfg.schedule.snapshots(cfg.horizon);
    let mut rows = Vec::with_capacity(snapshots.len());
    match cfg.mode {
        TrainMode::Radial => {
            let mut weights = weights0.clone();
            let mut next_snapshot = 0usize;
            for t in 0..=cfg.horizon {
                if snapshots.get(next_snapshot) == Some(&t) {
                    rows.push(snapshot(t, &weights, family, cfg)?);
                    next_snapshot += 1;
                }
                if t == cfg.horizon {
                    break;
                }
                for m in weights.magnitudes_mut() {
                    let next = radial_step(*m, cfg.c);
                    debug_assert!(next > *m);
                    *m = next;
                }
            }
        }
        TrainMode::RadialExact => {
            let mags0 = weights0.magnitudes().to_vec();
            for &t in &snapshots {
                let mut weights = weights0.clone();
                for (m, &m0) in weights.magnitudes_mut().iter_mut().zip(mags0.iter()) {
                    *m = radial_exact(m0, cfg.c, t as f64);
                }
                rows.push(snapshot(t, &weights, family, cfg)?);
            }
        }
        TrainMode::Full => {
            let eta = cfg
                .eta
                .unwrap_or(0.1 / weights0.units() as f64);
            if !(eta > 0.0) {
                return Err(TrainError::BadStepSize(eta));
            }
            let mut weights = weights0.clone();
            let mut next_snapshot = 0usize;
            for t in 0..=cfg.horizon {
                if snapshots.get(next_snapshot) == Some(&t) {
                    rows.push(snapshot(t, &weights, family, cfg)?);
                    next_snapshot += 1;
                }
                if t == cfg.horizon {
                    break;
                }
                let (next, _) = full_grad_step(&weights, eta, &cfg.estimator, t)?;
                weights = next;
            }
        }
    }
    Ok(TrainTrace {
        config: cfg.clone(),
        rows,
    })
}
