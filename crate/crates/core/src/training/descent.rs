//! Gradient-descent updates: the radial simplification |w| <- |w| + c/|w|^2
//! with its closed-form envelope, and the full backward pass through the
//! layered architecture with biases tied to the weights.

use super::TrainError;
use crate::net::{forward, relu_subgrad, NetworkWeights};
use crate::rng::{rng_for, sample_cube, MC_BLOCK};
use rayon::prelude::*;

/// One radial update. Magnitudes only move outward.
pub fn radial_step(mag: f64, c: f64) -> f64 {
    debug_assert!(mag > 0.0 && c > 0.0);
    mag + c / (mag * mag)
}

/// Closed-form envelope of the radial dynamics: solving g' = c / g^2 gives
/// g(t) = (g0^3 + 3 c t)^(1/3). Oracle for the iterated update's drift.
pub fn radial_exact(mag0: f64, c: f64, t: f64) -> f64 {
    debug_assert!(mag0 > 0.0 && t >= 0.0);
    (mag0.powi(3) + 3.0 * c * t).cbrt()
}

/// How the energy gradient is estimated inside a full-descent step.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum GradEstimator {
    /// Seeded Monte Carlo over the cube; `samples` points per step.
    MonteCarlo { samples: usize, seed: u64 },
    /// Deterministic midpoint tensor grid, `points_per_dim`^d nodes. The
    /// grid is symmetric under the cube symmetries, so symmetric
    /// configurations keep their directions to machine precision.
    Grid { points_per_dim: usize },
}

/// Per-step diagnostics of a full-descent update.
#[derive(Debug, Clone, Copy)]
pub struct StepDiagnostics {
    /// Largest angle (radians) any direction moved this step.
    pub max_direction_drift: f64,
    /// Smallest magnitude change; negative means some magnitude shrank.
    pub min_magnitude_delta: f64,
    /// The energy estimate the gradient was computed from.
    pub energy: f64,
}

struct GradAccumulator {
    grad: Vec<Vec<f64>>,
    energy: f64,
    weight: f64,
}

impl GradAccumulator {
    fn new(units: usize, d: usize) -> Self {
        GradAccumulator {
            grad: vec![vec![0.0; d]; units],
            energy: 0.0,
            weight: 0.0,
        }
    }

    fn merge(mut self, other: GradAccumulator) -> Self {
        for (a, b) in self.grad.iter_mut().zip(other.grad.iter()) {
            for (x, y) in a.iter_mut().zip(b.iter()) {
                *x += y;
            }
        }
        self.energy += other.energy;
        self.weight += other.weight;
        self
    }
}

/// Backward pass for one sample; adds the gradient of
/// (1/2) (f(x) - target)^2 with respect to every weight row into `acc`.
fn accumulate_sample(
    weights: &NetworkWeights,
    x: &[f64],
    quad_weight: f64,
    acc: &mut GradAccumulator,
) {
    let (f, trace) = forward(weights, x).expect("sample drawn inside the cube");
    let norm_sq: f64 = x.iter().map(|v| v * v).sum();
    let target = f64::from(norm_sq <= 0.25);
    let residual = f - target;
    acc.energy += quad_weight * 0.5 * residual * residual;
    acc.weight += quad_weight;
    if residual == 0.0 {
        return;
    }
    // Clip subgradient: 0 on the saturated side, 1 at exactly 1.
    if trace.output > 1.0 {
        return;
    }
    // Walk the layers backward. `down[J]` is d f / d z^{2k+1}_J.
    let n = weights.depth() as usize;
    let mut down = vec![residual * quad_weight];
    for k in (1..=n).rev() {
        let layer: &[f64] = if k >= 2 { &trace.odd[k - 2] } else { &trace.z1 };
        let mut next = vec![0.0; layer.len()];
        for (big_j, &g) in down.iter().enumerate() {
            if g == 0.0 {
                continue;
            }
            let a = layer[2 * big_j];
            let b = layer[2 * big_j + 1];
            let s1 = relu_subgrad(0.5 * a + 0.5 * b);
            let s2 = relu_subgrad(0.5 * a - 0.5 * b);
            let s3 = relu_subgrad(-0.5 * a + 0.5 * b);
            next[2 * big_j] = g * 0.5 * (s1 - s2 + s3);
            next[2 * big_j + 1] = g * 0.5 * (s1 + s2 - s3);
        }
        down = next;
    }
    // First layer: d z1_j / d w_j = h'(pre) (x + tau_j / 2), the tau_j/2
    // being the tied bias term d b / d w = w / (2 |w|).
    for (j, &g) in down.iter().enumerate() {
        if g == 0.0 {
            continue;
        }
        let pre = weights.pre_activation(j, x);
        let s = relu_subgrad(pre);
        if s == 0.0 {
            continue;
        }
        let tau = &weights.directions()[j];
        for ((gk, xk), tk) in acc.grad[j].iter_mut().zip(x.iter()).zip(tau.iter()) {
            *gk += g * s * (xk + 0.5 * tk);
        }
    }
}

/// One full gradient-descent step w_j <- w_j - eta * grad_j on the
/// estimated energy, biases tied through the chain rule.
pub fn full_grad_step(
    weights: &NetworkWeights,
    eta: f64,
    estimator: &GradEstimator,
    step_index: u64,
) -> Result<(NetworkWeights, StepDiagnostics), TrainError> {
    if !(eta >= 0.0) {
        return Err(TrainError::BadStepSize(eta));
    }
    let d = weights.dim();
    let units = weights.units();
    let cube_volume = (2.0f64).powi(d as i32);

    let acc = match estimator {
        GradEstimator::MonteCarlo { samples, seed } => {
            let blocks = samples.div_ceil(MC_BLOCK);
            (0..blocks)
                .into_par_iter()
                .map(|b| {
                    let mut rng = rng_for(*seed, 0x6772_6164 ^ step_index, b as u64);
                    let count = MC_BLOCK.min(samples - b * MC_BLOCK);
                    let mut acc = GradAccumulator::new(units, d);
                    let mut x = vec![0.0; d];
                    for _ in 0..count {
                        sample_cube(&mut rng, &mut x);
                        accumulate_sample(weights, &x, 1.0, &mut acc);
                    }
                    acc
                })
                .reduce_with(GradAccumulator::merge)
                .unwrap_or_else(|| GradAccumulator::new(units, d))
        }
        GradEstimator::Grid { points_per_dim } => {
            let p = *points_per_dim;
            let total = p.pow(d as u32);
            (0..total)
                .into_par_iter()
                .fold(
                    || GradAccumulator::new(units, d),
                    |mut acc, idx| {
                        let mut x = vec![0.0; d];
                        let mut rem = idx;
                        for xi in x.iter_mut() {
                            let i = rem % p;
                            rem /= p;
                            *xi = -1.0 + (2.0 * i as f64 + 1.0) / p as f64;
                        }
                        accumulate_sample(weights, &x, 1.0, &mut acc);
                        acc
                    },
                )
                .reduce_with(GradAccumulator::merge)
                .unwrap_or_else(|| GradAccumulator::new(units, d))
        }
    };

    let scale = cube_volume / acc.weight.max(1.0);
    let energy = scale * acc.energy;
    let mut rows = Vec::with_capacity(units);
    for j in 0..units {
        let mut row = weights.weight_row(j);
        for (rk, gk) in row.iter_mut().zip(acc.grad[j].iter()) {
            *rk -= eta * scale * gk;
        }
        rows.push(row);
    }
    let new_weights = NetworkWeights::from_rows(d, rows)?;

    let mut max_drift = 0.0f64;
    let mut min_delta = f64::INFINITY;
    for j in 0..units {
        let cos = weights.directions()[j]
            .iter()
            .zip(new_weights.directions()[j].iter())
            .map(|(a, b)| a * b)
            .sum::<f64>()
            .clamp(-1.0, 1.0);
        max_drift = max_drift.max(cos.acos());
        min_delta = min_delta.min(new_weights.magnitudes()[j] - weights.magnitudes()[j]);
    }
    Ok((
        new_weights,
        StepDiagnostics {
            max_direction_drift: max_drift,
            min_magnitude_delta: min_delta,
            energy,
        },
    ))
}
