//! Layered forward pass and the full activation trace.

use super::weights::{relu, NetworkWeights};
use super::NetError;
use crate::geometry::Domain;

/// Every activation of one forward pass.
///
/// `even[k-1]` holds layer 2k (width 3 * 2^(n-k)), `odd[k-1]` holds layer
/// 2k+1 (width 2^(n-k)); `odd` ends with the scalar layer.
#[derive(Debug, Clone)]
pub struct LayerTrace {
    pub z1: Vec<f64>,
    pub even: Vec<Vec<f64>>,
    pub odd: Vec<Vec<f64>>,
    /// Pre-clip scalar z^(2n+1).
    pub output: f64,
    /// Clipped output f = min(output, 1).
    pub clipped: f64,
}

impl LayerTrace {
    /// CSV dump, one row per layer entry: `layer,index,value`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("layer,index,value\n");
        let mut push = |layer: usize, values: &[f64]| {
            for (i, v) in values.iter().enumerate() {
                out.push_str(&format!("{layer},{},{v}\n", i + 1));
            }
        };
        push(1, &self.z1);
        for (k, (even, odd)) in self.even.iter().zip(self.odd.iter()).enumerate() {
            push(2 * (k + 1), even);
            push(2 * (k + 1) + 1, odd);
        }
        out
    }
}

/// Full forward pass; returns the clipped output together with the trace.
pub fn forward(weights: &NetworkWeights, x: &[f64]) -> Result<(f64, LayerTrace), NetError> {
    Domain::new(weights.dim())?.check_point(x)?;
    let n_units = weights.units();
    let mut z1 = Vec::with_capacity(n_units);
    for j in 0..n_units {
        z1.push(relu(weights.pre_activation(j, x)));
    }
    let mut even_layers = Vec::with_capacity(weights.depth() as usize);
    let mut odd_layers = Vec::with_capacity(weights.depth() as usize);
    let mut prev = z1.clone();
    for _ in 0..weights.depth() {
        let groups = prev.len() / 2;
        let mut even = Vec::with_capacity(3 * groups);
        let mut odd = Vec::with_capacity(groups);
        for big_j in 0..groups {
            let a = prev[2 * big_j];
            let b = prev[2 * big_j + 1];
            let e1 = relu(0.5 * a + 0.5 * b);
            let e2 = relu(0.5 * a - 0.5 * b);
            let e3 = relu(-0.5 * a + 0.5 * b);
            even.push(e1);
            even.push(e2);
            even.push(e3);
            odd.push(e1 - e2 - e3);
        }
        even_layers.push(even);
        odd_layers.push(odd.clone());
        prev = odd;
    }
    let output = prev[0];
    let clipped = output.min(1.0);
    Ok((
        clipped,
        LayerTrace {
            z1,
            even: even_layers,
            odd: odd_layers,
            output,
            clipped,
        },
    ))
}

/// Forward pass without building the trace.
pub fn forward_value(weights: &NetworkWeights, x: &[f64]) -> Result<f64, NetError> {
    Domain::new(weights.dim())?.check_point(x)?;
    Ok(forward_value_unchecked(weights, x))
}

pub(crate) fn forward_value_unchecked(weights: &NetworkWeights, x: &[f64]) -> f64 {
    let n_units = weights.units();
    let mut prev: Vec<f64> = (0..n_units)
        .map(|j| relu(weights.pre_activation(j, x)))
        .collect();
    for _ in 0..weights.depth() {
        let groups = prev.len() / 2;
        for big_j in 0..groups {
            let a = prev[2 * big_j];
            let b = prev[2 * big_j + 1];
            prev[big_j] =
                relu(0.5 * a + 0.5 * b) - relu(0.5 * a - 0.5 * b) - relu(-0.5 * a + 0.5 * b);
        }
        prev.truncate(groups);
    }
    prev[0].min(1.0)
}

/// Reference evaluation: min over units of the first-layer activations,
/// clipped at one. The layered pass must reproduce this exactly (up to
/// floating-point associativity); tests and the verify suites compare the
/// two routes.
pub fn tournament_min(weights: &NetworkWeights, x: &[f64]) -> Result<f64, NetError> {
    Domain::new(weights.dim())?.check_point(x)?;
    let min = (0..weights.units())
        .map(|j| relu(weights.pre_activation(j, x)))
        .fold(f64::INFINITY, f64::min);
    Ok(min.min(1.0))
}
