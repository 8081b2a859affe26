//! Fourier coefficients of the ball indicator.
//!
//! The raw integral over the ball of radius R = 1/2,
//!
//! ```text
//! raw(kappa) = int_{|x| <= 1/2} cos(k pi . x) dx
//!           = (2 pi R / |xi|)^(d/2) J_{d/2}(R |xi|),   |xi| = kappa pi,
//! ```
//!
//! depends on kappa = |k| only. Gradient descent on the truncated series
//! converges to the projection coefficient raw(kappa) / 2^d: the lattice
//! enumeration visits k and -k separately while both index the same cosine,
//! so each carries half of the per-function projection raw / 2^(d-1)
//! (and the k = 0 norm is 2^d outright). Sine coefficients vanish by
//! symmetry.

use super::FourierError;
use crate::special::{ball_volume, bessel_j_d_half};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    /// The raw integral over the ball.
    Raw,
    /// raw / 2^d; the gradient-descent limit per lattice mode.
    Projection,
}

/// Raw coefficient at radial frequency kappa = |k| >= 0.
pub fn ball_coefficient(d: usize, kappa: f64) -> Result<f64, FourierError> {
    if d == 0 {
        return Err(FourierError::BadDimension(d));
    }
    if kappa == 0.0 {
        return Ok(ball_volume(d, 0.5));
    }
    let z = kappa * std::f64::consts::FRAC_PI_2;
    let j = bessel_j_d_half(d as u32, z)?;
    Ok(kappa.powf(-(d as f64) / 2.0) * j)
}

/// Projection coefficient of the lattice mode k.
pub fn projection_coefficient(d: usize, k: &[i64]) -> Result<f64, FourierError> {
    if k.len() != d {
        return Err(FourierError::DimensionMismatch {
            got: k.len(),
            want: d,
        });
    }
    let m: i64 = k.iter().map(|ki| ki * ki).sum();
    projection_coefficient_radial(d, m as u64)
}

/// Projection coefficient by squared radius m = |k|^2.
pub fn projection_coefficient_radial(d: usize, m: u64) -> Result<f64, FourierError> {
    Ok(ball_coefficient(d, (m as f64).sqrt())? / (2.0f64).powi(d as i32))
}

/// Radial coefficient values indexed by squared radius.
#[derive(Debug, Clone)]
pub struct CoefficientTable {
    pub d: usize,
    pub normalization: Normalization,
    /// values[m] is the coefficient at kappa = sqrt(m).
    pub values: Vec<f64>,
}

impl CoefficientTable {
    /// Builds the table for 0 <= m <= max_m.
    pub fn build(d: usize, max_m: u64, normalization: Normalization) -> Result<Self, FourierError> {
        let scale = match normalization {
            Normalization::Raw => 1.0,
            Normalization::Projection => (2.0f64).powi(-(d as i32)),
        };
        let mut values = Vec::with_capacity(max_m as usize + 1);
        for m in 0..=max_m {
            values.push(ball_coefficient(d, (m as f64).sqrt())? * scale);
        }
        Ok(CoefficientTable {
            d,
            normalization,
            values,
        })
    }

    pub fn value(&self, m: u64) -> Option<f64> {
        self.values.get(m as usize).copied()
    }
}
