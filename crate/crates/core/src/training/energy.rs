//! The error functional E(W) = 1/2 * integral of |f_N - ball indicator|^2,
//! evaluated two independent ways: directly by Monte Carlo over the cube,
//! and through the facet decomposition
//!
//! ```text
//! E = 1/2 sum_j  (1/|w_j|) int_0^1 u^2 lambda_j((u-1)/|w_j|) du
//!   + 1/2 |polytope \ ball|
//! ```
//!
//! where lambda_j is the facet patch measure at the given slab coordinate.
//! The excess term carries the same 1/2 as the slab terms: on the region
//! where the network saturates at 1 and the target is 0 the integrand of
//! the defining integral is exactly 1.

use super::TrainError;
use crate::geometry::{excess_volume, facet_measure, HalfSpaceFamily};
use crate::net::NetworkWeights;
use crate::quad::gauss_legendre;
use crate::rng::{mc_scalar, sample_cube, sub_seed};

/// An energy value with its decomposition (when available) and Monte Carlo
/// uncertainty.
#[derive(Debug, Clone)]
pub struct EnergyEstimate {
    pub total: f64,
    /// Per-unit slab terms E_j (empty for the direct estimator).
    pub per_unit: Vec<f64>,
    /// Excess-volume term, when the decomposition computed one.
    pub excess: Option<f64>,
    pub std_error: f64,
    pub sample_count: u64,
}

/// Direct Monte Carlo estimate of E(W) over the cube.
pub fn energy_direct(
    weights: &NetworkWeights,
    family: &HalfSpaceFamily,
    samples: usize,
    seed: u64,
) -> Result<EnergyEstimate, TrainError> {
    weights.check_dims(family)?;
    let domain = family.domain();
    let d = weights.dim();
    let moments = mc_scalar(seed, 0x656e_6572, samples, |rng| {
        let mut x = vec![0.0; d];
        sample_cube(rng, &mut x);
        let f = crate::net::forward_value_unchecked(weights, &x);
        let target: f64 = {
            let norm_sq: f64 = x.iter().map(|v| v * v).sum();
            f64::from(norm_sq <= 0.25)
        };
        0.5 * (f - target) * (f - target)
    });
    let scale = domain.cube_volume();
    Ok(EnergyEstimate {
        total: scale * moments.mean(),
        per_unit: Vec::new(),
        excess: None,
        std_error: scale * moments.std_error(),
        sample_count: moments.n,
    })
}

pub const DEFAULT_GL_NODES: usize = 16;
pub const DEFAULT_SLAB_DELTA: f64 = 0.05;

/// Facet-decomposed estimate of E(W).
pub fn energy_decomposed(
    weights: &NetworkWeights,
    family: &HalfSpaceFamily,
    samples: usize,
    seed: u64,
) -> Result<EnergyEstimate, TrainError> {
    energy_decomposed_with(
        weights,
        family,
        samples,
        seed,
        DEFAULT_GL_NODES,
        DEFAULT_SLAB_DELTA,
    )
}

/// Decomposed estimate with explicit quadrature order and largeness scale.
///
/// `samples` is the Monte Carlo budget per quadrature node and facet.
/// Requires every slab width 1/|w_j| below `delta`, the small scale under
/// which the competitor exclusions account exactly for slab overlaps.
pub fn energy_decomposed_with(
    weights: &NetworkWeights,
    family: &HalfSpaceFamily,
    samples: usize,
    seed: u64,
    gl_nodes: usize,
    delta: f64,
) -> Result<EnergyEstimate, TrainError> {
    weights.check_family(family)?;
    let mags = weights.magnitudes();
    for (j, &m) in mags.iter().enumerate() {
        let width = 1.0 / m;
        if !(width < delta) {
            return Err(TrainError::SlabOverlap { j, width, delta });
        }
    }
    // Map the slab integral onto u = |w| s + 1 in (0, 1).
    let nodes = gauss_legendre(gl_nodes);
    let mut per_unit = Vec::with_capacity(weights.units());
    let mut variance = 0.0;
    let mut count = 0u64;
    for j in 0..weights.units() {
        let mag = mags[j];
        let mut value = 0.0;
        for (i, &(t, w)) in nodes.iter().enumerate() {
            let u = 0.5 * (t + 1.0);
            let s = (u - 1.0) / mag;
            let est = facet_measure(
                family,
                j,
                mags,
                s,
                samples,
                sub_seed(seed, 0x6465_636f, (j * gl_nodes + i) as u64),
            )?;
            let coeff = 0.5 * w * u * u / mag; // du = dt / 2
            value += coeff * est.value;
            variance += (0.5 * coeff * est.std_error).powi(2);
            count += est.sample_count;
        }
        per_unit.push(value);
    }
    let (excess, excess_se) = excess_volume(family, samples.max(1000), sub_seed(seed, 0x6578, 0))?;
    variance += (0.5 * excess_se).powi(2);
    count += samples as u64;
    let total = 0.5 * per_unit.iter().sum::<f64>() + 0.5 * excess;
    Ok(EnergyEstimate {
        total,
        per_unit,
        excess: Some(excess),
        std_error: variance.sqrt(),
        sample_count: count,
    })
}

/// Monte Carlo estimate of the L^r deviation (r-th power, not the norm)
/// between the network and the limit polytope indicator.
pub fn lr_error(
    weights: &NetworkWeights,
    family: &HalfSpaceFamily,
    r: u32,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64), TrainError> {
    if r != 1 && r != 2 {
        return Err(TrainError::BadLrExponent(r));
    }
    weights.check_dims(family)?;
    let d = weights.dim();
    let moments = mc_scalar(seed, 0x6c72_6572 ^ u64::from(r), samples, |rng| {
        let mut x = vec![0.0; d];
        sample_cube(rng, &mut x);
        let f = crate::net::forward_value_unchecked(weights, &x);
        let target = f64::from(family.contains(&x));
        let diff = (f - target).abs();
        if r == 1 {
            diff
        } else {
            diff * diff
        }
    });
    let scale = family.domain().cube_volume();
    Ok((scale * moments.mean(), scale * moments.std_error()))
}
