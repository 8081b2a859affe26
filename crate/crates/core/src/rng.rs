//! Seed derivation and deterministic block-partitioned Monte Carlo.
//!
//! Every estimator in this crate draws randomness through [`rng_for`], which
//! derives an independent stream from `(seed, stream, block)`. Monte Carlo
//! loops are split into fixed-size blocks; blocks may run on any number of
//! threads but are always combined in block order, so results are bitwise
//! identical for a given seed no matter the thread count.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// Fixed Monte Carlo partition size. Part of the reproducibility contract:
/// changing it changes the sample stream.
pub const MC_BLOCK: usize = 8192;

/// SplitMix64 finalizer, used to decorrelate derived seeds.
fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Derives a sub-seed for a named stream and block index.
pub fn sub_seed(seed: u64, stream: u64, block: u64) -> u64 {
    splitmix64(splitmix64(seed ^ stream.wrapping_mul(0xa076_1d64_78bd_642f)) ^ block)
}

/// RNG for one Monte Carlo block.
pub fn rng_for(seed: u64, stream: u64, block: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(sub_seed(seed, stream, block))
}

/// Running first and second moments of a scalar Monte Carlo integrand.
#[derive(Debug, Clone, Copy, Default)]
pub struct McMoments {
    pub n: u64,
    pub sum: f64,
    pub sum_sq: f64,
}

impl McMoments {
    pub fn push(&mut self, v: f64) {
        self.n += 1;
        self.sum += v;
        self.sum_sq += v * v;
    }

    pub fn merge(&mut self, other: &McMoments) {
        self.n += other.n;
        self.sum += other.sum;
        self.sum_sq += other.sum_sq;
    }

    pub fn mean(&self) -> f64 {
        self.sum / self.n as f64
    }

    /// Standard error of the mean.
    pub fn std_error(&self) -> f64 {
        let n = self.n as f64;
        let var = (self.sum_sq / n - (self.sum / n).powi(2)).max(0.0);
        (var / n).sqrt()
    }
}

/// Block-partitioned Monte Carlo estimate of `E[f]` under the block RNGs.
///
/// Blocks are evaluated in parallel and folded in index order.
pub fn mc_scalar<F>(seed: u64, stream: u64, samples: usize, f: F) -> McMoments
where
    F: Fn(&mut ChaCha8Rng) -> f64 + Sync,
{
    let blocks = samples.div_ceil(MC_BLOCK);
    let partials: Vec<McMoments> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = rng_for(seed, stream, b as u64);
            let count = MC_BLOCK.min(samples - b * MC_BLOCK);
            let mut m = McMoments::default();
            for _ in 0..count {
                m.push(f(&mut rng));
            }
            m
        })
        .collect();
    let mut total = McMoments::default();
    for p in &partials {
        total.merge(p);
    }
    total
}

/// Fills `x` with a uniform draw from the cube `[-1,1)^d`.
pub fn sample_cube(rng: &mut ChaCha8Rng, x: &mut [f64]) {
    for xi in x.iter_mut() {
        *xi = 2.0 * rng.random::<f64>() - 1.0;
    }
}

/// One standard normal via Box-Muller (uses two uniforms, discards the twin).
pub fn sample_normal(rng: &mut ChaCha8Rng) -> f64 {
    let u1: f64 = rng.random();
    let u2: f64 = rng.random();
    (-2.0 * (1.0 - u1).ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}
