//! Monte Carlo estimators for the excess volume of the polytope over the
//! ball and for the facet patch measures that weight the energy
//! decomposition.
//!
//! The facet patch for unit j at slab coordinate r <= 0 is the hyperplane
//! { y . tau_j = -1/2 + r } minus every scaled competitor slab
//! L_j'(|w_j| r / |w_j'|) = { y : y . tau_j' <= -1/2 + |w_j| r / |w_j'| },
//! all intersected with the cube. Points are sampled uniformly on the
//! hyperplane's intersection with the ball of radius sqrt(d), a closed-form
//! superset of its intersection with the cube.

use super::family::{dot, HalfSpaceFamily};
use super::GeometryError;
use crate::rng::{mc_scalar, rng_for, sample_cube, sample_normal, McMoments, MC_BLOCK};
use crate::special::unit_ball_volume;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

/// One estimated facet patch measure.
#[derive(Debug, Clone, Copy)]
pub struct FacetMeasureEstimate {
    /// Estimated (d-1)-dimensional measure.
    pub value: f64,
    pub std_error: f64,
    pub sample_count: u64,
    /// Facet index the estimate belongs to.
    pub j: usize,
    /// Slab coordinate the plane was placed at.
    pub r: f64,
}

/// Monte Carlo estimate of the volume of (polytope minus ball) over the
/// cube. Returns (estimate, standard error). Deterministic per seed.
pub fn excess_volume(
    family: &HalfSpaceFamily,
    samples: usize,
    seed: u64,
) -> Result<(f64, f64), GeometryError> {
    if samples < 1000 {
        return Err(GeometryError::TooFewSamples {
            min: 1000,
            got: samples,
        });
    }
    let domain = family.domain();
    let d = family.d;
    let moments = mc_scalar(seed, 0x6578_6365, samples, |rng| {
        let mut x = vec![0.0; d];
        sample_cube(rng, &mut x);
        let norm_sq: f64 = x.iter().map(|v| v * v).sum();
        let in_ball = norm_sq <= 0.25;
        f64::from(!in_ball && family.contains(&x))
    });
    let scale = domain.cube_volume();
    Ok((scale * moments.mean(), scale * moments.std_error()))
}

/// Orthonormal basis of the orthogonal complement of `tau`, built by
/// Gram-Schmidt from the coordinate vectors (the coordinate most aligned
/// with tau is dropped).
fn tangent_basis(tau: &[f64]) -> Vec<Vec<f64>> {
    let d = tau.len();
    let drop = tau
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.abs().total_cmp(&b.1.abs()))
        .map(|(i, _)| i)
        .unwrap_or(0);
    let mut basis: Vec<Vec<f64>> = Vec::with_capacity(d - 1);
    for i in (0..d).filter(|&i| i != drop) {
        let mut v = vec![0.0; d];
        v[i] = 1.0;
        let proj = dot(&v, tau);
        for (vk, tk) in v.iter_mut().zip(tau.iter()) {
            *vk -= proj * tk;
        }
        for b in &basis {
            let p = dot(&v, b);
            for (vk, bk) in v.iter_mut().zip(b.iter()) {
                *vk -= p * bk;
            }
        }
        let n = dot(&v, &v).sqrt();
        for vk in v.iter_mut() {
            *vk /= n;
        }
        basis.push(v);
    }
    basis
}

/// Measure of the patch of the plane { y . tau_j = offset } that lies in
/// the cube with y . tau_j' > thresholds[j'] for every j' != j.
///
/// `thresholds[j]` is ignored. Exact (zero variance) in dimension one.
fn patch_measure(
    family: &HalfSpaceFamily,
    j: usize,
    offset: f64,
    thresholds: &[f64],
    samples: usize,
    seed: u64,
) -> McMomentsScaled {
    let d = family.d;
    let tau = &family.directions[j];
    if d == 1 {
        // The "plane" is the single point offset * tau; counting measure.
        let y = [offset * tau[0]];
        let inside = (-1.0..1.0).contains(&y[0])
            && family
                .directions
                .iter()
                .enumerate()
                .filter(|(jp, _)| *jp != j)
                .all(|(jp, taup)| dot(taup, &y) > thresholds[jp]);
        return McMomentsScaled {
            value: f64::from(inside),
            std_error: 0.0,
            n: 1,
        };
    }

    // Superset patch: hyperplane intersected with ball(0, sqrt(d)), which
    // contains hyperplane intersected with the cube (cube corners sit at
    // distance sqrt(d)).
    let rho_sq = d as f64 - offset * offset;
    debug_assert!(rho_sq > 0.0);
    let rho = rho_sq.sqrt();
    let patch_volume = unit_ball_volume(d - 1) * rho.powi((d - 1) as i32);
    let basis = tangent_basis(tau);
    let center: Vec<f64> = tau.iter().map(|t| t * offset).collect();

    let blocks = samples.div_ceil(MC_BLOCK);
    let stream = 0x6661_6365 ^ (j as u64) << 32 ^ offset.to_bits().rotate_left(17);
    let partials: Vec<McMoments> = (0..blocks)
        .into_par_iter()
        .map(|b| {
            let mut rng = rng_for(seed, stream, b as u64);
            let count = MC_BLOCK.min(samples - b * MC_BLOCK);
            let mut m = McMoments::default();
            let mut y = vec![0.0; d];
            let mut u = vec![0.0; d - 1];
            for _ in 0..count {
                sample_in_ball(&mut rng, &mut u, rho);
                y.copy_from_slice(&center);
                for (uk, bk) in u.iter().zip(basis.iter()) {
                    for (yi, bi) in y.iter_mut().zip(bk.iter()) {
                        *yi += uk * bi;
                    }
                }
                let ok = y.iter().all(|v| (-1.0..1.0).contains(v))
                    && family
                        .directions
                        .iter()
                        .enumerate()
                        .all(|(jp, taup)| jp == j || dot(taup, &y) > thresholds[jp]);
                m.push(f64::from(ok));
            }
            m
        })
        .collect();
    let mut total = McMoments::default();
    for p in &partials {
        total.merge(p);
    }
    McMomentsScaled {
        value: patch_volume * total.mean(),
        std_error: patch_volume * total.std_error(),
        n: total.n,
    }
}

struct McMomentsScaled {
    value: f64,
    std_error: f64,
    n: u64,
}

/// Uniform point in the (d-1)-ball of radius rho (direction from
/// normalized Gaussians, radius from the inverse-power transform).
fn sample_in_ball(rng: &mut ChaCha8Rng, u: &mut [f64], rho: f64) {
    let k = u.len();
    loop {
        let mut norm_sq = 0.0;
        for ui in u.iter_mut() {
            *ui = sample_normal(rng);
            norm_sq += *ui * *ui;
        }
        if norm_sq > 1e-300 {
            let radius = rho * rand::Rng::random::<f64>(rng).powf(1.0 / k as f64);
            let scale = radius / norm_sq.sqrt();
            for ui in u.iter_mut() {
                *ui *= scale;
            }
            return;
        }
    }
}

fn check_facet_args(
    family: &HalfSpaceFamily,
    j: usize,
    w_mags: &[f64],
) -> Result<(), GeometryError> {
    if j >= family.len() {
        return Err(GeometryError::FacetIndexOutOfRange {
            j,
            n: family.len(),
        });
    }
    if w_mags.len() != family.len() {
        return Err(GeometryError::MagnitudeLengthMismatch {
            got: w_mags.len(),
            want: family.len(),
        });
    }
    if w_mags.iter().any(|m| !(*m > 0.0)) {
        return Err(GeometryError::NonPositiveMagnitude);
    }
    Ok(())
}

/// Estimates the facet patch measure for unit `j` at slab coordinate
/// `r` in (-1/|w_j|, 0]. At r = 0 the competitor thresholds reduce to -1/2
/// independently of the magnitudes.
pub fn facet_measure(
    family: &HalfSpaceFamily,
    j: usize,
    w_mags: &[f64],
    r: f64,
    samples: usize,
    seed: u64,
) -> Result<FacetMeasureEstimate, GeometryError> {
    check_facet_args(family, j, w_mags)?;
    let lo = -1.0 / w_mags[j];
    if !(r > lo && r <= 0.0) {
        return Err(GeometryError::SlabCoordinateOutOfRange { r, lo });
    }
    let thresholds: Vec<f64> = w_mags
        .iter()
        .map(|mj| -0.5 + w_mags[j] * r / mj)
        .collect();
    let m = patch_measure(family, j, -0.5 + r, &thresholds, samples, seed);
    Ok(FacetMeasureEstimate {
        value: m.value,
        std_error: m.std_error,
        sample_count: m.n,
        j,
        r,
    })
}

/// gamma = min_j of the facet measure at r = 0.
pub fn gamma_estimate(
    family: &HalfSpaceFamily,
    w_mags: &[f64],
    samples: usize,
    seed: u64,
) -> Result<FacetMeasureEstimate, GeometryError> {
    check_facet_args(family, 0, w_mags)?;
    let mut best: Option<FacetMeasureEstimate> = None;
    for j in 0..family.len() {
        let est = facet_measure(family, j, w_mags, 0.0, samples, seed)?;
        if best.is_none_or(|b| est.value < b.value) {
            best = Some(est);
        }
    }
    Ok(best.expect("family is nonempty"))
}

/// Finite-difference estimate of
/// gamma* = sup_j sup_{r, R} | d/dR lambda_{d-1}( D*_j(R, r) ) | where
/// D*_j(R, r) excludes the fixed competitor slabs { y . tau_j' <= -1/2 + R }.
#[derive(Debug, Clone)]
pub struct GammaStarEstimate {
    pub value: f64,
    /// Grid spacing over which the steepest difference quotient was taken.
    pub grid_spacing: f64,
    /// Facet attaining the sup.
    pub j: usize,
    pub r: f64,
}

pub fn gamma_star_estimate(
    family: &HalfSpaceFamily,
    r_grid: &[f64],
    big_r_grid: &[f64],
    samples: usize,
    seed: u64,
) -> Result<GammaStarEstimate, GeometryError> {
    if big_r_grid.len() < 2 {
        return Err(GeometryError::TooFewSamples {
            min: 2,
            got: big_r_grid.len(),
        });
    }
    let mut best = GammaStarEstimate {
        value: 0.0,
        grid_spacing: big_r_grid[1] - big_r_grid[0],
        j: 0,
        r: r_grid.first().copied().unwrap_or(0.0),
    };
    for j in 0..family.len() {
        for &r in r_grid {
            // Common random numbers across the R grid so the differences
            // are not drowned by independent Monte Carlo noise.
            let values: Vec<f64> = big_r_grid
                .iter()
                .map(|&big_r| {
                    let thresholds = vec![-0.5 + big_r; family.len()];
                    patch_measure(family, j, -0.5 + r, &thresholds, samples, seed).value
                })
                .collect();
            for w in values.windows(2).zip(big_r_grid.windows(2)) {
                let (pair, grid) = w;
                let slope = ((pair[1] - pair[0]) / (grid[1] - grid[0])).abs();
                if slope > best.value {
                    best = GammaStarEstimate {
                        value: slope,
                        grid_spacing: grid[1] - grid[0],
                        j,
                        r,
                    };
                }
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{make_directions, DirectionScheme};

    fn axis_family() -> HalfSpaceFamily {
        HalfSpaceFamily::from_directions(
            2,
            vec![
                vec![1.0, 0.0],
                vec![0.0, 1.0],
                vec![-1.0, 0.0],
                vec![0.0, -1.0],
            ],
        )
        .unwrap()
    }

    /// Area of the regular tangent n-gon (apothem 1/2) minus the disk.
    fn polygon_excess(n: usize) -> f64 {
        let t = std::f64::consts::PI / n as f64;
        (n as f64 * t.tan() - std::f64::consts::PI) / 4.0
    }

    #[test]
    fn excess_axis_family_matches_square_minus_disk() {
        let fam = axis_family();
        let (est, se) = excess_volume(&fam, 200_000, 9).unwrap();
        let expect = 1.0 - std::f64::consts::PI / 4.0;
        assert!(
            (est - expect).abs() < 3.0 * se,
            "estimate {est} vs {expect} (se {se})"
        );
    }

    #[test]
    fn excess_equal_angle_64_small() {
        let fam = make_directions(2, 64, DirectionScheme::EqualAngle, 0).unwrap();
        let (est, se) = excess_volume(&fam, 200_000, 10).unwrap();
        assert!(est < 0.02);
        let expect = polygon_excess(64);
        assert!((est - expect).abs() < 3.0 * se + 1e-4);
    }

    #[test]
    fn excess_rejects_tiny_sample_counts() {
        let fam = axis_family();
        assert!(matches!(
            excess_volume(&fam, 10, 0),
            Err(GeometryError::TooFewSamples { .. })
        ));
    }

    #[test]
    fn facet_axis_family_unit_segment() {
        let fam = axis_family();
        let mags = vec![100.0; 4];
        let est = facet_measure(&fam, 0, &mags, 0.0, 100_000, 4).unwrap();
        assert!(
            (est.value - 1.0).abs() < 3.0 * est.std_error,
            "facet measure {} (se {})",
            est.value,
            est.std_error
        );
    }

    #[test]
    fn facet_r0_independent_of_magnitudes() {
        // At r = 0 the thresholds do not involve the magnitudes, so with a
        // common seed the estimates agree bit for bit.
        let fam = axis_family();
        let a = facet_measure(&fam, 1, &[10.0; 4], 0.0, 20_000, 5).unwrap();
        let b = facet_measure(&fam, 1, &[100.0; 4], 0.0, 20_000, 5).unwrap();
        let c = facet_measure(&fam, 1, &[1000.0; 4], 0.0, 20_000, 5).unwrap();
        assert_eq!(a.value.to_bits(), b.value.to_bits());
        assert_eq!(b.value.to_bits(), c.value.to_bits());
    }

    #[test]
    fn facet_octagon_side_length() {
        // Regular tangent octagon, apothem 1/2: side = 2 * (1/2) * tan(pi/8).
        let fam = make_directions(2, 8, DirectionScheme::EqualAngle, 0).unwrap();
        let mags = vec![200.0; 8];
        let est = facet_measure(&fam, 1, &mags, 0.0, 200_000, 6).unwrap();
        let expect = (std::f64::consts::PI / 8.0).tan();
        assert!(
            (est.value - expect).abs() < 3.0 * est.std_error,
            "octagon facet {} vs {expect} (se {})",
            est.value,
            est.std_error
        );
    }

    #[test]
    fn facet_rejects_bad_r() {
        let fam = axis_family();
        let mags = vec![100.0; 4];
        assert!(matches!(
            facet_measure(&fam, 0, &mags, 0.1, 1000, 0),
            Err(GeometryError::SlabCoordinateOutOfRange { .. })
        ));
        assert!(matches!(
            facet_measure(&fam, 0, &mags, -0.02, 1000, 0),
            Err(GeometryError::SlabCoordinateOutOfRange { .. })
        ));
        assert!(matches!(
            facet_measure(&fam, 9, &mags, 0.0, 1000, 0),
            Err(GeometryError::FacetIndexOutOfRange { .. })
        ));
    }

    #[test]
    fn shrinking_facet_monotone_in_other_magnitudes() {
        // Raising a competitor magnitude only enlarges its exclusion slab,
        // so with common random numbers the estimate cannot increase.
        let fam = axis_family();
        let r = -0.004;
        let base = vec![200.0; 4];
        let mut bigger = base.clone();
        bigger[1] = 4000.0;
        let a = facet_measure(&fam, 0, &base, r, 50_000, 12).unwrap();
        let b = facet_measure(&fam, 0, &bigger, r, 50_000, 12).unwrap();
        assert!(b.value <= a.value + 1e-12);
    }

    #[test]
    fn gamma_axis_family_is_one() {
        let fam = axis_family();
        let est = gamma_estimate(&fam, &[500.0; 4], 100_000, 3).unwrap();
        assert!((est.value - 1.0).abs() < 3.0 * est.std_error);
    }

    #[test]
    fn gamma_near_duplicate_direction_bisects() {
        // A perturbed duplicate at angle 1e-3: each member of the pair
        // excludes the half of the other's facet on its own slab side, so
        // both keep roughly half of the unit segment and gamma drops to
        // ~0.5 (it does not vanish: the exclusions are one-sided).
        let eps = 1e-3f64;
        let fam = HalfSpaceFamily::from_directions(
            2,
            vec![
                vec![1.0, 0.0],
                vec![eps.cos(), eps.sin()],
                vec![0.0, 1.0],
                vec![-1.0, 0.0],
                vec![0.0, -1.0],
            ],
        )
        .unwrap();
        let est = gamma_estimate(&fam, &[300.0; 5], 100_000, 8).unwrap();
        assert!(
            (est.value - 0.5).abs() < 3.0 * est.std_error + 0.002,
            "gamma {} not near the bisected value 0.5",
            est.value
        );
    }

    #[test]
    fn gamma_star_axis_slope_two() {
        // On { y1 = -1/2 } the two perpendicular neighbours each remove
        // length R, so lambda(R) = 1 - 2R and |d lambda / dR| = 2.
        let fam = axis_family();
        let r_grid = [0.0];
        let big_r = [0.005, 0.01, 0.015, 0.02];
        let est = gamma_star_estimate(&fam, &r_grid, &big_r, 400_000, 21).unwrap();
        assert!(
            (est.value - 2.0).abs() < 0.25,
            "gamma* slope {} not near 2",
            est.value
        );
    }

    #[test]
    fn gamma_star_single_halfspace_zero() {
        let fam = HalfSpaceFamily::from_directions(2, vec![vec![1.0, 0.0]]).unwrap();
        let est = gamma_star_estimate(&fam, &[0.0], &[0.01, 0.02, 0.03], 50_000, 2).unwrap();
        assert_eq!(est.value, 0.0);
    }

    #[test]
    fn facet_d1_counting_measure() {
        let fam = HalfSpaceFamily::from_directions(1, vec![vec![1.0], vec![-1.0]]).unwrap();
        let est = facet_measure(&fam, 0, &[100.0, 100.0], -0.005, 100, 0).unwrap();
        assert_eq!(est.value, 1.0);
        assert_eq!(est.std_error, 0.0);
    }
}
