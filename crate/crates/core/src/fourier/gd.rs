//! Gradient descent on the truncated coefficient vector.
//!
//! With the biases of the problem absent, each shell follows the exact
//! linear recursion a <- a - eta (2^d a - raw); the fixed point is the
//! projection raw / 2^d and the distance to it contracts by |1 - eta 2^d|
//! per step. Sine coefficients start at zero and stay there (the target is
//! even), so only the cosine shells are tracked.

use super::coeff::ball_coefficient;
use super::FourierError;

#[derive(Debug, Clone)]
pub struct FourierGdResult {
    pub d: usize,
    /// Cutoff radius N; shells m < N^2 are tracked.
    pub n: u32,
    pub eta: f64,
    pub steps: u64,
    /// Final per-shell coefficient values, indexed by m = |k|^2.
    pub coefficients: Vec<f64>,
    /// Projection targets per shell.
    pub projection: Vec<f64>,
    /// max_m |a_m - projection_m| after the run.
    pub max_error: f64,
}

/// Gradient descent from the zero start.
pub fn fourier_gd(d: usize, n: u32, eta: f64, steps: u64) -> Result<FourierGdResult, FourierError> {
    let shells = (n as u64) * (n as u64);
    fourier_gd_from(d, n, eta, steps, &vec![0.0; shells as usize])
}

/// Gradient descent from an explicit per-shell start vector (length N^2).
pub fn fourier_gd_from(
    d: usize,
    n: u32,
    eta: f64,
    steps: u64,
    start: &[f64],
) -> Result<FourierGdResult, FourierError> {
    if d == 0 {
        return Err(FourierError::BadDimension(d));
    }
    let norm = (2.0f64).powi(d as i32);
    let bound = 2.0 / norm;
    if !(eta > 0.0 && eta < bound) {
        return Err(FourierError::EtaUnstable { eta, bound });
    }
    let shells = ((n as u64) * (n as u64)) as usize;
    assert_eq!(start.len(), shells, "start vector must cover m < N^2");
    let mut coefficients = start.to_vec();
    let mut projection = Vec::with_capacity(shells);
    for m in 0..shells {
        projection.push(ball_coefficient(d, (m as f64).sqrt())? / norm);
    }
    let contraction = 1.0 - eta * norm;
    for (a, &p) in coefficients.iter_mut().zip(projection.iter()) {
        // a_{t+1} = a_t (1 - eta 2^d) + eta raw; iterated exactly:
        // a_T = p + (a_0 - p) contraction^T.
        let mut value = *a;
        for _ in 0..steps {
            value = p + (value - p) * contraction;
        }
        *a = value;
    }
    let max_error = coefficients
        .iter()
        .zip(projection.iter())
        .map(|(a, p)| (a - p).abs())
        .fold(0.0, f64::max);
    Ok(FourierGdResult {
        d,
        n,
        eta,
        steps,
        coefficients,
        projection,
        max_error,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d1_half_step_converges_immediately() {
        // eta = 0.5 in d = 1 zeroes the contraction factor.
        let result = fourier_gd(1, 8, 0.5, 100).unwrap();
        assert!(result.max_error <= 1e-8, "max error {}", result.max_error);
    }

    #[test]
    fn zero_steps_returns_start() {
        let start: Vec<f64> = (0..64).map(|i| i as f64 * 0.01).collect();
        let result = fourier_gd_from(1, 8, 0.25, 0, &start).unwrap();
        assert_eq!(result.coefficients, start);
    }

    #[test]
    fn projection_start_is_fixed_point() {
        let probe = fourier_gd(2, 6, 0.3, 500).unwrap();
        let result = fourier_gd_from(2, 6, 0.3, 25, &probe.projection).unwrap();
        for (a, p) in result.coefficients.iter().zip(result.projection.iter()) {
            assert_eq!(a, p);
        }
    }

    #[test]
    fn geometric_contraction_rate() {
        let d = 2;
        let eta = 0.3;
        let contraction: f64 = 1.0 - eta * 4.0;
        for steps in [5u64, 10, 20] {
            let result = fourier_gd(d, 4, eta, steps).unwrap();
            // Start at zero: error = |projection| * contraction^T.
            for (a, p) in result.coefficients.iter().zip(result.projection.iter()) {
                let expect = p * (1.0 - contraction.powi(steps as i32));
                assert!((a - expect).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn unstable_eta_reported() {
        assert!(matches!(
            fourier_gd(1, 4, 1.0, 10),
            Err(FourierError::EtaUnstable { .. })
        ));
        assert!(matches!(
            fourier_gd(3, 4, 0.3, 10),
            Err(FourierError::EtaUnstable { .. })
        ));
    }
}
