//! Quadrature reference for the ball coefficients, independent of the
//! Bessel evaluation path.
//!
//! Slicing the ball perpendicular to k reduces the integral to one
//! dimension with the (d-1)-ball volume as cross-section weight; the
//! substitution s = sin(theta)/2 removes the endpoint root so the panels
//! converge spectrally:
//!
//! ```text
//! raw(kappa) = V_{d-1} (1/2)^d  int_{-pi/2}^{pi/2}
//!              cos^d(theta) cos((kappa pi / 2) sin theta) d theta.
//! ```

use super::FourierError;
use crate::quad::integrate_adaptive;
use crate::special::unit_ball_volume;

/// Adaptive-quadrature evaluation of the raw coefficient.
pub fn ball_coefficient_quadrature(d: usize, kappa: f64) -> Result<f64, FourierError> {
    if d == 0 {
        return Err(FourierError::BadDimension(d));
    }
    let omega = kappa * std::f64::consts::FRAC_PI_2;
    let f = |theta: f64| theta.cos().powi(d as i32) * (omega * theta.sin()).cos();
    let integral = integrate_adaptive(
        &f,
        -std::f64::consts::FRAC_PI_2,
        std::f64::consts::FRAC_PI_2,
        1e-13,
    );
    Ok(unit_ball_volume(d - 1) * (0.5f64).powi(d as i32) * integral)
}

#[cfg(test)]
mod tests {
    use super::super::coeff::ball_coefficient;
    use super::*;

    #[test]
    fn matches_d1_antiderivative() {
        for kappa in [0.0f64, 1.0, 2.0, 5.0, 11.0] {
            let got = ball_coefficient_quadrature(1, kappa).unwrap();
            let expect = if kappa == 0.0 {
                1.0
            } else {
                2.0 * (kappa * std::f64::consts::FRAC_PI_2).sin() / (kappa * std::f64::consts::PI)
            };
            assert!((got - expect).abs() < 1e-12, "kappa {kappa}: {got} vs {expect}");
        }
    }

    #[test]
    fn agrees_with_bessel_route() {
        for d in [1usize, 2, 3, 5] {
            for m in [1u64, 2, 4, 9, 25, 100, 400] {
                let kappa = (m as f64).sqrt();
                let quad = ball_coefficient_quadrature(d, kappa).unwrap();
                let bessel = ball_coefficient(d, kappa).unwrap();
                let tol = 1e-8 * quad.abs().max(bessel.abs()) + 1e-12;
                assert!(
                    (quad - bessel).abs() <= tol,
                    "d={d} kappa^2={m}: quad {quad} vs bessel {bessel}"
                );
            }
        }
    }
}
