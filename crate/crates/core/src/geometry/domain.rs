//! The cube `[-1,1)^d`, the ball of radius 1/2, and its indicator.

use super::GeometryError;
use serde::{Deserialize, Serialize};

/// Radius of the target ball; fixed by the problem statement.
pub const BALL_RADIUS: f64 = 0.5;

/// The ambient domain: the half-open cube `[-1,1)^d` with the centered ball
/// of radius 1/2 inside it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Domain {
    d: usize,
}

impl Domain {
    pub fn new(d: usize) -> Result<Self, GeometryError> {
        if d == 0 {
            return Err(GeometryError::BadDimension(d));
        }
        Ok(Domain { d })
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// Membership in the half-open cube.
    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.d && x.iter().all(|v| (-1.0..1.0).contains(v))
    }

    pub fn check_point(&self, x: &[f64]) -> Result<(), GeometryError> {
        if x.len() != self.d {
            return Err(GeometryError::DimensionMismatch {
                got: x.len(),
                want: self.d,
            });
        }
        if !self.contains(x) {
            return Err(GeometryError::OutsideCube);
        }
        Ok(())
    }

    /// Indicator of the closed ball |x| <= 1/2.
    pub fn ball_indicator(&self, x: &[f64]) -> Result<u8, GeometryError> {
        self.check_point(x)?;
        let norm_sq: f64 = x.iter().map(|v| v * v).sum();
        Ok(u8::from(norm_sq <= BALL_RADIUS * BALL_RADIUS))
    }

    /// Cube volume 2^d.
    pub fn cube_volume(&self) -> f64 {
        (2.0f64).powi(self.d as i32)
    }

    /// Ball volume; the k = 0 Fourier coefficient equals this.
    pub fn ball_volume(&self) -> f64 {
        crate::special::ball_volume(self.d, BALL_RADIUS)
    }
}

/// Free-function form of [`Domain::ball_indicator`].
pub fn ball_indicator(domain: &Domain, x: &[f64]) -> Result<u8, GeometryError> {
    domain.ball_indicator(x)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn indicator_examples() {
        let d3 = Domain::new(3).unwrap();
        assert_eq!(d3.ball_indicator(&[0.0, 0.0, 0.0]).unwrap(), 1);
        // Boundary is inclusive.
        assert_eq!(d3.ball_indicator(&[0.5, 0.0, 0.0]).unwrap(), 1);
        let d2 = Domain::new(2).unwrap();
        // |x| = 0.5657 > 0.5.
        assert_eq!(d2.ball_indicator(&[0.4, 0.4]).unwrap(), 0);
    }

    #[test]
    fn rejects_outside_cube() {
        let d2 = Domain::new(2).unwrap();
        assert_eq!(
            d2.ball_indicator(&[1.0, 0.0]),
            Err(GeometryError::OutsideCube)
        );
        assert_eq!(
            d2.ball_indicator(&[-1.5, 0.0]),
            Err(GeometryError::OutsideCube)
        );
        // -1 belongs to the half-open cube.
        assert_eq!(d2.ball_indicator(&[-1.0, 0.0]).unwrap(), 0);
    }

    #[test]
    fn rejects_dimension_zero() {
        assert_eq!(Domain::new(0), Err(GeometryError::BadDimension(0)));
    }

    #[test]
    fn ball_volume_d1_is_one() {
        assert!((Domain::new(1).unwrap().ball_volume() - 1.0).abs() < 1e-15);
    }
}
