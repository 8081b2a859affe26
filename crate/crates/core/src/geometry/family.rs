//! Families of unit directions tau_j and the half-spaces
//! H_j = { x : x . tau_j > -1/2 } whose intersection tightens onto the ball
//! as the family grows dense on the sphere.

use super::{Domain, GeometryError};
use crate::rng::{rng_for, sample_normal};
use serde::{Deserialize, Serialize};

const UNIT_TOL: f64 = 1e-12;

/// How directions are generated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DirectionScheme {
    /// Angles 2*pi*k/N on the circle; d = 2 only.
    EqualAngle,
    /// Fibonacci spiral points on the 2-sphere; d = 3 only.
    FibonacciSphere,
    /// Seeded random unit vectors followed by repulsion sweeps; any d.
    RepelledRandom,
    /// Directions supplied explicitly.
    Manual,
}

/// A family of unit directions with the common offset 1/2.
///
/// Invariants enforced on construction: every direction is unit to 1e-12,
/// and no two directions coincide. The ball of radius 1/2 is contained in
/// every half-space automatically (|sigma| < 1/2 implies
/// sigma . tau > -1/2).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HalfSpaceFamily {
    pub d: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub scheme: DirectionScheme,
    pub seed: u64,
    pub directions: Vec<Vec<f64>>,
}

impl HalfSpaceFamily {
    pub fn from_directions(d: usize, directions: Vec<Vec<f64>>) -> Result<Self, GeometryError> {
        let family = HalfSpaceFamily {
            d,
            n: directions.len(),
            scheme: DirectionScheme::Manual,
            seed: 0,
            directions,
        };
        family.validate()?;
        Ok(family)
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        if self.d == 0 {
            return Err(GeometryError::BadDimension(self.d));
        }
        if self.directions.is_empty() {
            return Err(GeometryError::EmptyFamily);
        }
        for (j, tau) in self.directions.iter().enumerate() {
            if tau.len() != self.d {
                return Err(GeometryError::DimensionMismatch {
                    got: tau.len(),
                    want: self.d,
                });
            }
            let norm = norm(tau);
            if (norm - 1.0).abs() > UNIT_TOL {
                return Err(GeometryError::NotUnit { j, norm });
            }
        }
        for a in 0..self.directions.len() {
            for b in (a + 1)..self.directions.len() {
                if dot(&self.directions[a], &self.directions[b]) > 1.0 - UNIT_TOL {
                    return Err(GeometryError::DuplicateDirection { a, b });
                }
            }
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn domain(&self) -> Domain {
        Domain::new(self.d).expect("validated family has d >= 1")
    }

    /// Strict membership in the intersection of all half-spaces.
    pub fn contains(&self, x: &[f64]) -> bool {
        self.directions.iter().all(|tau| dot(tau, x) > -0.5)
    }

    /// Smallest pairwise angle, in radians.
    pub fn min_pairwise_angle(&self) -> f64 {
        let mut min = f64::INFINITY;
        for a in 0..self.directions.len() {
            for b in (a + 1)..self.directions.len() {
                let cos = dot(&self.directions[a], &self.directions[b]).clamp(-1.0, 1.0);
                min = min.min(cos.acos());
            }
        }
        min
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("family serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        let family: HalfSpaceFamily = serde_json::from_str(text)?;
        Ok(family)
    }
}

/// Membership of `x` in the open polytope determined by the family.
pub fn polytope_contains(family: &HalfSpaceFamily, x: &[f64]) -> bool {
    family.contains(x)
}

/// Builds a direction family under the given scheme.
///
/// For the nested schemes (equal-angle with doubling N) the polytope
/// shrinks monotonically toward the ball; the repelled-random scheme only
/// guarantees density in the large-N limit.
pub fn make_directions(
    d: usize,
    n: usize,
    scheme: DirectionScheme,
    seed: u64,
) -> Result<HalfSpaceFamily, GeometryError> {
    if n == 0 {
        return Err(GeometryError::EmptyFamily);
    }
    let directions = match scheme {
        DirectionScheme::EqualAngle => {
            if d != 2 {
                return Err(GeometryError::UnsupportedScheme { scheme, d });
            }
            (0..n)
                .map(|k| {
                    let theta = 2.0 * std::f64::consts::PI * k as f64 / n as f64;
                    vec![theta.cos(), theta.sin()]
                })
                .collect()
        }
        DirectionScheme::FibonacciSphere => {
            if d != 3 {
                return Err(GeometryError::UnsupportedScheme { scheme, d });
            }
            let golden_angle = std::f64::consts::PI * (3.0 - (5.0f64).sqrt());
            (0..n)
                .map(|k| {
                    let z = 1.0 - (2.0 * k as f64 + 1.0) / n as f64;
                    let r = (1.0 - z * z).sqrt();
                    let phi = golden_angle * k as f64;
                    vec![r * phi.cos(), r * phi.sin(), z]
                })
                .collect()
        }
        DirectionScheme::RepelledRandom => {
            if d == 0 {
                return Err(GeometryError::BadDimension(d));
            }
            repelled_random(d, n, seed)
        }
        DirectionScheme::Manual => return Err(GeometryError::UnsupportedScheme { scheme, d }),
    };
    let family = HalfSpaceFamily {
        d,
        n,
        scheme,
        seed,
        directions,
    };
    family.validate()?;
    Ok(family)
}

/// Random unit vectors followed by a fixed number of repulsion sweeps that
/// push the minimum pairwise angle up. Deterministic in the seed.
fn repelled_random(d: usize, n: usize, seed: u64) -> Vec<Vec<f64>> {
    let mut rng = rng_for(seed, 0x6469_7273, 0);
    let mut dirs: Vec<Vec<f64>> = (0..n)
        .map(|_| {
            let mut v: Vec<f64> = (0..d).map(|_| sample_normal(&mut rng)).collect();
            normalize(&mut v);
            v
        })
        .collect();

    const SWEEPS: usize = 80;
    for sweep in 0..SWEEPS {
        let step = 0.3 * (1.0 - sweep as f64 / SWEEPS as f64).powi(2) + 0.01;
        let mut forces = vec![vec![0.0; d]; n];
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                let mut diff: Vec<f64> = (0..d).map(|k| dirs[i][k] - dirs[j][k]).collect();
                let dist = norm(&diff).max(1e-9);
                let scale = 1.0 / (dist * dist * dist);
                for (f, dk) in forces[i].iter_mut().zip(diff.iter_mut()) {
                    *f += *dk * scale;
                }
            }
        }
        let max_force = forces.iter().map(|f| norm(f)).fold(0.0f64, f64::max).max(1e-12);
        for (dir, force) in dirs.iter_mut().zip(forces.iter()) {
            for (v, f) in dir.iter_mut().zip(force.iter()) {
                *v += step * f / max_force;
            }
            normalize(dir);
        }
    }
    dirs
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| x * y).sum()
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}

fn normalize(v: &mut [f64]) {
    let n = norm(v);
    for x in v.iter_mut() {
        *x /= n;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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

    #[test]
    fn equal_angle_four_gives_axes() {
        let fam = make_directions(2, 4, DirectionScheme::EqualAngle, 0).unwrap();
        let expect = [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0], [0.0, -1.0]];
        for (tau, e) in fam.directions.iter().zip(expect.iter()) {
            assert!((tau[0] - e[0]).abs() < 1e-15 && (tau[1] - e[1]).abs() < 1e-15);
        }
    }

    #[test]
    fn equal_angle_eight_at_45_degrees() {
        let fam = make_directions(2, 8, DirectionScheme::EqualAngle, 0).unwrap();
        for (k, tau) in fam.directions.iter().enumerate() {
            let theta = std::f64::consts::PI / 4.0 * k as f64;
            assert!((tau[0] - theta.cos()).abs() < 1e-14);
            assert!((tau[1] - theta.sin()).abs() < 1e-14);
        }
        assert!((fam.min_pairwise_angle() - std::f64::consts::PI / 4.0).abs() < 1e-12);
    }

    #[test]
    fn polytope_membership_axis_family() {
        let fam = axis_family();
        assert!(polytope_contains(&fam, &[0.0, 0.0]));
        // Violates the tau = (-1, 0) half-space.
        assert!(!polytope_contains(&fam, &[0.6, 0.0]));
        // The polytope is the open square (-1/2, 1/2)^2.
        assert!(polytope_contains(&fam, &[0.49, 0.49]));
        assert!(!polytope_contains(&fam, &[0.5, 0.0]));
    }

    #[test]
    fn ball_contained_in_every_generated_polytope() {
        let fams = [
            make_directions(2, 16, DirectionScheme::EqualAngle, 0).unwrap(),
            make_directions(3, 24, DirectionScheme::FibonacciSphere, 0).unwrap(),
            make_directions(4, 20, DirectionScheme::RepelledRandom, 11).unwrap(),
        ];
        for fam in &fams {
            let mut rng = rng_for(5, 1, 0);
            let mut x = vec![0.0; fam.d];
            for _ in 0..10_000 {
                crate::rng::sample_cube(&mut rng, &mut x);
                let r: f64 = norm(&x);
                if r < 0.5 - 1e-9 {
                    assert!(fam.contains(&x));
                }
            }
        }
    }

    #[test]
    fn repelled_random_d5_regression() {
        let fam = make_directions(5, 32, DirectionScheme::RepelledRandom, 7).unwrap();
        let angle = fam.min_pairwise_angle();
        assert!(angle > 0.2, "min pairwise angle {angle} too small");
    }

    #[test]
    fn scheme_dimension_mismatch_rejected() {
        assert!(matches!(
            make_directions(3, 8, DirectionScheme::EqualAngle, 0),
            Err(GeometryError::UnsupportedScheme { .. })
        ));
        assert!(matches!(
            make_directions(2, 8, DirectionScheme::FibonacciSphere, 0),
            Err(GeometryError::UnsupportedScheme { .. })
        ));
    }

    #[test]
    fn duplicate_directions_rejected() {
        let err = HalfSpaceFamily::from_directions(
            2,
            vec![vec![1.0, 0.0], vec![1.0, 0.0]],
        );
        assert!(matches!(err, Err(GeometryError::DuplicateDirection { .. })));
    }

    #[test]
    fn json_round_trip() {
        let fam = make_directions(2, 8, DirectionScheme::EqualAngle, 3).unwrap();
        let text = fam.to_json();
        let back = HalfSpaceFamily::from_json(&text).unwrap();
        assert_eq!(back.d, fam.d);
        assert_eq!(back.n, fam.n);
        assert_eq!(back.directions, fam.directions);
        assert!(text.contains("\"N\": 8"));
        assert!(text.contains("equal-angle"));
    }
}
