//! Trainable weights in direction-magnitude form with tied biases.

use super::NetError;
use crate::geometry::HalfSpaceFamily;
use crate::rng::{rng_for, sample_normal};
use rand::Rng;
use serde::{Deserialize, Serialize};

/// ReLU.
#[inline]
pub fn relu(v: f64) -> f64 {
    v.max(0.0)
}

/// Subderivative of the ReLU with the convention h'(0) = 1.
#[inline]
pub fn relu_subgrad(v: f64) -> f64 {
    if v >= 0.0 {
        1.0
    } else {
        0.0
    }
}

/// Tied bias b = |w|/2 + 1.
pub fn bias_of(w: &[f64]) -> f64 {
    let norm: f64 = w.iter().map(|v| v * v).sum::<f64>().sqrt();
    norm / 2.0 + 1.0
}

/// Network weights stored as (unit direction, magnitude) pairs so that
/// purely radial training moves the magnitudes while the directions stay
/// bit-identical. Biases are always derived, never stored.
#[derive(Debug, Clone)]
pub struct NetworkWeights {
    d: usize,
    n_depth: u32,
    directions: Vec<Vec<f64>>,
    magnitudes: Vec<f64>,
}

/// Serialized form: the half-space family document plus a magnitudes array.
#[derive(Serialize, Deserialize)]
struct WeightsDoc {
    d: usize,
    #[serde(rename = "N")]
    n: usize,
    directions: Vec<Vec<f64>>,
    magnitudes: Vec<f64>,
}

impl NetworkWeights {
    /// Builds weights from full weight rows, splitting each into
    /// direction and magnitude.
    pub fn from_rows(d: usize, rows: Vec<Vec<f64>>) -> Result<Self, NetError> {
        let n_units = rows.len();
        if n_units == 0 || !n_units.is_power_of_two() {
            return Err(NetError::NotPowerOfTwo(n_units));
        }
        let mut directions = Vec::with_capacity(n_units);
        let mut magnitudes = Vec::with_capacity(n_units);
        for (j, row) in rows.into_iter().enumerate() {
            if row.len() != d {
                return Err(NetError::Geometry(
                    crate::geometry::GeometryError::DimensionMismatch {
                        got: row.len(),
                        want: d,
                    },
                ));
            }
            let mag: f64 = row.iter().map(|v| v * v).sum::<f64>().sqrt();
            if !(mag > 0.0) {
                return Err(NetError::ZeroMagnitude { j });
            }
            directions.push(row.iter().map(|v| v / mag).collect());
            magnitudes.push(mag);
        }
        Ok(NetworkWeights {
            d,
            n_depth: n_units.trailing_zeros(),
            directions,
            magnitudes,
        })
    }

    /// All units share the directions of `family` with one common magnitude.
    pub fn from_family(family: &HalfSpaceFamily, magnitude: f64) -> Result<Self, NetError> {
        if !family.len().is_power_of_two() {
            return Err(NetError::NotPowerOfTwo(family.len()));
        }
        if !(magnitude > 0.0) {
            return Err(NetError::ZeroMagnitude { j: 0 });
        }
        Ok(NetworkWeights {
            d: family.d,
            n_depth: family.len().trailing_zeros(),
            directions: family.directions.clone(),
            magnitudes: vec![magnitude; family.len()],
        })
    }

    /// Random unit directions and log-uniform magnitudes in `mag_range`.
    pub fn random(d: usize, n_depth: u32, mag_range: (f64, f64), seed: u64) -> Self {
        let n_units = 1usize << n_depth;
        let mut rng = rng_for(seed, 0x7765_6967, 0);
        let directions: Vec<Vec<f64>> = (0..n_units)
            .map(|_| {
                loop {
                    let v: Vec<f64> = (0..d).map(|_| sample_normal(&mut rng)).collect();
                    let norm: f64 = v.iter().map(|x| x * x).sum::<f64>().sqrt();
                    if norm > 1e-12 {
                        return v.into_iter().map(|x| x / norm).collect();
                    }
                }
            })
            .collect();
        let (lo, hi) = mag_range;
        let magnitudes: Vec<f64> = (0..n_units)
            .map(|_| (lo.ln() + rng.random::<f64>() * (hi.ln() - lo.ln())).exp())
            .collect();
        NetworkWeights {
            d,
            n_depth,
            directions,
            magnitudes,
        }
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    /// Depth parameter n; the unit count is 2^n.
    pub fn depth(&self) -> u32 {
        self.n_depth
    }

    pub fn units(&self) -> usize {
        1 << self.n_depth
    }

    pub fn magnitudes(&self) -> &[f64] {
        &self.magnitudes
    }

    pub fn magnitudes_mut(&mut self) -> &mut [f64] {
        &mut self.magnitudes
    }

    pub fn directions(&self) -> &[Vec<f64>] {
        &self.directions
    }

    /// Full weight row w_j = |w_j| * tau_j (0-based index).
    pub fn weight_row(&self, j: usize) -> Vec<f64> {
        self.directions[j]
            .iter()
            .map(|t| t * self.magnitudes[j])
            .collect()
    }

    /// Tied bias of unit j (0-based index).
    pub fn bias(&self, j: usize) -> f64 {
        self.magnitudes[j] / 2.0 + 1.0
    }

    /// Pre-activation w_j . x + b_j.
    pub fn pre_activation(&self, j: usize, x: &[f64]) -> f64 {
        let dot: f64 = self.directions[j]
            .iter()
            .zip(x.iter())
            .map(|(t, xi)| t * xi)
            .sum();
        self.magnitudes[j] * dot + self.bias(j)
    }

    /// The direction family induced by the weights.
    pub fn family(&self) -> Result<HalfSpaceFamily, NetError> {
        Ok(HalfSpaceFamily::from_directions(
            self.d,
            self.directions.clone(),
        )?)
    }

    /// Checks that `family` has one direction per unit in this dimension.
    pub fn check_dims(&self, family: &HalfSpaceFamily) -> Result<(), NetError> {
        if family.len() != self.units() || family.d != self.d {
            return Err(NetError::FamilyMismatch {
                got: self.units(),
                want: family.len(),
            });
        }
        Ok(())
    }

    /// Checks that the weights ride on the directions of `family`.
    pub fn check_family(&self, family: &HalfSpaceFamily) -> Result<(), NetError> {
        self.check_dims(family)?;
        for (a, b) in self.directions.iter().zip(family.directions.iter()) {
            let dot: f64 = a.iter().zip(b.iter()).map(|(x, y)| x * y).sum();
            if (dot - 1.0).abs() > 1e-9 {
                return Err(NetError::FamilyMismatch {
                    got: self.units(),
                    want: family.len(),
                });
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let doc = WeightsDoc {
            d: self.d,
            n: self.units(),
            directions: self.directions.clone(),
            magnitudes: self.magnitudes.clone(),
        };
        serde_json::to_string_pretty(&doc).expect("weights serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, NetError> {
        let doc: WeightsDoc =
            serde_json::from_str(text).map_err(|_| NetError::NotPowerOfTwo(0))?;
        let rows: Vec<Vec<f64>> = doc
            .directions
            .iter()
            .zip(doc.magnitudes.iter())
            .map(|(dir, m)| dir.iter().map(|t| t * m).collect())
            .collect();
        Self::from_rows(doc.d, rows)
    }
}
