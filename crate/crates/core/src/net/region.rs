//! Region decomposition of the network: bit codes, tree descent, the
//! explicit output formula, and the piecewise-constant spatial gradient.
//!
//! Unit j (1-based) owns the region D_j on which the output gradient is
//! w_j. Writing j = 1 + sum_k 2^(k-1) delta^k, the bit delta^k records
//! which child wins the comparison at merge level k and the group index
//! J^k = 1 + ((j-1) >> k) names the merge node, with the recursion
//! J^(k-1) = 2 J^k - 1 + delta^k.

use super::forward::forward;
use super::weights::{relu, NetworkWeights};
use super::NetError;
use crate::geometry::{polytope_contains, Domain, HalfSpaceFamily};

/// Bit decomposition of a unit index into branch bits and group indices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegionCode {
    /// Unit index, 1-based.
    pub j: usize,
    /// delta^1 .. delta^n.
    pub bits: Vec<u8>,
    /// J^1 .. J^n.
    pub groups: Vec<usize>,
}

/// Region code of unit j (1-based) in a depth-n network.
pub fn region_code(j: usize, n: u32) -> Result<RegionCode, NetError> {
    let units = 1usize << n;
    if j == 0 || j > units {
        return Err(NetError::UnitIndexOutOfRange { j, n: units });
    }
    let bits: Vec<u8> = (0..n).map(|k| ((j - 1) >> k & 1) as u8).collect();
    let groups: Vec<usize> = (1..=n).map(|k| 1 + ((j - 1) >> k)).collect();
    Ok(RegionCode { j, bits, groups })
}

/// Tree descent: at each merge pick the child with the smaller value,
/// ties toward bit 0. Returns the winning unit (1-based) and the branch
/// bits delta^n .. delta^1 in descent order.
pub fn locate_region_bits(
    weights: &NetworkWeights,
    x: &[f64],
) -> Result<(usize, Vec<u8>), NetError> {
    let (_, trace) = forward(weights, x)?;
    let n = weights.depth() as usize;
    // odd[k-1] is layer 2k+1; the inputs to merge level k are layer 2k-1,
    // i.e. odd[k-2] for k >= 2 and z1 for k = 1.
    let mut group = 1usize; // J^n
    let mut bits_desc = Vec::with_capacity(n);
    for k in (1..=n).rev() {
        let layer: &[f64] = if k >= 2 { &trace.odd[k - 2] } else { &trace.z1 };
        let left = layer[2 * group - 2];
        let right = layer[2 * group - 1];
        let bit = u8::from(left > right);
        bits_desc.push(bit);
        group = 2 * group - 1 + bit as usize;
    }
    Ok((group, bits_desc))
}

/// The unique region owner for `x` (1-based unit index).
pub fn locate_region(weights: &NetworkWeights, x: &[f64]) -> Result<usize, NetError> {
    locate_region_bits(weights, x).map(|(j, _)| j)
}

/// Explicit output formula: f(x) = min(h(w_j* . x + b_j*), 1) with
/// j* = locate_region(x). Agrees with the layered forward pass.
pub fn explicit_value(weights: &NetworkWeights, x: &[f64]) -> Result<f64, NetError> {
    let j = locate_region(weights, x)?;
    Ok(relu(weights.pre_activation(j - 1, x)).min(1.0))
}

/// Spatial gradient of the pre-clip output z^(2n+1): w_j on the interior
/// of D_j, the zero vector on the flat set where the winning unit is
/// inactive.
///
/// Errors with [`NetError::NearBoundary`] when `x` sits within `margin`
/// (measured in activation units) of a region boundary, of the boundary of
/// the active set { z1_j > 0 }, or of the clip level z = 1 (where the
/// clipped output is not differentiable).
pub fn spatial_gradient(
    weights: &NetworkWeights,
    x: &[f64],
    margin: f64,
) -> Result<Vec<f64>, NetError> {
    let (_, trace) = forward(weights, x)?;
    if (trace.output - 1.0).abs() < margin {
        return Err(NetError::NearBoundary {
            margin,
            which: "clip",
        });
    }
    let n = weights.depth() as usize;
    let mut group = 1usize;
    for k in (1..=n).rev() {
        let layer: &[f64] = if k >= 2 { &trace.odd[k - 2] } else { &trace.z1 };
        let left = layer[2 * group - 2];
        let right = layer[2 * group - 1];
        if (left - right).abs() < margin {
            return Err(NetError::NearBoundary {
                margin,
                which: "region",
            });
        }
        group = 2 * group - 1 + usize::from(left > right);
    }
    let j = group;
    let pre = weights.pre_activation(j - 1, x);
    if pre.abs() < margin {
        return Err(NetError::NearBoundary {
            margin,
            which: "active-set",
        });
    }
    if pre < 0.0 {
        // Flat zero region: x is outside every D_j.
        return Ok(vec![0.0; weights.dim()]);
    }
    Ok(weights.weight_row(j - 1))
}

/// Indicator of the limit polytope: 1 on the intersection of all
/// half-spaces, 0 elsewhere.
pub fn limit_indicator(family: &HalfSpaceFamily, x: &[f64]) -> Result<u8, NetError> {
    Domain::new(family.d)?.check_point(x)?;
    Ok(u8::from(polytope_contains(family, x)))
}
