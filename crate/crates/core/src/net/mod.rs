//! The sparse min-network: construction, layered forward pass, region
//! decomposition, explicit-formula evaluation, and spatial gradients.
//!
//! The network has N = 2^n first-layer units z1_j = h(w_j . x + b_j) with
//! tied biases b_j = |w_j|/2 + 1. Each subsequent pair of layers combines
//! two nonnegative values a, b through
//!
//! ```text
//! h(a/2 + b/2) - h(a/2 - b/2) - h(-a/2 + b/2) = min(a, b)
//! ```
//!
//! so the scalar output is min over all units, and the final clip gives
//! f = min(z, 1).

mod forward;
mod region;
mod weights;

pub use forward::{forward, forward_value, tournament_min, LayerTrace};
pub(crate) use forward::forward_value_unchecked;
pub use region::{
    explicit_value, limit_indicator, locate_region, locate_region_bits, region_code,
    spatial_gradient, RegionCode,
};
pub use weights::{bias_of, relu, relu_subgrad, NetworkWeights};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum NetError {
    #[error("geometry: {0}")]
    Geometry(#[from] crate::geometry::GeometryError),
    #[error("unit count {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("weight row {j} has zero magnitude")]
    ZeroMagnitude { j: usize },
    #[error("unit index {j} out of range 1..={n}")]
    UnitIndexOutOfRange { j: usize, n: usize },
    #[error("point is within {margin} of a region or clip boundary ({which})")]
    NearBoundary { margin: f64, which: &'static str },
    #[error("weights have {got} rows, family has {want} directions")]
    FamilyMismatch { got: usize, want: usize },
}
