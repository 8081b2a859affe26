//! Half-space families, the tangent polytope, the ball, and Monte Carlo
//! estimators for the volumes and facet measures the error functional needs.

mod domain;
mod family;
mod measure;

pub use domain::{ball_indicator, Domain, BALL_RADIUS};
pub use family::{make_directions, polytope_contains, DirectionScheme, HalfSpaceFamily};
pub use measure::{
    excess_volume, facet_measure, gamma_estimate, gamma_star_estimate, FacetMeasureEstimate,
    GammaStarEstimate,
};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    #[error("dimension must be >= 1, got {0}")]
    BadDimension(usize),
    #[error("point has dimension {got}, domain has dimension {want}")]
    DimensionMismatch { got: usize, want: usize },
    #[error("point lies outside the cube [-1,1)^d")]
    OutsideCube,
    #[error("scheme {scheme:?} does not support dimension {d}")]
    UnsupportedScheme { scheme: DirectionScheme, d: usize },
    #[error("need at least one direction")]
    EmptyFamily,
    #[error("direction {j} is not a unit vector (|tau| = {norm})")]
    NotUnit { j: usize, norm: f64 },
    #[error("directions {a} and {b} coincide")]
    DuplicateDirection { a: usize, b: usize },
    #[error("facet index {j} out of range (family has {n})")]
    FacetIndexOutOfRange { j: usize, n: usize },
    #[error("slab coordinate r = {r} outside (-1/|w_j|, 0] = ({lo}, 0]")]
    SlabCoordinateOutOfRange { r: f64, lo: f64 },
    #[error("all magnitudes must be positive")]
    NonPositiveMagnitude,
    #[error("need at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },
    #[error("magnitude vector has length {got}, family has {want} directions")]
    MagnitudeLengthMismatch { got: usize, want: usize },
}
