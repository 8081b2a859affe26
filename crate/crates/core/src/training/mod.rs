//! The error functional, its facet decomposition, gradient descent in full
//! and radial-simplified modes, and power-law rate fitting.

mod descent;
mod energy;
mod fit;
mod run;

pub use descent::{
    full_grad_step, radial_exact, radial_step, GradEstimator, StepDiagnostics,
};
pub use energy::{energy_decomposed, energy_decomposed_with, energy_direct, lr_error, EnergyEstimate};
pub use fit::{fit_power_law, PowerLawFit, TraceField};
pub use run::{train, SnapshotSchedule, TraceRow, TrainConfig, TrainMode, TrainTrace};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum TrainError {
    #[error("geometry: {0}")]
    Geometry(#[from] crate::geometry::GeometryError),
    #[error("net: {0}")]
    Net(#[from] crate::net::NetError),
    #[error("slab of unit {j} has width {width} >= delta = {delta}; magnitudes too small for the decomposition")]
    SlabOverlap { j: usize, width: f64, delta: f64 },
    #[error("initial magnitude {mag} of unit {j} violates the largeness condition |w| > 1/delta = {min}")]
    InitialMagnitudeTooSmall { j: usize, mag: f64, min: f64 },
    #[error("step size must be positive, got {0}")]
    BadStepSize(f64),
    #[error("radial constant must be positive, got {0}")]
    BadRadialConstant(f64),
    #[error("power-law window holds {got} points, need at least {min}")]
    WindowTooSmall { got: usize, min: usize },
    #[error("field {0} not present in trace")]
    MissingField(String),
    #[error("L^r error supports r in {{1, 2}}, got {0}")]
    BadLrExponent(u32),
}
