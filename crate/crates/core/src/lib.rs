//! Numerical laboratory around the indicator function of the d-dimensional
//! ball of radius 1/2 inside the cube `[-1,1)^d`.
//!
//! Two approximation schemes are implemented side by side:
//!
//! * a sparse deep ReLU network whose layer pairs cancel into a clipped
//!   minimum over half-space units ([`net`]), together with the
//!   gradient-descent dynamics that drive it to the tangent-polytope
//!   indicator ([`training`]);
//! * spherical partial sums of the multiple Fourier series of the same
//!   indicator ([`fourier`]), including the divergence diagnostics that
//!   distinguish the two schemes.
//!
//! [`geometry`] supplies the shared half-space families and the Monte Carlo
//! measure estimators both sides rely on. All estimators take explicit seeds
//! and sample counts; given the same seed and partition size they are
//! bitwise reproducible regardless of thread count.

// Argument guards are written `!(x > 0.0)` on purpose: NaN must fail them.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod fourier;
pub mod geometry;
pub mod net;
pub mod quad;
pub mod rng;
pub mod special;
pub mod training;
pub mod verify;

pub use geometry::{
    ball_indicator, excess_volume, facet_measure, gamma_estimate, gamma_star_estimate,
    make_directions, polytope_contains, DirectionScheme, Domain, FacetMeasureEstimate,
    GammaStarEstimate, GeometryError, HalfSpaceFamily,
};
pub use net::{
    bias_of, explicit_value, forward, forward_value, limit_indicator, locate_region,
    locate_region_bits, region_code, relu, relu_subgrad, spatial_gradient, tournament_min,
    LayerTrace, NetError, NetworkWeights, RegionCode,
};
pub use training::{
    energy_direct, energy_decomposed, fit_power_law, full_grad_step, lr_error, radial_exact,
    radial_step, train, EnergyEstimate, GradEstimator, PowerLawFit, SnapshotSchedule,
    StepDiagnostics, TraceField, TrainConfig, TrainError, TrainMode, TrainTrace,
};
pub use fourier::{
    ball_coefficient, ball_coefficient_quadrature, center_scan_streaming, divergence_scan,
    fourier_gd, fourier_gd_from, gibbs_overshoot, partial_sum_at, partial_sum_center,
    projection_coefficient, projection_coefficient_radial, shell_counts, FourierError,
    FourierGdResult, Normalization, PartialSumScan, Rational, ScanEntry, ShellTable,
};
pub use verify::{run_suites, CheckResult, VerifyConfig, VerifyReport};
