//! Multiple Fourier series of the ball indicator: coefficients, spherical
//! partial sums, coefficient-space gradient descent, and the divergence
//! scans for the Gibbs, Pinsky, and third (rational-point) phenomena.

mod coeff;
mod gd;
mod quadrature;
mod series;
mod shell;

pub use coeff::{
    ball_coefficient, projection_coefficient, projection_coefficient_radial, CoefficientTable,
    Normalization,
};
pub use gd::{fourier_gd, fourier_gd_from, FourierGdResult};
pub use quadrature::ball_coefficient_quadrature;
pub use series::{
    center_scan_streaming, divergence_scan, gibbs_overshoot, partial_sum_at, partial_sum_center,
    PartialSumScan, Rational, ScanEntry,
};
pub use shell::{four_square_counts, shell_counts, ShellTable};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum FourierError {
    #[error("special function: {0}")]
    Special(#[from] crate::special::SpecialFnError),
    #[error("dimension must be >= 1, got {0}")]
    BadDimension(usize),
    #[error("lattice enumeration budget exceeded: ~{estimated:.3e} points > {budget:.1e}")]
    BudgetExceeded { estimated: f64, budget: f64 },
    #[error("shell table covers m <= {have}, need m <= {need}")]
    TableTooSmall { need: u64, have: u64 },
    #[error("shell table of {need_bytes} bytes exceeds the memory budget {budget}")]
    MemoryBudget { need_bytes: u64, budget: u64 },
    #[error("step size {eta} violates the stability bound 2/2^d = {bound}")]
    EtaUnstable { eta: f64, bound: f64 },
    #[error("invalid rational {num}/{den}: {reason}")]
    BadRational {
        num: i64,
        den: i64,
        reason: &'static str,
    },
    #[error("N list must be strictly increasing and nonempty")]
    BadScanList,
    #[error("streaming center scan supports d in {{4, 5}}, got {0}")]
    UnsupportedStreamingDimension(usize),
    #[error("point has dimension {got}, expected {want}")]
    DimensionMismatch { got: usize, want: usize },
}
