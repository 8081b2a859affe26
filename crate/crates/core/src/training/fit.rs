//! Least-squares power-law fits on trace columns.

use super::run::TrainTrace;
use super::TrainError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TraceField {
    /// Magnitude of unit j (0-based).
    Magnitude(usize),
    L1,
    L2,
    Energy,
}

impl std::fmt::Display for TraceField {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TraceField::Magnitude(j) => write!(f, "mag_{}", j + 1),
            TraceField::L1 => write!(f, "l1"),
            TraceField::L2 => write!(f, "l2"),
            TraceField::Energy => write!(f, "energy"),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct PowerLawFit {
    /// Slope of log(field) against log(t).
    pub slope: f64,
    /// Intercept in log space.
    pub intercept: f64,
    /// Root-mean-square residual of the fit.
    pub residual_rms: f64,
    pub points: usize,
}

/// Fits log(field) = slope * log(t) + intercept over rows with t inside
/// `window` (inclusive). Rows with t = 0 or non-positive field values are
/// skipped; fewer than 10 usable points is an error.
pub fn fit_power_law(
    trace: &TrainTrace,
    field: TraceField,
    window: (u64, u64),
) -> Result<PowerLawFit, TrainError> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for row in &trace.rows {
        if row.t < window.0.max(1) || row.t > window.1 {
            continue;
        }
        let value = match field {
            TraceField::Magnitude(j) => *row
                .magnitudes
                .get(j)
                .ok_or_else(|| TrainError::MissingField(field.to_string()))?,
            TraceField::L1 => row.l1,
            TraceField::L2 => row.l2,
            TraceField::Energy => row.energy,
        };
        if value > 0.0 {
            xs.push((row.t as f64).ln());
            ys.push(value.ln());
        }
    }
    if xs.len() < 10 {
        return Err(TrainError::WindowTooSmall {
            got: xs.len(),
            min: 10,
        });
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    let sxy: f64 = xs
        .iter()
        .zip(ys.iter())
        .map(|(x, y)| (x - mx) * (y - my))
        .sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let residual_rms = (xs
        .iter()
        .zip(ys.iter())
        .map(|(x, y)| {
            let r = y - (slope * x + intercept);
            r * r
        })
        .sum::<f64>()
        / n)
        .sqrt();
    Ok(PowerLawFit {
        slope,
        intercept,
        residual_rms,
        points: xs.len(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::training::run::{TraceRow, TrainConfig};

    fn synthetic_trace(f: impl Fn(u64) -> f64) -> TrainTrace {
        let rows: Vec<TraceRow> = (0..=40)
            .map(|i| {
                let t = 1u64 << i;
                TraceRow {
                    t,
                    magnitudes: vec![f(t)],
                    energy: 1.0,
                    energy_se: 0.0,
                    l1: 1.0 / f(t),
                    l2: 1.0,
                }
            })
            .collect();
        TrainTrace {
            config: TrainConfig::radial(1.0, 1 << 40, 100, 0),
            rows,
        }
    }

    #[test]
    fn recovers_cube_root_growth() {
        // Exact radial envelope from a negligible start.
        let trace = synthetic_trace(|t| (1.0 + 3.0 * t as f64).cbrt());
        let fit = fit_power_law(&trace, TraceField::Magnitude(0), (10_000, 1 << 40)).unwrap();
        assert!((fit.slope - 1.0 / 3.0).abs() < 0.01, "slope {}", fit.slope);
        let fit = fit_power_law(&trace, TraceField::L1, (10_000, 1 << 40)).unwrap();
        assert!((fit.slope + 1.0 / 3.0).abs() < 0.01);
    }

    #[test]
    fn constant_field_zero_slope() {
        let trace = synthetic_trace(|_| 7.5);
        let fit = fit_power_law(&trace, TraceField::Magnitude(0), (1, 1 << 40)).unwrap();
        assert!(fit.slope.abs() < 1e-12);
        assert!(fit.residual_rms < 1e-12);
    }

    #[test]
    fn small_window_rejected() {
        let trace = synthetic_trace(|t| t as f64);
        assert!(matches!(
            fit_power_law(&trace, TraceField::Magnitude(0), (1, 4)),
            Err(TrainError::WindowTooSmall { .. })
        ));
    }
}
