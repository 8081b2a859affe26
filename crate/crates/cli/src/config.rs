//! The archivable run configuration. Every run echoes the effective
//! configuration next to its artifacts; re-running from the echo
//! reproduces the outputs byte for byte.

use anyhow::{Context, Result};
use serde::{Deserialize, Serialize};
use std::path::Path;

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub seed: u64,
    pub threads: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifySection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub train: Option<TrainSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub fourier: Option<FourierSection>,
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        std::fs::write(path, serde_json::to_string_pretty(self)?)
            .with_context(|| format!("writing config echo {}", path.display()))?;
        Ok(())
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VerifySection {
    pub points: usize,
    pub draws: usize,
    pub negative_control: bool,
}

impl Default for VerifySection {
    fn default() -> Self {
        VerifySection {
            points: 10_000,
            draws: 10,
            negative_control: false,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct TrainSection {
    pub mode: String,
    pub d: usize,
    /// Depth parameter; the network has 2^n units.
    pub n: u32,
    pub scheme: String,
    pub m0: f64,
    pub c: f64,
    pub eta: Option<f64>,
    pub horizon: u64,
    pub samples: usize,
    /// Snapshot stride (0 = dyadic schedule).
    pub every_k: u64,
    pub delta: f64,
    /// Grid estimator resolution for full mode (0 = Monte Carlo).
    pub grid_points: usize,
}

impl Default for TrainSection {
    fn default() -> Self {
        TrainSection {
            mode: "radial".into(),
            d: 2,
            n: 3,
            scheme: "equal-angle".into(),
            m0: 6.0,
            c: 30.0,
            eta: None,
            horizon: 1_000_000,
            samples: 100_000,
            every_k: 25_000,
            delta: 0.2,
            grid_points: 0,
        }
    }
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct FourierSection {
    /// gibbs | pinsky | third; custom scans leave this unset.
    pub preset: Option<String>,
    pub d: Option<usize>,
    /// Comma-separated fractions, e.g. "1/4,0".
    pub x: Option<String>,
    /// Comma-separated increasing N list.
    pub n_list: Option<String>,
}
