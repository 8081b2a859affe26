//! Equivalence, gradient, and region suites behind the `verify` command.

use crate::geometry::{make_directions, DirectionScheme};
use crate::net::{
    forward, forward_value, locate_region_bits, region_code, relu, spatial_gradient,
    NetworkWeights,
};
use crate::rng::{rng_for, sample_cube};
use serde::Serialize;

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub max_deviation: f64,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub checks: Vec<CheckResult>,
}

impl VerifyReport {
    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Clone)]
pub struct VerifyConfig {
    pub seed: u64,
    /// Random points per (d, n) configuration.
    pub points: usize,
    /// Weight draws per configuration.
    pub draws: usize,
    /// (d, n) grid to sweep.
    pub configs: Vec<(usize, u32)>,
    /// Fault injection: evaluate the reference min with the broken bias
    /// rule b = |w| so the equivalence suite must fail.
    pub negative_control: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            seed: 0,
            points: 10_000,
            draws: 10,
            configs: vec![
                (1, 1),
                (1, 3),
                (2, 0),
                (2, 2),
                (2, 4),
                (3, 2),
                (3, 3),
                (5, 1),
                (5, 4),
            ],
            negative_control: false,
        }
    }
}

/// Reference clipped min over units, optionally with the broken bias rule.
fn reference_min(weights: &NetworkWeights, x: &[f64], broken_bias: bool) -> f64 {
    let mut min = f64::INFINITY;
    for j in 0..weights.units() {
        let pre = if broken_bias {
            // Fault injection: b = |w| instead of |w|/2 + 1.
            let row = weights.weight_row(j);
            let dot: f64 = row.iter().zip(x.iter()).map(|(w, xi)| w * xi).sum();
            dot + weights.magnitudes()[j]
        } else {
            weights.pre_activation(j, x)
        };
        min = min.min(relu(pre));
    }
    min.min(1.0)
}

pub fn run_suites(cfg: &VerifyConfig) -> VerifyReport {
    VerifyReport {
        checks: vec![
            tournament_equivalence(cfg),
            explicit_equivalence(cfg),
            odd_layer_nonnegativity(cfg),
            region_bit_consistency(),
            gradient_identity(cfg),
            containment(),
        ],
    }
}

fn sweep_points(
    cfg: &VerifyConfig,
    mut body: impl FnMut(&NetworkWeights, &[f64]) -> f64,
) -> f64 {
    let mut max_dev = 0.0f64;
    for &(d, n) in &cfg.configs {
        for draw in 0..cfg.draws {
            let w = NetworkWeights::random(
                d,
                n,
                (0.5, 50.0),
                cfg.seed ^ ((d as u64) << 32) ^ ((n as u64) << 16) ^ draw as u64,
            );
            let mut rng = rng_for(cfg.seed, 0x7665_7269, (d * 100 + n as usize) as u64 + draw as u64);
            let mut x = vec![0.0; d];
            for _ in 0..cfg.points {
                sample_cube(&mut rng, &mut x);
                max_dev = max_dev.max(body(&w, &x));
            }
        }
    }
    max_dev
}

fn tournament_equivalence(cfg: &VerifyConfig) -> CheckResult {
    let negative = cfg.negative_control;
    let max_dev = sweep_points(cfg, |w, x| {
        let layered = forward_value(w, x).unwrap();
        let reference = reference_min(w, x, negative);
        (layered - reference).abs()
    });
    CheckResult {
        name: "tournament-min-equivalence".into(),
        pass: max_dev <= 1e-9,
        max_deviation: max_dev,
        detail: format!("max |forward - clipped min| = {max_dev:.3e}"),
    }
}

fn explicit_equivalence(cfg: &VerifyConfig) -> CheckResult {
    let max_dev = sweep_points(cfg, |w, x| {
        let layered = forward_value(w, x).unwrap();
        let explicit = crate::net::explicit_value(w, x).unwrap();
        (layered - explicit).abs()
    });
    CheckResult {
        name: "explicit-formula-equivalence".into(),
        pass: max_dev <= 1e-9,
        max_deviation: max_dev,
        detail: format!("max |forward - explicit| = {max_dev:.3e}"),
    }
}

fn odd_layer_nonnegativity(cfg: &VerifyConfig) -> CheckResult {
    let mut min_value = f64::INFINITY;
    sweep_points(cfg, |w, x| {
        let (_, trace) = forward(w, x).unwrap();
        for layer in &trace.odd {
            for &v in layer {
                min_value = min_value.min(v);
            }
        }
        0.0
    });
    CheckResult {
        name: "odd-layer-nonnegativity".into(),
        pass: min_value >= 0.0,
        max_deviation: (-min_value).max(0.0),
        detail: format!("min odd-layer value = {min_value:.3e}"),
    }
}

/// Constructs a point in the slab of each unit of a d=2, n=3 family and
/// checks the descent bits against the region code, exhaustively over j.
fn region_bit_consistency() -> CheckResult {
    let n = 3u32;
    let family = make_directions(2, 8, DirectionScheme::EqualAngle, 0).unwrap();
    let mag = 64.0;
    let weights = NetworkWeights::from_family(&family, mag).unwrap();
    let mut failures = Vec::new();
    for j in 1..=8usize {
        let tau = &family.directions[j - 1];
        // Mid-slab point straight out of facet j.
        let t = -0.5 - 0.5 / mag;
        let x = [t * tau[0], t * tau[1]];
        let (found, bits_desc) = locate_region_bits(&weights, &x).unwrap();
        let code = region_code(j, n).unwrap();
        let mut expected = code.bits.clone();
        expected.reverse(); // descent order is delta^n .. delta^1
        if found != j || bits_desc != expected {
            failures.push(format!("j={j}: located {found}, bits {bits_desc:?}"));
        }
    }
    CheckResult {
        name: "region-bit-consistency".into(),
        pass: failures.is_empty(),
        max_deviation: failures.len() as f64,
        detail: if failures.is_empty() {
            "all 8 regions consistent".into()
        } else {
            failures.join("; ")
        },
    }
}

fn gradient_identity(cfg: &VerifyConfig) -> CheckResult {
    let step = 1e-6;
    let margin = 1e-3;
    let mut max_rel = 0.0f64;
    let mut checked = 0usize;
    for &(d, n) in &cfg.configs {
        let w = NetworkWeights::random(d, n, (5.0, 40.0), cfg.seed ^ 0xfeed ^ ((d as u64) << 8| n as u64));
        let mut rng = rng_for(cfg.seed, 0x6772_6164, (d * 10 + n as usize) as u64);
        let mut x = vec![0.0; d];
        let mut found = 0;
        while found < 1000.min(cfg.points) {
            sample_cube(&mut rng, &mut x);
            checked += 1;
            if checked > 200_000 {
                break;
            }
            if x.iter().any(|v| v.abs() > 1.0 - 2.0 * step) {
                continue;
            }
            let Ok(grad) = spatial_gradient(&w, &x, margin) else {
                continue;
            };
            found += 1;
            for i in 0..d {
                let mut xp = x.clone();
                xp[i] += step;
                let mut xm = x.clone();
                xm[i] -= step;
                // Central difference of the pre-clip output.
                let (_, tp) = forward(&w, &xp).unwrap();
                let (_, tm) = forward(&w, &xm).unwrap();
                let fd = (tp.output - tm.output) / (2.0 * step);
                let scale = grad.iter().map(|g| g.abs()).fold(1.0, f64::max);
                max_rel = max_rel.max((fd - grad[i]).abs() / scale);
            }
        }
    }
    CheckResult {
        name: "spatial-gradient-identity".into(),
        pass: max_rel <= 1e-4,
        max_deviation: max_rel,
        detail: format!("max relative FD deviation = {max_rel:.3e}"),
    }
}

fn containment() -> CheckResult {
    let mut worst = true;
    let fams = [
        make_directions(2, 32, DirectionScheme::EqualAngle, 0).unwrap(),
        make_directions(3, 20, DirectionScheme::FibonacciSphere, 0).unwrap(),
        make_directions(5, 16, DirectionScheme::RepelledRandom, 3).unwrap(),
    ];
    for fam in &fams {
        let mut rng = rng_for(11, 0x636f_6e74, fam.d as u64);
        let mut x = vec![0.0; fam.d];
        for _ in 0..10_000 {
            sample_cube(&mut rng, &mut x);
            let norm: f64 = x.iter().map(|v| v * v).sum::<f64>().sqrt();
            if norm < 0.5 - 1e-9 && !fam.contains(&x) {
                worst = false;
            }
        }
    }
    CheckResult {
        name: "ball-containment".into(),
        pass: worst,
        max_deviation: if worst { 0.0 } else { 1.0 },
        detail: "ball points inside every generated polytope".into(),
    }
}
