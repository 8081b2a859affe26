//! `verify`: run the equivalence/gradient/region suites.

use crate::config::RunConfig;
use anyhow::Result;
use ball_approx::verify::{run_suites, VerifyConfig};
use std::path::Path;

pub fn run(config: &RunConfig, out: Option<&Path>) -> Result<bool> {
    let section = config.verify.clone().unwrap_or_default();
    let suite_config = VerifyConfig {
        seed: config.seed,
        points: section.points,
        draws: section.draws,
        negative_control: section.negative_control,
        ..VerifyConfig::default()
    };
    let report = run_suites(&suite_config);
    for check in &report.checks {
        println!(
            "{} {:<32} max_dev={:<12.3e} {}",
            if check.pass { "[PASS]" } else { "[FAIL]" },
            check.name,
            check.max_deviation,
            check.detail
        );
    }
    if let Some(out) = out {
        super::write_artifact(out, "verify_report.json", &serde_json::to_string_pretty(&report)?)?;
        config.save(&out.join("run_config.json"))?;
    }
    Ok(report.all_pass())
}
