pub mod fourier;
pub mod report;
pub mod train;
pub mod verify;

use anyhow::{Context, Result};
use std::path::Path;

/// Creates the output directory and writes one artifact into it.
pub fn write_artifact(out: &Path, name: &str, body: &str) -> Result<()> {
    std::fs::create_dir_all(out)
        .with_context(|| format!("creating output directory {}", out.display()))?;
    let path = out.join(name);
    std::fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
    println!("wrote {}", path.display());
    Ok(())
}
