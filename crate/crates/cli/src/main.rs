//! Experiment harness: reproducible runs of the verification suites, the
//! training dynamics, and the Fourier divergence scans, with CSV artifacts
//! and a collating report.

mod commands;
mod config;
mod svg;

use anyhow::Result;
use clap::{Parser, Subcommand};
use std::path::PathBuf;

#[derive(Parser)]
#[command(
    name = "ball-approx",
    about = "Approximation lab for the d-ball indicator: min-network training vs spherical Fourier sums",
    version
)]
struct Cli {
    /// JSON run configuration; explicit flags override its fields.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory for artifacts (CSV, JSON, report).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Master seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads (0 = one per core). Results do not depend on this.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the network/geometry verification suites.
    Verify {
        /// Random points per configuration.
        #[arg(long)]
        points: Option<usize>,
        /// Weight draws per configuration.
        #[arg(long)]
        draws: Option<usize>,
        /// Fault injection: break the bias rule so the suite must fail.
        #[arg(long)]
        negative_control: bool,
    },
    /// Train the network and fit the growth/decay exponents.
    Train {
        /// radial | radial-exact | full
        #[arg(long)]
        mode: Option<String>,
        #[arg(long)]
        d: Option<usize>,
        /// Depth parameter; the network has 2^n units.
        #[arg(long)]
        n: Option<u32>,
        /// equal-angle | fibonacci-sphere | repelled-random
        #[arg(long)]
        scheme: Option<String>,
        /// Initial magnitude of every unit.
        #[arg(long)]
        m0: Option<f64>,
        /// Radial constant c.
        #[arg(long)]
        c: Option<f64>,
        /// Step size for full mode.
        #[arg(long)]
        eta: Option<f64>,
        /// Number of steps T.
        #[arg(long)]
        horizon: Option<u64>,
        /// Monte Carlo samples per snapshot metric.
        #[arg(long)]
        samples: Option<usize>,
        /// Snapshot stride (0 = dyadic).
        #[arg(long)]
        every_k: Option<u64>,
        /// Largeness scale delta; initial magnitudes must exceed 1/delta.
        #[arg(long)]
        delta: Option<f64>,
        /// Grid estimator resolution for full mode (0 = Monte Carlo).
        #[arg(long)]
        grid_points: Option<usize>,
    },
    /// Run Fourier partial-sum scans.
    Fourier {
        /// gibbs | pinsky | third
        #[arg(long)]
        preset: Option<String>,
        #[arg(long)]
        d: Option<usize>,
        /// Evaluation point as comma-separated fractions, e.g. "1/4,0".
        #[arg(long)]
        x: Option<String>,
        /// Comma-separated increasing list of N values.
        #[arg(long)]
        n_list: Option<String>,
    },
    /// Collate artifacts in the output directory into a summary.
    Report {
        /// Also render SVG plots of the CSV artifacts.
        #[arg(long)]
        svg: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_passed) => {
            if !all_passed {
                std::process::exit(1);
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            std::process::exit(1);
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let mut run_config = match &cli.config {
        Some(path) => config::RunConfig::load(path)?,
        None => config::RunConfig::default(),
    };
    if let Some(seed) = cli.seed {
        run_config.seed = seed;
    }
    if let Some(threads) = cli.threads {
        run_config.threads = threads;
    }
    if run_config.threads > 0 {
        // Ignore the error if a global pool already exists.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(run_config.threads)
            .build_global();
    }
    let out = cli.out.clone();

    match cli.command {
        Command::Verify {
            points,
            draws,
            negative_control,
        } => {
            let section = run_config.verify.get_or_insert_with(Default::default);
            if let Some(points) = points {
                section.points = points;
            }
            if let Some(draws) = draws {
                section.draws = draws;
            }
            if negative_control {
                section.negative_control = true;
            }
            commands::verify::run(&run_config, out.as_deref())
        }
        Command::Train {
            mode,
            d,
            n,
            scheme,
            m0,
            c,
            eta,
            horizon,
            samples,
            every_k,
            delta,
            grid_points,
        } => {
            let section = run_config.train.get_or_insert_with(Default::default);
            if let Some(v) = mode {
                section.mode = v;
            }
            if let Some(v) = d {
                section.d = v;
            }
            if let Some(v) = n {
                section.n = v;
            }
            if let Some(v) = scheme {
                section.scheme = v;
            }
            if let Some(v) = m0 {
                section.m0 = v;
            }
            if let Some(v) = c {
                section.c = v;
            }
            if eta.is_some() {
                section.eta = eta;
            }
            if let Some(v) = horizon {
                section.horizon = v;
            }
            if let Some(v) = samples {
                section.samples = v;
            }
            if let Some(v) = every_k {
                section.every_k = v;
            }
            if let Some(v) = delta {
                section.delta = v;
            }
            if let Some(v) = grid_points {
                section.grid_points = v;
            }
            commands::train::run(&run_config, out.as_deref())
        }
        Command::Fourier {
            preset,
            d,
            x,
            n_list,
        } => {
            let section = run_config.fourier.get_or_insert_with(Default::default);
            if let Some(v) = preset {
                section.preset = Some(v);
            }
            if let Some(v) = d {
                section.d = Some(v);
            }
            if let Some(v) = x {
                section.x = Some(v);
            }
            if let Some(v) = n_list {
                section.n_list = Some(v);
            }
            commands::fourier::run(&run_config, out.as_deref())
        }
        Command::Report { svg } => commands::report::run(out.as_deref(), svg),
    }
}
