//! Batch orchestration for the condensate-coherence toolchain: TOML-driven
//! ensemble simulations, closed-form coherence maps, the homodyne fitting
//! pipeline, and the synthetic stream generator.
//!
//! Exit codes: 0 success, 1 config error, 2 runtime/numeric error,
//! 3 insufficient data.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

pub mod commands;
pub mod config;
pub mod error;
pub mod plot;

pub use commands::*;
pub use config::RunConfig;
pub use error::{CliError, Result};

#[derive(Debug, Parser)]
#[command(name = "condensate", version, about = "Polariton condensate coherence workbench")]
pub struct Cli {
    /// Worker threads for ensemble runs (default: hardware parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run ensembles for the configured pump powers; write archives and report.csv.
    Simulate(SimulateArgs),
    /// Pump-power sweep with coherence reports and spatial g1 curves.
    Sweep(SweepArgs),
    /// Closed-form coherence over a (nbar, |alpha0|^2) grid.
    CoherenceMap(MapArgs),
    /// Fit a quadrature stream: preprocess, postselect, histogram, fit, errors.
    HusimiFit(HusimiFitArgs),
    /// Generate a synthetic eight-port quadrature stream.
    Gen(GenArgs),
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub config: PathBuf,
    /// Pump ratios (multiples of P_thr) overriding the config list.
    #[arg(long)]
    pub pump: Vec<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub config: PathBuf,
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct MapArgs {
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    #[arg(long, default_value_t = 101)]
    pub resolution: usize,
    #[arg(long, default_value_t = 10.0)]
    pub max_nbar: f64,
    #[arg(long, default_value_t = 10.0)]
    pub max_alpha0_sq: f64,
}

#[derive(Debug, Args)]
pub struct HusimiFitArgs {
    /// Quadrature stream: `t,x1,x2` CSV or the binary container.
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long, default_value = "out")]
    pub out: PathBuf,
    /// Segment the stream into high/low populations and fit each.
    #[arg(long)]
    pub bistable: bool,
    #[arg(long, default_value_t = 0.25)]
    pub bin_width: f64,
    #[arg(long, default_value_t = 200)]
    pub resamples: usize,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 1.0)]
    pub lo_scale: f64,
    /// Postselection margin (fraction of the product peak-to-peak).
    #[arg(long, default_value_t = 0.025)]
    pub margin: f64,
    /// Product smoothing window (records) for postselection.
    #[arg(long, default_value_t = 1024)]
    pub smoothing_window: usize,
    /// Postselected points per segmentation window.
    #[arg(long, default_value_t = 1000)]
    pub stats_window: usize,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 1.7)]
    pub nbar: f64,
    #[arg(long, default_value_t = 53.0)]
    pub alpha0_sq: f64,
    #[arg(long)]
    pub low_nbar: Option<f64>,
    #[arg(long)]
    pub low_alpha0_sq: Option<f64>,
    /// Dwell time per state (ps) for a switching source.
    #[arg(long, default_value_t = 2.5e8)]
    pub switching_period: f64,
    #[arg(long, default_value_t = 100.0)]
    pub tau_c: f64,
    /// Relative-phase sweep period (ps).
    #[arg(long, default_value_t = 1.6384e7)]
    pub sweep_period: f64,
    #[arg(long, default_value_t = 1_000_000)]
    pub samples: usize,
    /// Record spacing (ps).
    #[arg(long, default_value_t = 1000.0)]
    pub sample_dt: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    /// Emit the binary container instead of CSV.
    #[arg(long)]
    pub binary: bool,
}

/// Dispatches a parsed command; the caller maps errors to exit codes.
pub fn run(cli: Cli) -> Result<()> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::config("threads", e.to_string()))?;
    }
    match cli.command {
        Command::Simulate(args) => {
            let config = RunConfig::load(&args.config)?;
            cmd_simulate(
                &config,
                &args.out,
                &SimulateOptions { pumps: args.pump, seed: args.seed, archives: true, g1: false },
            )
        }
        Command::Sweep(args) => {
            let config = RunConfig::load(&args.config)?;
            cmd_simulate(
                &config,
                &args.out,
                &SimulateOptions { pumps: Vec::new(), seed: args.seed, archives: false, g1: true },
            )
        }
        Command::CoherenceMap(args) => cmd_coherence_map(
            &args.out,
            &MapOptions {
                max_nbar: args.max_nbar,
                max_alpha0_sq: args.max_alpha0_sq,
                resolution: args.resolution,
            },
        ),
        Command::HusimiFit(args) => cmd_husimi_fit(
            &args.input,
            &args.out,
            &HusimiFitOptions {
                lo_scale: args.lo_scale,
                margin: args.margin,
                smoothing_window: args.smoothing_window,
                bin_width: args.bin_width,
                resamples: args.resamples,
                seed: args.seed,
                bistable: args.bistable,
                stats_window: args.stats_window,
            },
        ),
        Command::Gen(args) => {
            let low = match (args.low_nbar, args.low_alpha0_sq) {
                (None, None) => None,
                (nb, a2) => Some((a2.unwrap_or(0.0), nb.unwrap_or(0.0))),
            };
            cmd_gen(
                &args.out,
                &GenOptions {
                    nbar: args.nbar,
                    alpha0_sq: args.alpha0_sq,
                    low,
                    switching_period: args.switching_period,
                    phase_coherence_time: args.tau_c,
                    sweep_period: args.sweep_period,
                    samples: args.samples,
                    sample_dt: args.sample_dt,
                    seed: args.seed,
                    binary: args.binary,
                },
            )
        }
    }
}
