//! `gen`: synthetic eight-port quadrature streams with known ground truth.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use coherence_core::DisplacedThermal64;
use homodyne::{synth_homodyne_stream, write_stream_binary, write_stream_csv, GeneratorConfig};

use crate::error::{CliError, Result};

pub struct GenOptions {
    pub nbar: f64,
    pub alpha0_sq: f64,
    /// Optional low state for a switching source.
    pub low: Option<(f64, f64)>,
    /// Dwell time per state (ps).
    pub switching_period: f64,
    pub phase_coherence_time: f64,
    pub sweep_period: f64,
    pub samples: usize,
    pub sample_dt: f64,
    pub seed: u64,
    /// Emit the binary container instead of CSV.
    pub binary: bool,
}

pub fn cmd_gen(out: &Path, opts: &GenOptions) -> Result<()> {
    let high = DisplacedThermal64::from_magnitudes(opts.alpha0_sq, opts.nbar)
        .map_err(|e| CliError::config("nbar/alpha0-sq", e.to_string()))?;
    let low = opts
        .low
        .map(|(a2, nb)| DisplacedThermal64::from_magnitudes(a2, nb))
        .transpose()
        .map_err(|e| CliError::config("low-nbar/low-alpha0-sq", e.to_string()))?;
    let cfg = GeneratorConfig {
        high,
        low,
        switching_period: opts.switching_period,
        phase_coherence_time: opts.phase_coherence_time,
        sweep_period: opts.sweep_period,
        n_samples: opts.samples,
        sample_dt: opts.sample_dt,
        seed: opts.seed,
    };
    let stream = synth_homodyne_stream(&cfg).map_err(|e| CliError::stage("generator", e))?;
    if let Some(dir) = out.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir).map_err(|e| CliError::stage("output", e))?;
        }
    }
    let mut w = BufWriter::new(File::create(out).map_err(|e| CliError::stage("output", e))?);
    if opts.binary {
        write_stream_binary(&mut w, &stream).map_err(|e| CliError::stage("output", e))?;
    } else {
        write_stream_csv(&mut w, &stream).map_err(|e| CliError::stage("output", e))?;
    }
    println!("wrote {} records to {}", stream.len(), out.display());
    Ok(())
}
