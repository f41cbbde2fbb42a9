//! `coherence-map`: closed-form coherence over a (nbar, |alpha0|^2) grid.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

use coherence_core::{coherence_closed_form, DisplacedThermal64};

use crate::error::{CliError, Result};
use crate::plot::{write_plot_sidecar, PlotDescription, PlotSeries};

pub struct MapOptions {
    pub max_nbar: f64,
    pub max_alpha0_sq: f64,
    /// Points per axis.
    pub resolution: usize,
}

impl Default for MapOptions {
    fn default() -> Self {
        Self { max_nbar: 10.0, max_alpha0_sq: 10.0, resolution: 101 }
    }
}

pub fn cmd_coherence_map(out: &Path, opts: &MapOptions) -> Result<()> {
    if opts.resolution < 2 {
        return Err(CliError::config("resolution", "need at least 2 points per axis"));
    }
    if !(opts.max_nbar >= 0.0) || !(opts.max_alpha0_sq >= 0.0) {
        return Err(CliError::config("range", "axis maxima must be nonnegative"));
    }
    std::fs::create_dir_all(out).map_err(|e| CliError::stage("output", e))?;
    let path = out.join("coherence_map.csv");
    let mut w =
        BufWriter::new(File::create(&path).map_err(|e| CliError::stage("output", e))?);
    writeln!(w, "nbar,alpha0_sq,C").map_err(|e| CliError::stage("output", e))?;
    let n = opts.resolution;
    for i in 0..n {
        let nbar = opts.max_nbar * i as f64 / (n - 1) as f64;
        for j in 0..n {
            let alpha0_sq = opts.max_alpha0_sq * j as f64 / (n - 1) as f64;
            let state = DisplacedThermal64::from_magnitudes(alpha0_sq, nbar)
                .map_err(|e| CliError::stage("analysis", e))?;
            let c = coherence_closed_form(&state).map_err(|e| CliError::stage("analysis", e))?;
            writeln!(w, "{nbar},{alpha0_sq},{c}").map_err(|e| CliError::stage("output", e))?;
        }
    }
    write_plot_sidecar(
        &out.join("coherence_map.plot.json"),
        &PlotDescription {
            title: "Coherence of displaced thermal states".into(),
            x_label: "coherent photon number |alpha0|^2".into(),
            y_label: "thermal photon number nbar".into(),
            series: vec![PlotSeries {
                label: "C (heatmap)".into(),
                file: "coherence_map.csv".into(),
                x_column: "alpha0_sq".into(),
                y_column: "nbar".into(),
                y_error_column: None,
                filter: Some("color=C".into()),
            }],
        },
    )
}
