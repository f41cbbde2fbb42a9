//! Plot-description sidecars: JSON files describing axes and series of an
//! emitted CSV so any plotting toolkit can render the figures.

use std::path::Path;

use serde::Serialize;

use crate::error::{CliError, Result};

#[derive(Debug, Clone, Serialize)]
pub struct PlotSeries {
    pub label: String,
    pub file: String,
    pub x_column: String,
    pub y_column: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y_error_column: Option<String>,
    /// Optional `column=value` filter selecting the series' rows.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub filter: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct PlotDescription {
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub series: Vec<PlotSeries>,
}

pub fn write_plot_sidecar(path: &Path, plot: &PlotDescription) -> Result<()> {
    let json = serde_json::to_string_pretty(plot)
        .map_err(|e| CliError::stage("plot", e))?;
    std::fs::write(path, json + "\n").map_err(|e| CliError::stage("plot", e))
}
