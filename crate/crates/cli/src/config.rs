//! Run configuration: a versioned TOML schema validated fail-fast with the
//! offending key path.

use std::path::Path;

use serde::Deserialize;
use twa_engine::{ModelParams, PumpProfile, SimulationGrid, TrajectoryConfig};

use crate::error::{CliError, Result};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub schema_version: u32,
    pub grid: GridConfig,
    #[serde(default)]
    pub model: ModelConfig,
    pub pump: PumpConfig,
    pub trajectory: TrajectoryTomlConfig,
    #[serde(default)]
    pub window: WindowConfig,
    #[serde(default)]
    pub homodyne: HomodyneConfig,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridConfig {
    pub n_side: usize,
    /// Box side length (μm).
    pub length: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ModelConfig {
    pub gamma_c: f64,
    pub gamma_r: f64,
    pub condensation_rate: f64,
    pub g_c: f64,
    pub g_r: f64,
    pub kinetic_coeff: Option<f64>,
    pub renorm_factor: Option<f64>,
}

impl Default for ModelConfig {
    fn default() -> Self {
        let d = ModelParams::default();
        Self {
            gamma_c: d.gamma_c,
            gamma_r: d.gamma_r,
            condensation_rate: d.condensation_rate,
            g_c: d.g_c,
            g_r: d.g_r,
            kinetic_coeff: None,
            renorm_factor: None,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PumpConfig {
    /// Super-Gaussian spot width (μm).
    pub width: f64,
    /// Pump powers as multiples of the homogeneous threshold.
    pub ratios: Vec<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrajectoryTomlConfig {
    pub dt: f64,
    pub total_time: f64,
    pub burn_in_fraction: f64,
    pub snapshot_stride: usize,
    pub realizations: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct WindowConfig {
    /// Side of the k-space window (odd number of modes).
    pub side: usize,
}

impl Default for WindowConfig {
    fn default() -> Self {
        Self { side: 3 }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct HomodyneConfig {
    pub margin: f64,
    pub smoothing_window: usize,
    pub bin_width: f64,
    pub resamples: usize,
}

impl Default for HomodyneConfig {
    fn default() -> Self {
        Self { margin: 0.025, smoothing_window: 1024, bin_width: 0.25, resamples: 200 }
    }
}

impl RunConfig {
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::config(path.display().to_string(), e.to_string()))?;
        let config: RunConfig = toml::from_str(&text)
            .map_err(|e| CliError::config(path.display().to_string(), e.to_string()))?;
        config.validate()?;
        Ok(config)
    }

    /// Builds and validates every referenced module type; the first failure
    /// is reported with its key path.
    pub fn validate(&self) -> Result<()> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(CliError::config(
                "schema_version",
                format!("expected {SCHEMA_VERSION}, got {}", self.schema_version),
            ));
        }
        self.build_grid()?;
        self.build_params()?;
        if self.pump.ratios.is_empty() {
            return Err(CliError::config("pump.ratios", "at least one pump ratio required"));
        }
        for (i, &r) in self.pump.ratios.iter().enumerate() {
            if !(r > 0.0) || !r.is_finite() {
                return Err(CliError::config(
                    format!("pump.ratios[{i}]"),
                    format!("must be positive and finite, got {r}"),
                ));
            }
        }
        PumpProfile::new(1.0, self.pump.width)
            .map_err(|e| CliError::config("pump.width", e.to_string()))?;
        self.build_trajectory(None)?
            .validate()
            .map_err(|e| CliError::config("trajectory", e.to_string()))?;
        observables::KSpaceWindow::new(self.window.side)
            .map_err(|e| CliError::config("window.side", e.to_string()))?;
        if !(self.homodyne.margin >= 0.0) {
            return Err(CliError::config("homodyne.margin", "must be >= 0"));
        }
        if !(self.homodyne.bin_width > 0.0) {
            return Err(CliError::config("homodyne.bin_width", "must be > 0"));
        }
        Ok(())
    }

    pub fn build_grid(&self) -> Result<SimulationGrid> {
        SimulationGrid::new(self.grid.n_side, self.grid.length)
            .map_err(|e| CliError::config("grid", e.to_string()))
    }

    pub fn build_params(&self) -> Result<ModelParams> {
        let mut p = ModelParams {
            gamma_c: self.model.gamma_c,
            gamma_r: self.model.gamma_r,
            condensation_rate: self.model.condensation_rate,
            g_c: self.model.g_c,
            g_r: self.model.g_r,
            ..ModelParams::default()
        };
        if let Some(k) = self.model.kinetic_coeff {
            p.kinetic_coeff = k;
        }
        if let Some(r) = self.model.renorm_factor {
            p.renorm_factor = r;
        }
        p.validate().map_err(|e| CliError::config("model", e.to_string()))?;
        Ok(p)
    }

    /// Trajectory config, optionally overriding the seed from the command
    /// line.
    pub fn build_trajectory(&self, seed: Option<u64>) -> Result<TrajectoryConfig> {
        let t = &self.trajectory;
        let config = TrajectoryConfig {
            dt: t.dt,
            total_time: t.total_time,
            burn_in_fraction: t.burn_in_fraction,
            snapshot_stride: t.snapshot_stride,
            realizations: t.realizations,
            seed: seed.unwrap_or(t.seed),
        };
        config.validate().map_err(|e| CliError::config("trajectory", e.to_string()))?;
        Ok(config)
    }

    /// Pump profile for a given threshold multiple.
    pub fn build_pump(&self, ratio: f64) -> Result<PumpProfile> {
        let params = self.build_params()?;
        let p_thr = params
            .threshold_power()
            .map_err(|e| CliError::config("model", e.to_string()))?;
        PumpProfile::new(ratio * p_thr, self.pump.width)
            .map_err(|e| CliError::config("pump", e.to_string()))
    }
}
