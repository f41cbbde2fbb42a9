use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{EngineError, Result};
use crate::grid::SimulationGrid;
use crate::params::ModelParams;
use crate::pump::PumpProfile;
use crate::state::FieldState;
use crate::stepper::{check_time_step, Stepper};

/// Time-discretization and ensemble settings for one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryConfig {
    /// Time step (ps).
    pub dt: f64,
    /// Total evolution time (ps).
    pub total_time: f64,
    /// Fraction of each trajectory discarded as burn-in, in [0, 1).
    pub burn_in_fraction: f64,
    /// Steps between retained snapshots after burn-in.
    pub snapshot_stride: usize,
    /// Base RNG seed; trajectory `i` uses stream `i`.
    pub seed: u64,
    /// Number of stochastic realizations.
    pub realizations: usize,
}

impl TrajectoryConfig {
    pub fn n_steps(&self) -> usize {
        (self.total_time / self.dt).round() as usize
    }

    pub fn burn_in_steps(&self) -> usize {
        (self.n_steps() as f64 * self.burn_in_fraction).floor() as usize
    }

    pub fn n_snapshots(&self) -> usize {
        (self.n_steps() - self.burn_in_steps()) / self.snapshot_stride
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.dt > 0.0) || !self.dt.is_finite() {
            return Err(EngineError::InvalidConfig(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.total_time > 0.0) || !self.total_time.is_finite() {
            return Err(EngineError::InvalidConfig(format!(
                "total_time must be positive, got {}",
                self.total_time
            )));
        }
        if !(0.0..1.0).contains(&self.burn_in_fraction) {
            return Err(EngineError::InvalidConfig(format!(
                "burn_in_fraction must lie in [0, 1), got {}",
                self.burn_in_fraction
            )));
        }
        if self.snapshot_stride == 0 {
            return Err(EngineError::InvalidConfig("snapshot_stride must be >= 1".into()));
        }
        if self.n_snapshots() < 8 {
            return Err(EngineError::InvalidConfig(format!(
                "need >= 8 post-burn-in snapshots, config yields {}",
                self.n_snapshots()
            )));
        }
        Ok(())
    }
}

/// All retained snapshots of every successful trajectory.
#[derive(Debug, Clone)]
pub struct TrajectoryEnsemble {
    pub grid: SimulationGrid,
    pub params: ModelParams,
    pub pump: PumpProfile,
    pub config: TrajectoryConfig,
    /// `trajectories[t][s]` = snapshot `s` of trajectory `t`, in index order.
    pub trajectories: Vec<Vec<FieldState>>,
    /// Indices of trajectories that blew up (tolerated up to 10%).
    pub failed: Vec<usize>,
}

impl TrajectoryEnsemble {
    /// Total clipped-reservoir-cell count across all final snapshots.
    pub fn clipped_cells(&self) -> u64 {
        self.trajectories.iter().filter_map(|t| t.last()).map(|s| s.clipped).sum()
    }
}

/// RNG for trajectory `index`: one ChaCha stream per trajectory so every
/// trajectory is independent and reproducible in isolation.
pub fn trajectory_rng(seed: u64, index: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index as u64);
    rng
}

/// Integrates one trajectory and returns its post-burn-in snapshots.
pub fn run_trajectory(
    config: &TrajectoryConfig,
    params: &ModelParams,
    pump: &PumpProfile,
    grid: &SimulationGrid,
    index: usize,
) -> Result<Vec<FieldState>> {
    config.validate()?;
    check_time_step(config.dt, grid, params)?;
    let mut stepper = Stepper::new(*grid, *params, pump)?;
    let mut rng = trajectory_rng(config.seed, index);
    let mut state = FieldState::vacuum(grid, &mut rng);

    let n_steps = config.n_steps();
    let burn = config.burn_in_steps();
    let mut snapshots = Vec::with_capacity(config.n_snapshots());
    for step in 1..=n_steps {
        stepper.step(&mut state, config.dt, &mut rng).map_err(|e| match e {
            EngineError::Blowup { step: s, .. } => EngineError::Blowup { trajectory: index, step: s },
            other => other,
        })?;
        if !state.is_finite() {
            return Err(EngineError::Blowup { trajectory: index, step });
        }
        if step > burn && (step - burn) % config.snapshot_stride == 0 {
            snapshots.push(state.clone());
        }
    }
    Ok(snapshots)
}

/// Runs all realizations in parallel (deterministic: per-trajectory RNG
/// streams, index-ordered collection). Tolerates up to 10% blown-up
/// trajectories; their indices are reported in `failed`.
pub fn run_ensemble(
    config: &TrajectoryConfig,
    params: &ModelParams,
    pump: &PumpProfile,
    grid: &SimulationGrid,
) -> Result<TrajectoryEnsemble> {
    if config.realizations < 2 {
        return Err(EngineError::InvalidConfig(format!(
            "need >= 2 realizations, got {}",
            config.realizations
        )));
    }
    config.validate()?;
    check_time_step(config.dt, grid, params)?;
    Stepper::new(*grid, *params, pump)?; // fail fast on grid/params problems

    let results: Vec<Result<Vec<FieldState>>> = (0..config.realizations)
        .into_par_iter()
        .map(|i| run_trajectory(config, params, pump, grid, i))
        .collect();

    let mut trajectories = Vec::with_capacity(config.realizations);
    let mut failed = Vec::new();
    let mut first_error = None;
    for (i, r) in results.into_iter().enumerate() {
        match r {
            Ok(snaps) => trajectories.push(snaps),
            Err(e) => {
                failed.push(i);
                if first_error.is_none() {
                    first_error = Some(e);
                }
            }
        }
    }
    if failed.len() * 10 > config.realizations {
        return Err(EngineError::TooManyFailures {
            failed: failed.len(),
            total: config.realizations,
        });
    }
    if let Some(e) = first_error {
        log::warn!("{} trajectories failed; first error: {e}", failed.len());
    }
    Ok(TrajectoryEnsemble {
        grid: *grid,
        params: *params,
        pump: *pump,
        config: *config,
        trajectories,
        failed,
    })
}
