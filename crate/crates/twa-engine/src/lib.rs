//! Stochastic truncated-Wigner integration of a nonresonantly pumped,
//! reservoir-coupled condensate on a periodic 2D grid.
//!
//! The field drifts under a generalized Gross-Pitaevskii equation (spectral
//! Laplacian, classical RK4) and receives one additive complex Wiener
//! increment per step whose diffusion tracks the local gain and loss.
//! Trajectories carry independent, reproducible RNG streams.

pub mod archive;
pub mod ensemble;
pub mod error;
pub mod fft;
pub mod grid;
pub mod params;
pub mod pump;
pub mod state;
pub mod stepper;

pub use archive::{export_snapshot_csv, read_ensemble, write_ensemble};
pub use ensemble::{
    run_ensemble, run_trajectory, trajectory_rng, TrajectoryConfig, TrajectoryEnsemble,
};
pub use error::{EngineError, Result};
pub use fft::Fft2d;
pub use grid::SimulationGrid;
pub use params::{ModelParams, HBAR, KINETIC_COEFF_DEFAULT};
pub use pump::PumpProfile;
pub use state::{C64, FieldState};
pub use stepper::{check_time_step, Stepper};
