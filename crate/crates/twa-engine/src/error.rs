use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid model parameters: {0}")]
    InvalidParams(String),
    #[error("invalid trajectory config: {0}")]
    InvalidConfig(String),
    #[error("condensation rate must be positive to define a threshold")]
    ZeroCondensationRate,
    #[error(
        "TWA validity violated: hbar*gamma_c = {lhs:.3e} must be at least 10x g_c/cell_volume = {rhs:.3e}"
    )]
    ValidityViolation { lhs: f64, rhs: f64 },
    #[error("time step {dt} exceeds stability bound {bound:.4} ({which})")]
    UnstableTimeStep { dt: f64, bound: f64, which: &'static str },
    #[error("trajectory {trajectory} produced a non-finite field at step {step}")]
    Blowup { trajectory: usize, step: usize },
    #[error("{failed} of {total} trajectories failed (more than 10%)")]
    TooManyFailures { failed: usize, total: usize },
    #[error("archive format error: {0}")]
    Archive(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, EngineError>;
