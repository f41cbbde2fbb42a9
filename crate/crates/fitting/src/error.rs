use thiserror::Error;

#[derive(Debug, Error)]
pub enum FittingError {
    #[error("too few occupied bins for a 4-parameter fit: need {needed}, got {got}")]
    InsufficientBins { needed: usize, got: usize },
    #[error("invalid bin data: {0}")]
    InvalidData(String),
    #[error("fit failed to converge after {0} iterations")]
    NoConvergence(usize),
    #[error("{failed} of {total} resample fits failed (> 5%)")]
    TooManyResampleFailures { failed: usize, total: usize },
    #[error(transparent)]
    Core(#[from] coherence_core::CoherenceError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, FittingError>;
