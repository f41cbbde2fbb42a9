use thiserror::Error;

#[derive(Debug, Error)]
pub enum ObservablesError {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("invalid k-space window: {0}")]
    InvalidWindow(String),
    #[error("insufficient data: need {needed} {what}, got {got}")]
    InsufficientData { what: &'static str, needed: usize, got: usize },
    #[error("distance {distance} exceeds half the box size {half_box}")]
    DistanceOutOfRange { distance: f64, half_box: f64 },
    #[error(transparent)]
    Core(#[from] coherence_core::CoherenceError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, ObservablesError>;
