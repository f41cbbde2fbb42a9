use thiserror::Error;

/// Errors for the analytic coherence machinery.
#[derive(Debug, Clone, Error)]
pub enum CoherenceError {
    #[error("thermal occupation must be nonnegative, got {0}")]
    NegativeThermalOccupation(f64),
    #[error("vacuum state has no defined g2")]
    UndefinedStatistic,
    #[error("Glauber-Sudarshan density degenerates to a Dirac delta at nbar = 0")]
    DegenerateDistribution,
    #[error("density matrix deviates from Hermiticity by {deviation:.3e} (tolerance {tolerance:.1e})")]
    NonHermitian { deviation: f64, tolerance: f64 },
    #[error("Fock truncation deficit {deficit:.3e} exceeds threshold {threshold:.1e}")]
    TruncationDeficit { deficit: f64, threshold: f64 },
    #[error("reflectance magnitude {0} exceeds 1")]
    ReflectanceOutOfRange(f64),
    #[error("coefficient vector has norm^2 {0}, expected 1 within 1e-10")]
    NotNormalized(f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

pub type Result<T> = std::result::Result<T, CoherenceError>;
