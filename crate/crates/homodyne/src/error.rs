use thiserror::Error;

#[derive(Debug, Error)]
pub enum HomodyneError {
    #[error("stream too short: need at least {needed} records, got {got}")]
    TooFewRecords { needed: usize, got: usize },
    #[error("timestamps must be monotone nondecreasing (violated at record {0})")]
    NonMonotoneTime(usize),
    #[error("pathological lag-1 autocorrelation {0:.3} (|c| > 0.9)")]
    PathologicalCorrelation(f64),
    #[error("postselection retained only {retained} of {total} records (< 0.1%)")]
    InsufficientPostselection { retained: usize, total: usize },
    #[error("{fraction:.3}% of points fell outside the histogram extent (> 1%)")]
    ExcessiveOverflow { fraction: f64 },
    #[error("insufficient data: need {needed} {what}, got {got}")]
    InsufficientData { what: &'static str, needed: usize, got: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("malformed input: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, HomodyneError>;
