use thiserror::Error;

/// CLI-level error with the process exit-code contract:
/// 1 config, 2 runtime/numeric, 3 insufficient data.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },
    #[error("[{stage}] {source}")]
    Stage {
        stage: &'static str,
        #[source]
        source: Box<dyn std::error::Error + Send + Sync>,
    },
}

impl CliError {
    pub fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self::Config { path: path.into(), message: message.into() }
    }

    pub fn stage(
        stage: &'static str,
        source: impl std::error::Error + Send + Sync + 'static,
    ) -> Self {
        Self::Stage { stage, source: Box::new(source) }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config { .. } => 1,
            Self::Stage { source, .. } => {
                if is_insufficient(source.as_ref()) {
                    3
                } else {
                    2
                }
            }
        }
    }
}

fn is_insufficient(e: &(dyn std::error::Error + 'static)) -> bool {
    if let Some(e) = e.downcast_ref::<homodyne::HomodyneError>() {
        return matches!(
            e,
            homodyne::HomodyneError::TooFewRecords { .. }
                | homodyne::HomodyneError::InsufficientPostselection { .. }
                | homodyne::HomodyneError::InsufficientData { .. }
        );
    }
    if let Some(e) = e.downcast_ref::<fitting::FittingError>() {
        return matches!(e, fitting::FittingError::InsufficientBins { .. });
    }
    if let Some(e) = e.downcast_ref::<observables::ObservablesError>() {
        return matches!(e, observables::ObservablesError::InsufficientData { .. });
    }
    false
}

pub type Result<T> = std::result::Result<T, CliError>;
