use thiserror::Error;

/// Failure modes of a scenario run, each mapped to its own exit status.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("unknown scenario `{0}`")]
    UnknownScenario(String),

    #[error("schema violation: {0}")]
    Schema(String),

    #[error("self-check failed: {0}")]
    Tolerance(String),

    #[error("cannot write output {path}: {source}")]
    Output {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Model(qmbench::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) | CliError::UnknownScenario(_) => 2,
            CliError::Tolerance(_) => 3,
            CliError::Schema(_) => 4,
            CliError::Output { .. } => 5,
            CliError::Model(_) => 6,
        }
    }
}

impl From<qmbench::Error> for CliError {
    fn from(e: qmbench::Error) -> Self {
        match e {
            qmbench::Error::InvalidArgument(msg) => CliError::Schema(msg),
            qmbench::Error::NonFinite(what) => CliError::Schema(format!("non-finite value for {what}")),
            other => CliError::Model(other),
        }
    }
}
