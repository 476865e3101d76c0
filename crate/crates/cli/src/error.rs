use fuzzyfix_core::Error as CoreError;
use thiserror::Error;

/// Process exit classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExitClass {
    Success = 0,
    /// A hypothesis, axiom or precondition failed.
    Failure = 2,
    /// Nonconvergent orbit or no witness found.
    Absent = 3,
    Config = 4,
}

impl ExitClass {
    pub fn code(self) -> i32 {
        self as i32
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error in `{field}`: {message}")]
    Config { field: String, message: String },
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv error: {0}")]
    Csv(#[from] csv::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn config(field: impl Into<String>, message: impl Into<String>) -> Self {
        CliError::Config {
            field: field.into(),
            message: message.into(),
        }
    }

    pub fn exit_class(&self) -> ExitClass {
        match self {
            CliError::Core(CoreError::Precondition { .. } | CoreError::HypothesisClause { .. } | CoreError::MapFailed { .. }) => {
                ExitClass::Failure
            }
            _ => ExitClass::Config,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
