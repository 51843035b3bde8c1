use std::io;

use thiserror::Error;

/// Process exit status for a successful run.
pub const EXIT_OK: u8 = 0;
/// At least one identity failed.
pub const EXIT_FAILED: u8 = 1;
/// Bad command line or parameters.
pub const EXIT_USAGE: u8 = 2;
/// The requested size exceeds a resource cap.
pub const EXIT_CAP: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("n = {n} exceeds the cap of {cap} for this backend")]
    Cap { n: usize, cap: usize },
    #[error(transparent)]
    Core(#[from] qsym_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    pub fn exit_code(&self) -> u8 {
        use qsym_core::Error as E;
        match self {
            CliError::Cap { .. } | CliError::Core(E::ResourceCap { .. }) => EXIT_CAP,
            CliError::Usage(_)
            | CliError::Json(_)
            | CliError::Core(
                E::Parse(_)
                | E::NonPositiveQ(_)
                | E::ZeroSites
                | E::InvalidPermutation(_)
                | E::IndexOutOfRange { .. }
                | E::LevelOutOfRange { .. }
                | E::InvalidBinomial { .. }
                | E::DimensionMismatch { .. },
            ) => EXIT_USAGE,
            _ => EXIT_FAILED,
        }
    }
}
