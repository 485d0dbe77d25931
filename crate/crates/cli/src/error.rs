use thiserror::Error;

pub const EXIT_MISMATCH: i32 = 2;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_DATA: i32 = 65;
pub const EXIT_SOFTWARE: i32 = 70;
pub const EXIT_IO: i32 = 74;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    OutOfRange(String),
    #[error("mismatch: {0}")]
    Mismatch(String),
    #[error("computation failed: {0}")]
    Compute(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::OutOfRange(_) => EXIT_DATA,
            CliError::Mismatch(_) => EXIT_MISMATCH,
            CliError::Compute(_) => EXIT_SOFTWARE,
            CliError::Io(_) => EXIT_IO,
        }
    }
}

impl From<hurwitz_core::RecursionError> for CliError {
    fn from(e: hurwitz_core::RecursionError) -> Self {
        use hurwitz_core::RecursionError as R;
        match e {
            R::Unstable { .. } | R::BergmanBaseCase(_) | R::FgGenus(_) => {
                CliError::OutOfRange(e.to_string())
            }
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<hurwitz_core::ExtractError> for CliError {
    fn from(e: hurwitz_core::ExtractError) -> Self {
        match e {
            hurwitz_core::ExtractError::Recursion(r) => r.into(),
            other => CliError::Compute(other.to_string()),
        }
    }
}

impl From<hurwitz_core::OracleError> for CliError {
    fn from(e: hurwitz_core::OracleError) -> Self {
        CliError::Compute(e.to_string())
    }
}

impl From<hurwitz_core::SeriesError> for CliError {
    fn from(e: hurwitz_core::SeriesError) -> Self {
        CliError::Compute(e.to_string())
    }
}
