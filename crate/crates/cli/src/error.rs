use std::fmt;
use std::io;

use fplift_core::Error;

/// Everything that can stop a job.
#[derive(Debug)]
pub enum CliError {
    /// Bad flags or parameters; exit status 1.
    Usage(String),
    Core(Error),
    Io { path: String, source: io::Error },
    /// A document that does not have the expected shape.
    Format(String),
}

impl CliError {
    /// Exit status: 1 usage, 2 bound abort, 3 verification or internal
    /// failure.
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) | CliError::Format(_) | CliError::Io { .. } => 1,
            CliError::Core(e) => match e {
                Error::BoundExceeded { .. } => 2,
                Error::NotPrime(_)
                | Error::Parse { .. }
                | Error::InvalidInput(_)
                | Error::DimensionMismatch { .. }
                | Error::NotSquare { .. }
                | Error::ZeroPolynomial(_) => 1,
                _ => 3,
            },
        }
    }

    /// Short status word for documents.
    pub fn status(&self) -> &'static str {
        match self.exit_code() {
            1 => "usage-error",
            2 => "bound-exceeded",
            _ => match self {
                CliError::Core(Error::VerificationFailed(_)) => "verification-failed",
                _ => "internal-error",
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) => write!(f, "usage: {s}"),
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Io { path, source } => write!(f, "{path}: {source}"),
            CliError::Format(s) => write!(f, "malformed document: {s}"),
        }
    }
}

impl std::error::Error for CliError {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            CliError::Core(e) => Some(e),
            CliError::Io { source, .. } => Some(source),
            _ => None,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}
