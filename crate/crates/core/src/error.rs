use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

/// Errors raised by the algebraic routines.
///
/// Internal errors signal a broken invariant (a result the theory says is
/// impossible); they carry enough state to reproduce the failure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The modulus passed in is not prime.
    NotPrime(u64),
    /// A vector or matrix had the wrong length.
    DimensionMismatch { expected: usize, found: usize },
    /// A determinant was requested for a non-square matrix.
    NotSquare { rows: usize, cols: usize },
    /// An operation that needs a non-zero polynomial got zero.
    ZeroPolynomial(&'static str),
    /// Inversion of zero.
    DivisionByZero,
    /// A rational has a denominator divisible by the anchor prime.
    NotLocal { value: String, p: u64 },
    /// The norm bound that makes the construction sound does not hold.
    BoundExceeded { level: usize, detail: String },
    /// A linear system that must be consistent is not.
    Inconsistent(String),
    /// No irreducible factor maps to a polynomial vanishing at the anchor.
    NoCompatibleFactor(String),
    /// The final brute-force check found a relation that is not preserved.
    VerificationFailed(String),
    /// Malformed textual input.
    Parse { input: String, reason: String },
    /// Input rejected by a precondition check.
    InvalidInput(String),
    /// A theorem-backed invariant failed.
    Internal(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPrime(p) => write!(f, "{p} is not prime"),
            Error::DimensionMismatch { expected, found } => {
                write!(f, "dimension mismatch: expected {expected}, found {found}")
            }
            Error::NotSquare { rows, cols } => write!(f, "matrix is {rows}x{cols}, not square"),
            Error::ZeroPolynomial(what) => write!(f, "zero polynomial not allowed: {what}"),
            Error::DivisionByZero => f.write_str("division by zero"),
            Error::NotLocal { value, p } => {
                write!(f, "{value} has a denominator divisible by {p}")
            }
            Error::BoundExceeded { level, detail } => {
                write!(f, "norm bound exceeded at level {level}: {detail}")
            }
            Error::Inconsistent(s) => write!(f, "inconsistent system: {s}"),
            Error::NoCompatibleFactor(s) => write!(f, "no compatible factor: {s}"),
            Error::VerificationFailed(s) => write!(f, "verification failed: {s}"),
            Error::Parse { input, reason } => write!(f, "cannot parse {input:?}: {reason}"),
            Error::InvalidInput(s) => write!(f, "invalid input: {s}"),
            Error::Internal(s) => write!(f, "internal error: {s}"),
        }
    }
}

#[cfg(feature = "std")]
impl std::error::Error for Error {}
