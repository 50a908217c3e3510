use thiserror::Error;

/// Errors raised by the library. CLI exit codes are derived from the variant.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("validation error: {0}")]
    Validation(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("index {index} out of range for {size} modes")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("state is not number-conserving (pairing block norm {0:.3e})")]
    NotNumberConserving(f64),

    #[error("state is not pure (max |ΓΓᵀ - 1| = {0:.3e})")]
    NotPure(f64),

    #[error("series diverges for L/N = {0}")]
    SeriesDivergence(f64),

    #[error("integral diverges: integrand does not vanish at λ = {0}")]
    DivergentIntegral(f64),

    #[error("singular contraction at k = {k} (condition number {cond:.3e})")]
    SingularContraction { k: f64, cond: f64 },

    #[error("degenerate ladder ansatz: p and q vanish together at k = {0}")]
    DegenerateAnsatz(f64),

    #[error("dense oracle limited to {cap} modes, got {n}")]
    OracleCap { n: usize, cap: usize },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn numerical(msg: impl Into<String>) -> Self {
        Error::Numerical(msg.into())
    }

    /// True for errors caused by bad input rather than a failed computation.
    pub fn is_validation(&self) -> bool {
        matches!(
            self,
            Error::Validation(_)
                | Error::DimensionMismatch { .. }
                | Error::IndexOutOfRange { .. }
                | Error::SeriesDivergence(_)
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
