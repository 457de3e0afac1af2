use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: String, found: String },

    #[error("index {index} out of range 1..={bound}")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("matrix is not symmetric (asymmetry {asymmetry:.3e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("not a valid intensity matrix: {0}")]
    InvalidIntensity(String),

    #[error("not a valid transition matrix: {0}")]
    InvalidTransition(String),

    #[error("time must be non-negative, got {0}")]
    NegativeTime(f64),

    #[error("state space of dimension {dim} exceeds the dense limit {limit}")]
    SizeExceeded { dim: usize, limit: usize },

    #[error("beta = {beta} gives a complex Temperley-Lieb root (need |beta| >= 2)")]
    ComplexBranch { beta: f64 },

    #[error("Jacobi iteration did not converge after {sweeps} sweeps")]
    NonConvergence { sweeps: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("parameters outside the non-negativity region: {0}")]
    ParameterRegion(String),

    #[error("normalizer 18 + 4a + 4b + c vanishes")]
    DegenerateNormalizer,

    #[error("state set is not closed: state {from} leaks to state {to}")]
    NotClosed { from: usize, to: usize },

    #[error("stationary null space has dimension {dim}, expected 1")]
    DegenerateNullSpace { dim: usize },

    #[error("empty window after burn-in")]
    EmptyWindow,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn dims(expected: impl ToString, found: impl ToString) -> Self {
        Error::DimensionMismatch {
            expected: expected.to_string(),
            found: found.to_string(),
        }
    }
}
