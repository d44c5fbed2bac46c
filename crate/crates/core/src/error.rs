use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("duplicate point {0}")]
    DuplicatePoint(String),
    #[error("point {0} is not positive")]
    NonpositivePoint(String),
    #[error("point list is empty")]
    EmptyPoints,
    #[error("exact arithmetic unavailable: {0}")]
    ExactModeUnsupported(String),
    #[error("exponent must be positive, got {0}")]
    NonpositiveExponent(f64),
    #[error("bad exponent: {0}")]
    BadExponent(String),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("index {index} out of range for dimension {dim}")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("Jacobi iteration did not converge after {sweeps} sweeps (off-diagonal norm {off_norm:e})")]
    NoConvergence {
        sweeps: usize,
        off_norm: f64,
        best: Vec<f64>,
    },
    #[error("expected nullity {expected} not supported by the spectrum (gap ratio {gap_ratio:e})")]
    AmbiguousNullity { expected: usize, gap_ratio: f64 },
    #[error("matrix has rank {rank}, expected full rank {expected}")]
    RankDeficient { rank: usize, expected: usize },
    #[error("depth {j} out of range for order {n}")]
    DepthOutOfRange { j: usize, n: usize },
    #[error("weight vector is identically zero")]
    AllZeroWeights,
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("order {n} too large for minor enumeration (limit {limit})")]
    OrderTooLarge { n: usize, limit: usize },
    #[error("scalar mode mismatch: {0}")]
    ModeMismatch(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable machine-readable name of the error variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DuplicatePoint(_) => "DuplicatePoint",
            Error::NonpositivePoint(_) => "NonpositivePoint",
            Error::EmptyPoints => "EmptyPoints",
            Error::ExactModeUnsupported(_) => "ExactModeUnsupported",
            Error::NonpositiveExponent(_) => "NonpositiveExponent",
            Error::BadExponent(_) => "BadExponent",
            Error::LengthMismatch { .. } => "LengthMismatch",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::AmbiguousNullity { .. } => "AmbiguousNullity",
            Error::RankDeficient { .. } => "RankDeficient",
            Error::DepthOutOfRange { .. } => "DepthOutOfRange",
            Error::AllZeroWeights => "AllZeroWeights",
            Error::PreconditionViolated(_) => "PreconditionViolated",
            Error::OrderTooLarge { .. } => "OrderTooLarge",
            Error::ModeMismatch(_) => "ModeMismatch",
            Error::NotSymmetric => "NotSymmetric",
            Error::Parse(_) => "Parse",
        }
    }
}
