use thiserror::Error;

/// Every failure the library can surface. Variants map one-to-one onto the
/// error codes printed by the command-line tool.
#[derive(Debug, Error)]
pub enum Error {
    #[error("set is empty")]
    EmptySet,
    #[error("set is not nearly convex")]
    NotNearlyConvex,
    #[error("constraint qualification violated: {0}")]
    CqViolated(String),
    #[error("domain boundary is not representable with rational data")]
    IrrationalBoundary,
    #[error("no closed form available for {0}")]
    NoClosedForm(String),
    #[error("base point is not interior to the open set")]
    X0NotInterior,
    #[error("gauge rows cannot be normalized to positive right-hand sides")]
    Unnormalizable,
    #[error("bad interval: {0}")]
    BadInterval(String),
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("polygon is not full-dimensional")]
    NotFullDim,
    #[error("operation needs a planar input")]
    Not2d,
    #[error("function is infinite at the base point")]
    InfiniteAtX,
    #[error("sample is empty")]
    EmptySample,
    #[error("point is not interior to the domain")]
    NotInterior,
    #[error("point is not in the domain of the subdifferential")]
    NotInDom,
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("internal identity failed: {0}")]
    InvariantViolated(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short upper-case code used in reports.
    pub fn code(&self) -> &'static str {
        match self {
            Error::EmptySet => "EMPTY_SET",
            Error::NotNearlyConvex => "NOT_NEARLY_CONVEX",
            Error::CqViolated(_) => "CQ_VIOLATED",
            Error::IrrationalBoundary => "IRRATIONAL_BOUNDARY",
            Error::NoClosedForm(_) => "NO_CLOSED_FORM",
            Error::X0NotInterior => "X0_NOT_INTERIOR",
            Error::Unnormalizable => "UNNORMALIZABLE",
            Error::BadInterval(_) => "BAD_INTERVAL",
            Error::BadParameter(_) => "BAD_PARAMETER",
            Error::NotFullDim => "NOT_FULL_DIM",
            Error::Not2d => "NOT_2D",
            Error::InfiniteAtX => "INFINITE_AT_X",
            Error::EmptySample => "EMPTY_SAMPLE",
            Error::NotInterior => "NOT_INTERIOR",
            Error::NotInDom => "NOT_IN_DOM",
            Error::DimensionMismatch { .. } => "DIMENSION_MISMATCH",
            Error::InvariantViolated(_) => "INVARIANT_VIOLATED",
            Error::Parse(_) | Error::Json(_) => "PARSE",
            Error::Io(_) => "IO",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
