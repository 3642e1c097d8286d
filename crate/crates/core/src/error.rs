use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("values from different fields combined ({0} vs {1})")]
    FieldMismatch(String, String),
    #[error("not a projective point (all coordinates zero)")]
    ZeroPoint,
    #[error("points are projectively equal")]
    ParallelPoints,
    #[error("matrix of linear forms has generic rank below its column count")]
    DegenerateMinors,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("point lies on the curve")]
    OnCurve,
    #[error("field too large for exhaustive scan: {0}")]
    FieldTooLarge(String),
    #[error("unsupported field: {0}")]
    UnsupportedField(String),
    #[error("unknown experiment {0:?}")]
    UnknownExperiment(String),
}

pub type Result<T> = std::result::Result<T, Error>;
