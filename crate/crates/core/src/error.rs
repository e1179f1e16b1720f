use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("variable `{0}` is not in the polynomial universe")]
    UnknownVariable(String),

    #[error("operator does not act by a scalar on sample a = {sample:?}")]
    NotEigenvector { sample: Vec<i64> },

    #[error("insufficient samples: axis {axis} has {have} points, need {need}")]
    InsufficientSamples { axis: usize, have: usize, need: usize },

    #[error("element is not homogeneous of degree 0 (has parts at degrees {0:?})")]
    NotDegreeZero(Vec<i64>),

    #[error("parameter mismatch: {0}")]
    ParameterMismatch(String),

    #[error("unknown catalog entry `{0}`")]
    UnknownEntry(String),

    #[error("no closed Bernstein-Sato formula for `{0}`; supply b_Y explicitly")]
    FormulaUnavailable(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("catalog data error on line {line}: {msg}")]
    CatalogData { line: usize, msg: String },
}

pub type Result<T> = std::result::Result<T, Error>;
