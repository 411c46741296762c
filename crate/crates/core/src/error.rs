use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("substituted denominator vanishes identically")]
    DegenerateSubstitution,

    #[error("invalid range: need 0 < k < n, got k = {k}, n = {n}")]
    InvalidRange { k: i64, n: i64 },

    #[error("sequence {0} is not in S_{{k,n}}")]
    NotInSkn(String),

    #[error("det H_0 vanishes")]
    SingularH0,

    #[error("matrix is rank deficient")]
    RankDeficient,

    #[error("truncated product did not stabilize up to {ceiling} rows")]
    NonStabilizing { ceiling: usize },

    #[error("operator is not monic")]
    NonMonic,

    #[error("argument {0} outside the series regime")]
    DomainExceeded(f64),

    #[error("|tau| = {value:e} below floor {floor:e} near the sample point")]
    PoleNearSample { value: f64, floor: f64 },

    #[error("truncation K = {k} insufficient: change {change:e} exceeds {tolerance:e}")]
    TruncationInsufficient { k: usize, change: f64, tolerance: f64 },

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
