use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("missing assignment for variable {0}")]
    MissingAssignment(String),
    #[error("unknown variable {0}")]
    UnknownVariable(String),
    #[error("polynomial is not homogeneous of degree {0} in {1}")]
    NotHomogeneous(u32, String),
    #[error("input is not in the expected space: {0}")]
    NotInSpace(String),
    #[error("coefficient pole: {0}")]
    Pole(String),
    #[error("singular matrix: {0}")]
    Singular(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("irrational norm at sample point {0}")]
    IrrationalNorm(String),
    #[error("term budget of {0} exceeded")]
    Budget(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
