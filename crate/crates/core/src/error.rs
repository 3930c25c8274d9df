use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("modulus {0} is out of range (must satisfy 2 <= p < 2^63)")]
    ModulusOutOfRange(u64),

    #[error("prime {prime} too small: this instance needs p > {required}")]
    PrimeTooSmall { prime: u64, required: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("support vector is zero and does not define a projective point")]
    ZeroSupport,

    #[error("matrix has {cols} columns, above the configured cap of {cap}")]
    SizeCap { cols: usize, cap: usize },

    #[error("no closed-form dimension is defined for {0}")]
    FormulaUndefined(String),

    #[error("triangulation check failed: {0}")]
    Triangulation(String),

    #[error("integer {0} does not fit the target type")]
    Overflow(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameter(msg.into()))
}
