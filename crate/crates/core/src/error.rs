use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("series must have at least one coefficient")]
    EmptySeries,

    #[error("coefficient {index} is not finite")]
    NonFinite { index: usize },

    #[error("real power needs constant term exactly 1, got {re}{im:+}i")]
    NonUnitConstantTerm { re: f64, im: f64 },

    #[error("reciprocal of a series with zero constant term")]
    ZeroConstantTerm,

    #[error("normalized function needs f(0) = 0 and f'(0) = 1")]
    NotNormalized,

    #[error("invalid class parameters: {0}")]
    InvalidParams(String),

    #[error("invalid Schwarz function: {0}")]
    InvalidSchwarz(String),

    #[error("invalid atom measure: {0}")]
    BadMeasure(String),

    #[error("coefficient {index} of 1/(1 + z phi) has modulus {modulus:.3e}, above the Caratheodory bound")]
    InversionDivergence { index: usize, modulus: f64 },

    #[error("{0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
