use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series order must be at least 1, got {0}")]
    InvalidOrder(usize),

    #[error("non-finite coefficient at index {0}")]
    NonFiniteCoefficient(usize),

    #[error("divisor has constant term {0:e}, below the unit tolerance")]
    DivisionByNonUnit(f64),

    #[error("series is not normalized (expected c0 = 0, c1 = 1)")]
    NotNormalized,

    #[error("series constant term is {0}, expected 1")]
    NonUnitConstantTerm(String),

    #[error("|z| = {modulus} exceeds the evaluation cap {cap}")]
    PointOutsideCap { modulus: f64, cap: f64 },

    #[error("alpha = {0} is outside [0, 1)")]
    InvalidAlpha(f64),

    #[error("theta = {0} lies inside the excluded window around 0")]
    ThetaTooClose(f64),

    #[error("f vanishes at z = {re} + {im}i")]
    ZeroOfF { re: f64, im: f64 },

    #[error("invalid sampling grid: {0}")]
    InvalidGrid(String),

    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("no root found: {0}")]
    NoRoot(String),
}
