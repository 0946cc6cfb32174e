use thiserror::Error;

/// Errors raised by parameter validation and the numerical routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: String,
        reason: &'static str,
    },

    #[error("point {modulus} lies outside the open unit disc")]
    OutsideDisc { modulus: f64 },

    #[error("degenerate denominator: |R f(z)| = {modulus:e} at z = {re} + {im}i")]
    Degenerate { modulus: f64, re: f64, im: f64 },

    #[error("index {n} out of range 2..={max}")]
    IndexOutOfRange { n: usize, max: usize },

    #[error("invalid series: {0}")]
    InvalidSeries(String),

    #[error("comparison function has no registered inverse; containment cannot be tested")]
    UnsupportedComparison,
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn param(name: &'static str, value: impl ToString, reason: &'static str) -> Self {
        Error::InvalidParameter {
            name,
            value: value.to_string(),
            reason,
        }
    }
}
