use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// A parameter lies outside the domain of the requested operation.
    #[error("invalid {name} = {value}: {reason}")]
    Domain {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },

    /// The input sits on a pole of the function (e.g. digamma at 0, -1, -2, ...).
    #[error("pole of {function} at {at}")]
    Pole { function: &'static str, at: f64 },

    #[error("index {index} out of range (max {max})")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("points {a} and {b} coincide to within {threshold:e}")]
    DuplicatePoint { a: f64, b: f64, threshold: f64 },

    #[error("tolerance {tol:e} not reached after depth {depth}: value {value}, error estimate {error_estimate:e}")]
    ToleranceNotReached {
        tol: f64,
        depth: usize,
        value: f64,
        error_estimate: f64,
    },

    /// The sequential sampler saw a conditional density below the roundoff band.
    #[error("negative conditional density {density:e} at x = {x}")]
    NegativeConditionalDensity { x: f64, density: f64 },

    #[error("unsupported combination: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, reason: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            reason,
        }
    }
}
