use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// Argument outside the mathematical domain of a function.
    #[error("{func}: argument {value} outside domain ({detail})")]
    Domain {
        func: &'static str,
        value: f64,
        detail: &'static str,
    },

    #[error("invalid parameter `{name}` = {value}: {detail}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        detail: &'static str,
    },

    #[error("unsupported operation: {0}")]
    Unsupported(String),

    /// Tabulated data cannot resolve the requested quantity.
    #[error("insufficient spectral resolution: {0}")]
    Resolution(String),

    #[error(
        "quadrature did not converge after {intervals} subintervals \
         (estimate {estimate:e}, error estimate {error_estimate:e})"
    )]
    Quadrature {
        estimate: f64,
        error_estimate: f64,
        intervals: usize,
    },

    /// The delay prior is too narrow compared to the resolution for the
    /// asymptote intersection to exist.
    #[error(
        "scenario too narrow: 2*bandwidth^2*sigma_tau^2 = {product} must exceed e \
         (delay uncertainty comparable to resolution)"
    )]
    ScenarioTooNarrow { product: f64 },

    #[error("upper bound is singular at kappa = 1")]
    SingularBound,

    #[error("model violation: {0}")]
    ModelViolation(String),

    #[error("matched-filter output vanishes; derivative of |z| undefined")]
    DerivativeUndefined,

    #[error("parse error at line {line}: {detail}")]
    Parse { line: usize, detail: String },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub(crate) fn positive(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            detail: "must be finite and positive",
        })
    }
}

pub(crate) fn non_negative(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() && value >= 0.0 {
        Ok(value)
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            detail: "must be finite and non-negative",
        })
    }
}
