use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("degenerate contour: {0}")]
    DegenerateContour(String),

    #[error("self-intersection detected between contour segments {0} and {1}")]
    SelfIntersection(usize, usize),

    #[error("point {0} is not strictly inside the domain")]
    OutsideDomain(Complex64),

    #[error("point {point} is not on the boundary (distance {distance:e})")]
    NotOnBoundary { point: Complex64, distance: f64 },

    #[error("non-finite integrand value at parameter {0}")]
    NonFinite(f64),

    #[error("tolerance {tolerance:e} not reached (estimate {estimate:e}) after {evaluations} evaluations")]
    Convergence {
        tolerance: f64,
        estimate: f64,
        evaluations: usize,
    },

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("empty sample set")]
    EmptySample,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
