use thiserror::Error;

/// Errors raised by the contour, model, analytic and solver layers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("singular point: potential is undefined at x = {re} + {im}i")]
    SingularPoint { re: f64, im: f64 },

    #[error("fall to center: (ell + 1/2)^2 + F = {discriminant} <= 0 admits no real L")]
    FallToCenter { discriminant: f64 },

    #[error("singular L = {l}: integer values are excluded")]
    SingularL { l: f64 },

    #[error("singular coupling: 2L+1+sigma(2n+1) = {denominator} vanishes (n = {n}, sigma = {sigma})")]
    SingularCoupling { n: u32, sigma: i8, denominator: f64 },

    #[error("unsupported geometry: {0}")]
    UnsupportedGeometry(String),

    #[error("geometry error: {0}")]
    Geometry(String),

    #[error("{operation} did not converge after {iterations} iterations (residual {residual:e})")]
    ConvergenceFailure {
        operation: &'static str,
        iterations: usize,
        residual: f64,
    },

    #[error("fit error: {0}")]
    Fit(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn name(&self) -> &'static str {
        match self {
            Error::Domain(_) => "DomainError",
            Error::SingularPoint { .. } => "SingularPoint",
            Error::FallToCenter { .. } => "FallToCenter",
            Error::SingularL { .. } => "SingularL",
            Error::SingularCoupling { .. } => "SingularCoupling",
            Error::UnsupportedGeometry(_) => "UnsupportedGeometry",
            Error::Geometry(_) => "GeometryError",
            Error::ConvergenceFailure { .. } => "ConvergenceFailure",
            Error::Fit(_) => "FitError",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }

    /// True for failures of an iterative numerical method, as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::ConvergenceFailure { .. } | Error::Fit(_))
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
