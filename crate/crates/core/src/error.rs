use thiserror::Error;

/// Errors raised by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("side lengths must be positive and finite, got ({0}, {1}, {2})")]
    NonPositiveSide(f64, f64, f64),

    #[error("sides ({a}, {b}, {c}) violate the triangle inequality with margin {margin}")]
    TriangleInequality { a: f64, b: f64, c: f64, margin: f64 },

    #[error("Heron radicand {0} is negative beyond tolerance")]
    HeronRadicand(f64),

    #[error("median radicand {0} is not positive")]
    MedianRadicand(f64),

    #[error("domain error: {0}")]
    Domain(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed certificate: {0}")]
    Certificate(String),

    #[error(transparent)]
    Io(#[from] IoError),
}

/// `std::io::Error` is neither `Clone` nor `PartialEq`; keep its rendering.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("{0}")]
pub struct IoError(pub String);

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(IoError(e.to_string()))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
