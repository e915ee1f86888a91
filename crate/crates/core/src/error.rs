use thiserror::Error;

/// Which side of `|alpha - beta| < |v| < alpha + beta + 2` failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowSide {
    /// `|alpha - beta| < |v|` does not hold.
    Lower,
    /// `|v| < alpha + beta + 2` does not hold.
    Upper,
}

impl WindowSide {
    pub fn as_str(&self) -> &'static str {
        match self {
            WindowSide::Lower => "lower",
            WindowSide::Upper => "upper",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("singular matrix (det = {det:e})")]
    SingularMatrix { det: f64 },

    #[error("parameters outside the admissible window ({} bound): |alpha-beta| = {lower}, |v| = {value}, alpha+beta+2 = {upper}", side.as_str())]
    ParamOutOfWindow {
        side: WindowSide,
        lower: f64,
        value: f64,
        upper: f64,
    },

    #[error("non-finite input: {what}")]
    NonFinite { what: &'static str },

    #[error("argument {value} outside the domain {domain}")]
    DomainError { value: f64, domain: &'static str },

    #[error("weight is not positive definite at t = {t}")]
    WeightNotPositive { t: f64 },

    #[error("squared norm S_{n} has non-positive diagonal entry ({entry}, {entry}) = {value:e}")]
    NormNotPositive { n: usize, entry: usize, value: f64 },

    #[error("eigenvalue collision at degree {n}, k = {k}: divisor {divisor:e}")]
    EigenvalueCollision { n: usize, k: usize, divisor: f64 },

    #[error("series did not converge within {terms} terms")]
    NoConvergence { terms: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(&'static str),
}

pub type Result<T> = core::result::Result<T, Error>;
