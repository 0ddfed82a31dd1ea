use thiserror::Error;

use crate::ratcore::SeriesKind;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("series kind mismatch: expected {expected:?}, found {found:?}")]
    KindMismatch {
        expected: SeriesKind,
        found: SeriesKind,
    },

    #[error("a series needs at least one coefficient")]
    EmptySeries,

    #[error("series has zero constant term and cannot be inverted")]
    SingularSeries,

    #[error("expected constant term 1, found {0}")]
    NotNormalized(String),

    #[error("moment sequence must start with m0 = 1, found {0}")]
    BadZerothMoment(String),

    #[error("{what} must be positive, got {value}")]
    NonPositive { what: &'static str, value: String },

    #[error("need {needed} terms, only {available} available")]
    InsufficientTerms { needed: usize, available: usize },

    #[error("cannot parse rational {input:?}: {reason}")]
    Parse { input: String, reason: String },

    #[error("{0}")]
    Domain(String),

    #[error("quadrature did not converge within {panels} panels (estimate {estimate:e}, error {error:e})")]
    NoConvergence {
        panels: usize,
        estimate: f64,
        error: f64,
    },
}
