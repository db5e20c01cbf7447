use thiserror::Error;

use crate::atlas::TailFailure;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An exact quotient was required but the division leaves a remainder.
    #[error("{what}: {numerator} is not divisible by {denominator}")]
    NonIntegral {
        what: &'static str,
        numerator: String,
        denominator: String,
    },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("tail monotonicity failed at {} boundary point(s); scan bounds are too small to trust", .0.len())]
    TailCheckFailed(Vec<TailFailure>),

    #[error("sporadic table line {line}: {message}")]
    SporadicTable { line: usize, message: String },

    #[error("cannot parse group name {0:?}")]
    GroupName(String),

    #[error("unsupported report format {0:?} (expected json or md)")]
    UnsupportedFormat(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn non_integral(
        what: &'static str,
        numerator: impl ToString,
        denominator: impl ToString,
    ) -> Self {
        Error::NonIntegral {
            what,
            numerator: numerator.to_string(),
            denominator: denominator.to_string(),
        }
    }
}
