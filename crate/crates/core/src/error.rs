use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    /// An integral did not reach its tolerance. The best estimate is kept.
    #[error("quadrature did not converge on {what}: estimate {estimate:e} ± {error:e} after {evaluations} evaluations")]
    QuadNotConverged {
        what: String,
        estimate: f64,
        error: f64,
        evaluations: usize,
    },

    #[error("measure not canonical: {0}")]
    NotCanonical(String),

    #[error("non-integrable or slowly decaying characteristic function: {0}")]
    SlowDecay(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("grids do not match: {0}")]
    GridMismatch(String),

    #[error("unknown model `{0}` (expected example1:alpha=<float>, example2, gauss)")]
    UnknownModel(String),

    #[error("config error in `{field}`: {reason}")]
    Config { field: String, reason: String },

    #[error("io: {0}")]
    Io(String),
}

impl Error {
    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }

    pub fn config(field: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Config {
            field: field.into(),
            reason: reason.into(),
        }
    }

    /// True for configuration/parameter problems (as opposed to numerical failures).
    pub fn is_config(&self) -> bool {
        matches!(
            self,
            Error::Config { .. } | Error::UnknownModel(_) | Error::InvalidParameter { .. }
        )
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
