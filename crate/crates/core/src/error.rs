use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("non-finite scalar: {0}")]
    NonFinite(f64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("no samples")]
    NoSamples,

    #[error("already separated: mistake set is empty")]
    AlreadySeparated,

    #[error("not separable: margin {0} is not positive")]
    NotSeparable(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("margin not certified after {iterations} iterations: mu in [{lower}, {upper}]")]
    MarginNotCertified {
        lower: f64,
        upper: f64,
        iterations: usize,
    },

    #[error("rejection sampling failed after {0} draws; margin too close to radius")]
    RejectionFailed(usize),

    #[error("class {0} absent from dataset")]
    ClassAbsent(i8),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: unknown label {label:?}")]
    UnknownLabel { line: usize, label: String },

    #[error("metric {0} absent from trace")]
    MetricAbsent(String),

    #[error("nothing to plot: no traces")]
    NoTraces,

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    /// True for failures caused by the caller's input rather than the
    /// environment or a numerical breakdown.
    pub fn is_user_error(&self) -> bool {
        !matches!(
            self,
            Error::Io { .. } | Error::NonFinite(_) | Error::MarginNotCertified { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
