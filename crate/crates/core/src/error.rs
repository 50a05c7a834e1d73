use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("PNM parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("unsupported channel count {0} (expected 1 or 3)")]
    UnsupportedChannels(usize),

    #[error("invalid image: {0}")]
    InvalidImage(String),

    #[error("invalid filter parameters: {0}")]
    InvalidParams(String),

    #[error("invalid noise specification: {0}")]
    InvalidNoise(String),

    #[error("{0} requires a nonempty input")]
    EmptyInput(&'static str),

    #[error("unknown filter {name:?}; valid filters are: {valid}")]
    UnknownFilter { name: String, valid: String },

    #[error("metric undefined: {0}")]
    UndefinedMetric(String),

    #[error("invalid sweep plan: {0}")]
    InvalidPlan(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    #[error("CSV output failed: {0}")]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn parse(offset: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            offset,
            message: message.into(),
        }
    }

    pub(crate) fn io(path: impl AsRef<std::path::Path>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.as_ref().display().to_string(),
            source,
        }
    }
}
