use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("no Barker code of length {0} exists (supported: 2, 3, 4, 5, 7, 11, 13)")]
    UnsupportedLength(usize),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("delay bin {n_tau} outside the detectable range 1..={max}")]
    DelayOutOfRange { n_tau: usize, max: usize },

    #[error("invalid probability {0}: must lie strictly between 0 and 1")]
    InvalidProbability(f64),

    #[error("lag {lag} s outside (-{max} s, {max} s)")]
    LagOutOfRange { lag: f64, max: f64 },

    #[error("invalid configuration:\n  {}", .0.join("\n  "))]
    ConfigInvalid(Vec<String>),

    #[error("nothing to write: result set is empty")]
    EmptyResults,

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn config(msg: impl Into<String>) -> Self {
        Error::ConfigInvalid(vec![msg.into()])
    }
}
