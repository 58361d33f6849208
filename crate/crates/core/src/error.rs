use thiserror::Error;

/// Errors produced by graph construction, parameter mathematics and recovery.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("format error: {0}")]
    Format(String),

    #[error("degenerate rates: {0}")]
    DegenerateRates(String),

    #[error("no crossing of rho(c) = sqrt(tau) for c in (0, {upper}]")]
    NoCrossing { upper: f64 },

    #[error("no feasible parameters with growth > 1 in the search budget")]
    NoFeasibleParams,

    #[error("subcritical parameters: {0}")]
    SubcriticalParams(String),

    #[error("random sample is empty")]
    EmptySample,

    #[error("iteration {level} left no surviving vertices")]
    IterationCollapse { level: usize },

    #[error("core extraction failed: {0}")]
    CoreExtractionFailed(String),

    #[error("seed too weak: {0}")]
    SeedTooWeak(String),

    #[error("amplification exhausted after {trials} trials")]
    AmplificationExhausted { trials: usize },

    #[error("i/o error: {0}")]
    Io(String),
}

impl Error {
    /// Variant name, stable across message changes.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidParams(_) => "InvalidParams",
            Error::Format(_) => "Format",
            Error::DegenerateRates(_) => "DegenerateRates",
            Error::NoCrossing { .. } => "NoCrossing",
            Error::NoFeasibleParams => "NoFeasibleParams",
            Error::SubcriticalParams(_) => "SubcriticalParams",
            Error::EmptySample => "EmptySample",
            Error::IterationCollapse { .. } => "IterationCollapse",
            Error::CoreExtractionFailed(_) => "CoreExtractionFailed",
            Error::SeedTooWeak(_) => "SeedTooWeak",
            Error::AmplificationExhausted { .. } => "AmplificationExhausted",
            Error::Io(_) => "Io",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Format(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        if e.is_io_error() {
            Error::Io(e.to_string())
        } else {
            Error::Format(e.to_string())
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParams(msg.into()))
}
