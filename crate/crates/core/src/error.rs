use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid scenario: {0}")]
    InvalidScenario(String),

    #[error("invalid waveform parameters: {0}")]
    InvalidWaveform(String),

    #[error("non-finite value in {0}")]
    NonFinite(&'static str),

    #[error("length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("degenerate denominator in ratio of quadratic forms ({0:e})")]
    DegenerateDenominator(f64),

    #[error("matrix not certified positive definite (min eigenvalue / trace = {relative_min:e})")]
    NotPositiveDefinite { relative_min: f64 },

    #[error("quadrature did not converge after {intervals} intervals (estimate {estimate:e}, error {error:e})")]
    QuadratureNoConvergence {
        intervals: usize,
        estimate: f64,
        error: f64,
    },

    #[error("at least 2 realizations are required to fit a covariance, got {0}")]
    TooFewRealizations(usize),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short comma-free token used as an error marker in CSV cells.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::InvalidScenario(_) => "invalid_scenario",
            Error::InvalidWaveform(_) => "invalid_waveform",
            Error::NonFinite(_) => "non_finite",
            Error::LengthMismatch { .. } => "length_mismatch",
            Error::DegenerateDenominator(_) => "degenerate_denominator",
            Error::NotPositiveDefinite { .. } => "not_positive_definite",
            Error::QuadratureNoConvergence { .. } => "quadrature_no_convergence",
            Error::TooFewRealizations(_) => "too_few_realizations",
            Error::Config(_) => "config",
            Error::Io(_) => "io",
            Error::Json(_) => "json",
        }
    }
}
