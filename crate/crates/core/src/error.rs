use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("unsupported particle count {n} (allowed: {allowed})")]
    UnsupportedParticleCount { n: usize, allowed: &'static str },

    /// Three or more fermions effectively coincide; the Wick trace vanishes.
    #[error("degenerate configuration: normalization trace {trace:.3e} below threshold")]
    DegenerateConfiguration { trace: f64 },

    #[error("operator is not symmetric (max asymmetry {asymmetry:.3e})")]
    NotSymmetric { asymmetry: f64 },

    #[error("operator has eigenvalue {min_eigenvalue:.3e} below the positivity window")]
    NotPositive { min_eigenvalue: f64 },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid bipartition: {0}")]
    InvalidBipartition(String),

    #[error("root bracket [{lo}, {hi}] does not contain a sign change")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("singular Gram matrix: linearly dependent basis operators {dependent:?}")]
    SingularGram { dependent: Vec<String> },
}

pub type Result<T> = std::result::Result<T, Error>;
