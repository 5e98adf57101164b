use thiserror::Error;

/// Errors shared across the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("negative transmit power: {0}")]
    NegativePower(f64),
    #[error("non-finite channel parameter: {0}")]
    NonFinite(&'static str),
    #[error("not weak interference: |{gain}| = {value} > 1")]
    NotWeakInterference { gain: &'static str, value: f64 },
    #[error("covariance not positive semidefinite: gamma^2 = {gamma_sq} exceeds limit {limit}")]
    NotPsd { gamma_sq: f64, limit: f64 },
    #[error("noise power must be positive, got {0}")]
    ZeroNoise(f64),
    #[error("empty point set")]
    EmptyInput,
    #[error("halfspace set is unbounded in the nonnegative quadrant")]
    Unbounded,
    #[error("not strong interference: a^2 = {a_sq}, b^2 = {b_sq} (both must be >= 1)")]
    NotStrongInterference { a_sq: f64, b_sq: f64 },
    #[error("singular joint covariance, mutual information undefined")]
    SingularCovariance,
    #[error("need at least {min} samples, got {got}")]
    InsufficientSamples { got: usize, min: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
