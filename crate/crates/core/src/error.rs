use thiserror::Error;

/// Errors raised by the distribution functions, samplers, and diagnostics.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum PgError {
    #[error("shape parameter b must be positive, got {0}")]
    NonPositiveShape(f64),
    #[error("Laplace transform argument t must be nonnegative, got {0}")]
    NegativeArgument(f64),
    #[error("density evaluation point must be positive, got {0}")]
    NonPositivePoint(f64),
    #[error("series count must be at least 1")]
    EmptySeries,
    #[error("truncation point {0} lies outside the valid interval [{1}, {2}]")]
    TruncationOutOfRange(f64, f64, f64),
    #[error("chain must contain at least {min} samples, got {got}")]
    ChainTooShort { min: usize, got: usize },
    #[error("chain contains non-finite values")]
    NonFiniteChain,
    #[error("chain has zero variance; effective sample size is undefined")]
    ConstantChain,
    #[error("sampling time must be positive, got {0}")]
    NonPositiveSeconds(f64),
    #[error("quantile level must lie strictly inside (0, 1), got {0}")]
    QuantileOutOfRange(f64),
    #[error("empty draw matrix")]
    EmptyDraws,
}
