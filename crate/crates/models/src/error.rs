use pg_core::PgError;
use thiserror::Error;

/// Errors raised while validating model inputs or running a fitter.
#[derive(Debug, Error)]
pub enum ModelError {
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("invalid data: {0}")]
    InvalidData(String),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("{0} is not positive definite")]
    NonPositiveDefinite(&'static str),
    #[error(
        "Hessian at the posterior mode is not positive definite; the independence \
         Metropolis proposal cannot be formed (use the Gibbs sampler instead)"
    )]
    HessianNotPd,
    #[error("did not converge within {iterations} iterations")]
    NonConvergence { iterations: usize },
    #[error("kernel matrix stayed non-positive-definite after jitter escalation to 1e-6")]
    KernelIllConditioned,
    #[error("Wishart draw needs dof + centers > dimension: {needed} required, got {got}")]
    InsufficientDof { needed: f64, got: f64 },
    #[error(transparent)]
    Pg(#[from] PgError),
}
