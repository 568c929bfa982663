//! Polya-Gamma distributions: exact random-variate generation, density
//! and moment evaluation, and MCMC efficiency diagnostics.
//!
//! The PG(b, c) family is the infinite gamma convolution with Laplace
//! transform `cosh^b(c/2) / cosh^b(sqrt((c^2/2 + t)/2))`.  Its role is
//! data augmentation for binomial-likelihood models: the integral
//! identity
//!
//! ```text
//! (e^psi)^a / (1 + e^psi)^b = 2^-b e^(kappa psi) E[exp(-omega psi^2 / 2)],
//! kappa = a - b/2,  omega ~ PG(b, 0)
//! ```
//!
//! turns a binomial likelihood in psi into a Gaussian one conditional on
//! omega, and the implied conditional for omega is again Polya-Gamma.
//! Model fitters that build on this live in the companion `pg-models`
//! crate; this crate owns the distribution itself:
//!
//! * [`analytic`]: Laplace transform, mean, variance, density, and the
//!   identity checker, all in log space.
//! * [`series`]: the alternating Jacobi series and the two-kernel
//!   proposal envelope behind the exact sampler.
//! * [`sampler`] / [`tig`]: exact PG(1, z) rejection sampling, PG(b, z)
//!   by convolution, the truncated sum-of-gammas reference sampler, and
//!   the truncated inverse-Gaussian building blocks.
//! * [`diagnostics`]: effective sample size (AR spectral estimator),
//!   effective sampling rate, posterior summaries.
//!
//! All numeric code is generic over the [`real::Real`] scalar trait;
//! `f64` is the intended working type and the aliases below pin it.

// Validations use `!(x > 0)` style comparisons on purpose: they reject
// NaN along with out-of-domain values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analytic;
pub mod diagnostics;
pub mod error;
pub mod params;
pub mod real;
pub mod sampler;
pub mod series;
pub mod tig;

pub use analytic::{pg_density, pg_laplace, pg_log_laplace, pg_mean, pg_variance, verify_identity};
pub use diagnostics::{esr, ess, summarize, Chain, EfficiencyReport, ParamSummary};
pub use error::PgError;
pub use params::PgParams;
pub use real::{Real, SampleReal};
pub use sampler::{
    rng_stream, sample_jstar, sample_jstar_recorded, sample_pg, sample_pg1, sample_pg1_recorded,
    sample_pg_naive, sample_pg_recorded, RngStream, SamplerStats,
};
pub use series::{optimal_truncation_point, ProposalMixture, TiltedJacobiSeries};
pub use tig::{
    sample_tig_large_mu, sample_tig_large_mu_counted, sample_tig_small_mu,
    sample_tig_small_mu_counted, AcceptanceCounter,
};

/// Concrete double-precision aliases.
pub type PgParams64 = PgParams<f64>;
pub type TiltedJacobiSeries64 = TiltedJacobiSeries<f64>;
pub type ProposalMixture64 = ProposalMixture<f64>;
pub type Chain64 = Chain<f64>;
pub type EfficiencyReport64 = EfficiencyReport<f64>;

/// Concrete single-precision aliases.
pub type PgParams32 = PgParams<f32>;
pub type TiltedJacobiSeries32 = TiltedJacobiSeries<f32>;
