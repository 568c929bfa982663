//! Data-augmented posterior samplers for binomial-likelihood models.
//!
//! Every fitter follows the same pattern: conditional on the latent
//! Polya-Gamma variables the model is a Gaussian linear model, and
//! conditional on the parameters each latent variable is Polya-Gamma, so
//! a sweep alternates `omega ~ PG(shape, psi)` draws with one (or a few)
//! Cholesky-backed Gaussian draws.
//!
//! Fitters:
//! * [`fit_logit_gibbs`], [`fit_logit_em`], [`fit_logit_metropolis`]:
//!   binomial logistic regression (exact Gibbs, MAP via EM, and an
//!   independence-Metropolis baseline).
//! * [`fit_mixed_gibbs`]: random-intercept logistic mixed model.
//! * [`fit_negbin_gibbs`]: negative-binomial regression with an integer
//!   dispersion random walk.
//! * [`fit_multinomial_gibbs`]: multinomial logit with per-category
//!   conditional updates.
//! * [`fit_tables_gibbs`]: 2 x 2 x N tables with a normal-Wishart
//!   hyperprior; [`hyper_from_moments`] maps prior moments to the
//!   inverse-Wishart scale.
//! * [`fit_gp_negbin_gibbs`]: Gaussian-process log-odds field for counts
//!   with the [`sq_exp_kernel`] covariance.
//!
//! All fitters are seeded through [`GibbsConfig`] and return
//! [`PosteriorDraws`]; identical seeds give identical draws.

// Validations use `!(x > 0)` style comparisons on purpose: they reject
// NaN along with out-of-domain values.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod data;
mod error;
mod gp;
mod linalg;
mod logit;
mod mixed;
mod multinomial;
mod negbin;
pub mod synthetic;
mod tables;

pub use data::{
    GaussianPrior, GibbsConfig, GpData, MixedData, MultinomialData, NegBinData, PosteriorDraws,
    RegressionData, TablesData,
};
pub use error::ModelError;
pub use gp::{fit_gp_negbin_gibbs, sq_exp_kernel};
pub use logit::{fit_logit_em, fit_logit_em_trace, fit_logit_gibbs, fit_logit_metropolis};
pub use mixed::fit_mixed_gibbs;
pub use multinomial::fit_multinomial_gibbs;
pub use negbin::fit_negbin_gibbs;
pub use tables::{fit_tables_gibbs, hyper_from_moments};
