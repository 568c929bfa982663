//! Binomial logistic regression: the Polya-Gamma Gibbs sampler, an EM
//! mode finder, and an independence-Metropolis baseline.
//!
//! The Gibbs sampler alternates
//! `omega_i | beta ~ PG(n_i, x_i' beta)` with
//! `beta | y, omega ~ N(m, V)`, `V = (X' Omega X + B^-1)^-1`,
//! `m = V (X' kappa + B^-1 b)`, `kappa_i = y_i - n_i / 2`.

use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use pg_core::real::log1p_exp;
use pg_core::{rng_stream, sample_pg};
use rand::Rng;

use crate::data::{GaussianPrior, GibbsConfig, PosteriorDraws, RegressionData};
use crate::error::ModelError;
use crate::linalg::{cholesky, sample_gaussian_precision, standard_normal_vector};

const MAX_EM_ITERS: usize = 10_000;

fn check_dims(data: &RegressionData, prior: &GaussianPrior) -> Result<(), ModelError> {
    if prior.dim() != data.n_coef() {
        return Err(ModelError::Dimension(format!(
            "prior dimension {} != design columns {}",
            prior.dim(),
            data.n_coef()
        )));
    }
    Ok(())
}

/// Exact posterior sampling by Polya-Gamma data augmentation.
pub fn fit_logit_gibbs(
    data: &RegressionData,
    prior: &GaussianPrior,
    cfg: &GibbsConfig,
) -> Result<PosteriorDraws, ModelError> {
    check_dims(data, prior)?;
    let n = data.n_obs();
    let p = data.n_coef();
    let (prior_prec, prior_prec_mean) = prior.precision_parts()?;
    let rhs = data.x.transpose() * data.kappa() + &prior_prec_mean;
    let rows: Vec<DVector<f64>> = (0..n).map(|i| data.x.row(i).transpose()).collect();

    let mut rng = rng_stream(cfg.seed);
    let mut beta = prior.mean().clone();
    let retained = cfg.retained();
    let mut draws = DMatrix::zeros(retained, p);
    let mut row = 0usize;
    let mut timer = None;

    for iter in 0..cfg.n_burn + cfg.n_samples {
        if iter == cfg.n_burn {
            timer = Some(Instant::now());
        }
        let psi = &data.x * &beta;
        let mut prec = prior_prec.clone();
        for i in 0..n {
            if data.trials[i] == 0 {
                continue;
            }
            let w = sample_pg(data.trials[i] as f64, psi[i], &mut rng)?;
            prec.ger(w, &rows[i], &rows[i], 1.0);
        }
        beta = sample_gaussian_precision(prec, &rhs, &mut rng, "logit conditional precision")?;

        if iter >= cfg.n_burn && (iter - cfg.n_burn + 1).is_multiple_of(cfg.thin) && row < retained
        {
            draws.row_mut(row).copy_from(&beta.transpose());
            row += 1;
        }
    }

    Ok(PosteriorDraws {
        names: (0..p).map(|j| format!("beta[{j}]")).collect(),
        draws,
        sampling_seconds: timer.map(|t| t.elapsed().as_secs_f64()).unwrap_or(0.0),
        acceptance_rate: None,
    })
}

/// Log posterior of the binomial logit model, up to a constant.
pub(crate) fn logit_log_posterior(
    data: &RegressionData,
    prior_prec: &DMatrix<f64>,
    prior_mean: &DVector<f64>,
    beta: &DVector<f64>,
) -> f64 {
    let psi = &data.x * beta;
    let mut ll = 0.0;
    for i in 0..data.n_obs() {
        ll += data.y[i] as f64 * psi[i] - data.trials[i] as f64 * log1p_exp(psi[i]);
    }
    let d = beta - prior_mean;
    ll - 0.5 * (prior_prec * &d).dot(&d)
}

/// Posterior mode by expectation-maximization over the latent
/// Polya-Gamma variables: the E-step sets `w_i = E[omega | psi_i]
/// = (n_i / 2 psi_i) tanh(psi_i / 2)` and the M-step solves the weighted
/// ridge system.  Returns the mode together with the log-posterior trace
/// (non-decreasing by construction).
pub fn fit_logit_em_trace(
    data: &RegressionData,
    prior: &GaussianPrior,
    tol: f64,
) -> Result<(DVector<f64>, Vec<f64>), ModelError> {
    if !(tol > 0.0) {
        return Err(ModelError::InvalidConfig(
            "tolerance must be positive".into(),
        ));
    }
    check_dims(data, prior)?;
    let n = data.n_obs();
    let (prior_prec, prior_prec_mean) = prior.precision_parts()?;
    let rhs = data.x.transpose() * data.kappa() + &prior_prec_mean;
    let rows: Vec<DVector<f64>> = (0..n).map(|i| data.x.row(i).transpose()).collect();

    let mut beta = prior.mean().clone();
    let mut trace = vec![logit_log_posterior(data, &prior_prec, prior.mean(), &beta)];
    for _ in 0..MAX_EM_ITERS {
        let psi = &data.x * &beta;
        let mut prec = prior_prec.clone();
        for i in 0..n {
            if data.trials[i] == 0 {
                continue;
            }
            let ni = data.trials[i] as f64;
            let w = if psi[i].abs() < 1e-10 {
                ni / 4.0
            } else {
                ni / (2.0 * psi[i]) * (psi[i] / 2.0).tanh()
            };
            prec.ger(w, &rows[i], &rows[i], 1.0);
        }
        let next = cholesky(prec, "EM weighted precision")?.solve(&rhs);
        trace.push(logit_log_posterior(data, &prior_prec, prior.mean(), &next));
        let delta = (&next - &beta).abs().max();
        beta = next;
        if delta < tol {
            return Ok((beta, trace));
        }
    }
    Err(ModelError::NonConvergence {
        iterations: MAX_EM_ITERS,
    })
}

/// Posterior mode (MAP estimate) of the binomial logit model.
pub fn fit_logit_em(
    data: &RegressionData,
    prior: &GaussianPrior,
    tol: f64,
) -> Result<DVector<f64>, ModelError> {
    Ok(fit_logit_em_trace(data, prior, tol)?.0)
}

/// Independence Metropolis with a Gaussian proposal centered at the
/// posterior mode, scaled by the inverse Hessian there.  Fails with
/// [`ModelError::HessianNotPd`] when the proposal cannot be formed.
pub fn fit_logit_metropolis(
    data: &RegressionData,
    prior: &GaussianPrior,
    cfg: &GibbsConfig,
) -> Result<PosteriorDraws, ModelError> {
    check_dims(data, prior)?;
    let n = data.n_obs();
    let p = data.n_coef();
    let (prior_prec, _) = prior.precision_parts()?;
    let mode = fit_logit_em(data, prior, 1e-10)?;

    // Hessian of the negative log posterior at the mode.
    let psi = &data.x * &mode;
    let mut hess = prior_prec.clone();
    for i in 0..n {
        if data.trials[i] == 0 {
            continue;
        }
        let prob = 1.0 / (1.0 + (-psi[i]).exp());
        let w = data.trials[i] as f64 * prob * (1.0 - prob);
        let xi = data.x.row(i).transpose();
        hess.ger(w, &xi, &xi, 1.0);
    }
    let chol = nalgebra::Cholesky::new(hess.clone()).ok_or(ModelError::HessianNotPd)?;
    let lt = chol.l().transpose();

    let log_q = |b: &DVector<f64>| {
        let d = b - &mode;
        -0.5 * (&hess * &d).dot(&d)
    };
    let log_p = |b: &DVector<f64>| logit_log_posterior(data, &prior_prec, prior.mean(), b);

    let mut rng = rng_stream(cfg.seed);
    let mut current = mode.clone();
    let mut cur_weight = log_p(&current) - log_q(&current);
    let retained = cfg.retained();
    let mut draws = DMatrix::zeros(retained, p);
    let mut row = 0usize;
    let mut accepts = 0u64;
    let mut post_iters = 0u64;
    let mut timer = None;

    for iter in 0..cfg.n_burn + cfg.n_samples {
        if iter == cfg.n_burn {
            timer = Some(Instant::now());
        }
        let z = standard_normal_vector(p, &mut rng);
        let step = lt
            .solve_upper_triangular(&z)
            .ok_or(ModelError::HessianNotPd)?;
        let proposal = &mode + step;
        let prop_weight = log_p(&proposal) - log_q(&proposal);
        let ln_alpha = prop_weight - cur_weight;
        let accept = ln_alpha >= 0.0 || rng.random::<f64>() < ln_alpha.exp();
        if accept {
            current = proposal;
            cur_weight = prop_weight;
        }
        if iter >= cfg.n_burn {
            post_iters += 1;
            if accept {
                accepts += 1;
            }
            if (iter - cfg.n_burn + 1).is_multiple_of(cfg.thin) && row < retained {
                draws.row_mut(row).copy_from(&current.transpose());
                row += 1;
            }
        }
    }

    Ok(PosteriorDraws {
        names: (0..p).map(|j| format!("beta[{j}]")).collect(),
        draws,
        sampling_seconds: timer.map(|t| t.elapsed().as_secs_f64()).unwrap_or(0.0),
        acceptance_rate: Some(accepts as f64 / post_iters.max(1) as f64),
    })
}
