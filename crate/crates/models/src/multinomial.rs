//! Multinomial logistic regression by per-category Polya-Gamma updates.
//!
//! With the last category as the zero-pinned reference, each sweep
//! cycles j = 0..J-2 and conditions on the other categories through
//! `eta_ij = x_i' beta_j - C_ij`, `C_ij = log sum_{k != j} exp(x_i' beta_k)`:
//!
//! ```text
//! omega_ij ~ PG(n_i, eta_ij)
//! beta_j | Omega_j ~ N(m_j, V_j),  V_j^-1 = X' Omega_j X + V0^-1,
//! m_j = V_j (X' (kappa_j + Omega_j c_j) + V0^-1 m0)
//! ```
//!
//! C is recomputed from the current state with log-sum-exp each visit.

use std::time::Instant;

use nalgebra::{DMatrix, DVector};
use pg_core::{rng_stream, sample_pg};

use crate::data::{GaussianPrior, GibbsConfig, MultinomialData, PosteriorDraws};
use crate::error::ModelError;
use crate::linalg::sample_gaussian_precision;

pub fn fit_multinomial_gibbs(
    data: &MultinomialData,
    priors: &[GaussianPrior],
    cfg: &GibbsConfig,
) -> Result<PosteriorDraws, ModelError> {
    let n = data.x.nrows();
    let p = data.x.ncols();
    let j_cats = data.n_categories();
    let active = j_cats - 1;
    if priors.len() != active {
        return Err(ModelError::Dimension(format!(
            "need {active} priors (one per non-reference category), got {}",
            priors.len()
        )));
    }
    if priors.iter().any(|pr| pr.dim() != p) {
        return Err(ModelError::Dimension(
            "prior dimension != design columns".into(),
        ));
    }
    let prior_parts: Vec<_> = priors
        .iter()
        .map(|pr| pr.precision_parts())
        .collect::<Result<_, _>>()?;
    let rows: Vec<DVector<f64>> = (0..n).map(|i| data.x.row(i).transpose()).collect();
    let totals: Vec<f64> = (0..n).map(|i| data.row_total(i) as f64).collect();

    let mut rng = rng_stream(cfg.seed);
    let mut betas: Vec<DVector<f64>> = (0..active).map(|_| DVector::zeros(p)).collect();
    // Linear predictors per category, kept in sync with betas; the
    // reference column stays zero.
    let mut linpred: Vec<DVector<f64>> = (0..j_cats).map(|_| DVector::zeros(n)).collect();

    let retained = cfg.retained();
    let mut draws = DMatrix::zeros(retained, active * p);
    let mut row = 0usize;
    let mut timer = None;

    for iter in 0..cfg.n_burn + cfg.n_samples {
        if iter == cfg.n_burn {
            timer = Some(Instant::now());
        }
        for j in 0..active {
            let (prior_prec, prior_prec_mean) = &prior_parts[j];
            let mut prec = prior_prec.clone();
            let mut rhs = prior_prec_mean.clone();
            for i in 0..n {
                // C_ij = logsumexp over the other categories.
                let mut max = f64::NEG_INFINITY;
                for (k, lp) in linpred.iter().enumerate() {
                    if k != j && lp[i] > max {
                        max = lp[i];
                    }
                }
                let sum: f64 = linpred
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| *k != j)
                    .map(|(_, lp)| (lp[i] - max).exp())
                    .sum();
                let c_ij = max + sum.ln();
                let eta = linpred[j][i] - c_ij;
                let w = sample_pg(totals[i], eta, &mut rng)?;
                let kappa = data.counts[i][j] as f64 - totals[i] / 2.0;
                prec.ger(w, &rows[i], &rows[i], 1.0);
                rhs.axpy(kappa + w * c_ij, &rows[i], 1.0);
            }
            let beta = sample_gaussian_precision(
                prec,
                &rhs,
                &mut rng,
                "multinomial conditional precision",
            )?;
            linpred[j] = &data.x * &beta;
            betas[j] = beta;
        }

        if iter >= cfg.n_burn && (iter - cfg.n_burn + 1).is_multiple_of(cfg.thin) && row < retained
        {
            for j in 0..active {
                for a in 0..p {
                    draws[(row, j * p + a)] = betas[j][a];
                }
            }
            row += 1;
        }
    }

    let mut names = Vec::with_capacity(active * p);
    for j in 0..active {
        for a in 0..p {
            names.push(format!("beta[{j}][{a}]"));
        }
    }

    Ok(PosteriorDraws {
        names,
        draws,
        sampling_seconds: timer.map(|t| t.elapsed().as_secs_f64()).unwrap_or(0.0),
        acceptance_rate: None,
    })
}
