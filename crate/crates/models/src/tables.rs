//! Hierarchical 2 x 2 x N tables: per-center bivariate log-odds with a
//! normal-Wishart hyperprior.
//!
//! Each center i has two binomial arms with log-odds psi_i = (psi_i1,
//! psi_i2) ~ N(mu, Sigma).  The sweep draws all omega_ij ~ PG(n_ij,
//! psi_ij), then each psi_i from its bivariate Gaussian conditional
//! `V_i^-1 = Omega_i + Sigma^-1`, `m_i = V_i (kappa_i + Sigma^-1 mu)`,
//! and finally (mu, Sigma^-1) from the conjugate normal-Wishart update.

use std::time::Instant;

use nalgebra::{Cholesky, DMatrix, Matrix2, Vector2};
use pg_core::{rng_stream, sample_pg};
use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::data::{GibbsConfig, PosteriorDraws, TablesData};
use crate::error::ModelError;
use crate::linalg::sample_wishart;

/// Map prior moments (expected arm variances and correlation) to the
/// inverse-Wishart scale matrix:
///
/// ```text
/// B = (d - 3) [ v2 + v1 + 2 r s   v2 + r s ]      s = sqrt(v1 v2)
///             [ v2 + r s          v2       ]
/// ```
pub fn hyper_from_moments(
    e_var1: f64,
    e_var2: f64,
    e_rho: f64,
    d: f64,
) -> Result<Matrix2<f64>, ModelError> {
    if !(e_var1 > 0.0 && e_var2 > 0.0) {
        return Err(ModelError::InvalidData(
            "expected variances must be positive".into(),
        ));
    }
    if !(e_rho.abs() < 1.0) {
        return Err(ModelError::InvalidData(
            "expected correlation must lie in (-1, 1)".into(),
        ));
    }
    if !(d > 3.0) {
        return Err(ModelError::InvalidData(
            "moment mapping needs d > 3 for the inverse-Wishart mean to exist".into(),
        ));
    }
    let s = e_rho * (e_var1 * e_var2).sqrt();
    let b11 = e_var2 + e_var1 + 2.0 * s;
    let b12 = e_var2 + s;
    Ok((d - 3.0) * Matrix2::new(b11, b12, b12, e_var2))
}

fn draw_bivariate_precision<R: Rng + ?Sized>(
    precision: Matrix2<f64>,
    rhs: Vector2<f64>,
    rng: &mut R,
) -> Result<Vector2<f64>, ModelError> {
    let chol = Cholesky::new(precision).ok_or(ModelError::NonPositiveDefinite(
        "center conditional precision",
    ))?;
    let mean = chol.solve(&rhs);
    let z = Vector2::new(StandardNormal.sample(rng), StandardNormal.sample(rng));
    let u =
        chol.l()
            .transpose()
            .solve_upper_triangular(&z)
            .ok_or(ModelError::NonPositiveDefinite(
                "center conditional precision",
            ))?;
    Ok(mean + u)
}

pub fn fit_tables_gibbs(
    data: &TablesData,
    cfg: &GibbsConfig,
) -> Result<PosteriorDraws, ModelError> {
    let n_c = data.n_centers();
    if data.wishart_dof + (n_c as f64) <= 2.0 {
        return Err(ModelError::InsufficientDof {
            needed: 2.0,
            got: data.wishart_dof + n_c as f64,
        });
    }

    let mut rng = rng_stream(cfg.seed);
    let mut psi: Vec<Vector2<f64>> = vec![Vector2::zeros(); n_c];
    let mut sigma_inv = Matrix2::identity();
    let mut mu = Vector2::zeros();

    let retained = cfg.retained();
    // Columns: psi1[i], psi2[i], lor[i] per center, then mu and Sigma.
    let out_cols = 3 * n_c + 5;
    let mut draws = DMatrix::zeros(retained, out_cols);
    let mut row = 0usize;
    let mut timer = None;

    for iter in 0..cfg.n_burn + cfg.n_samples {
        if iter == cfg.n_burn {
            timer = Some(Instant::now());
        }

        // Per-center bivariate block.
        for (i, psi_i) in psi.iter_mut().enumerate() {
            let mut omega = Matrix2::zeros();
            for arm in 0..2 {
                let trials = data.trials[i][arm];
                if trials == 0 {
                    continue;
                }
                omega[(arm, arm)] = sample_pg(trials as f64, psi_i[arm], &mut rng)?;
            }
            let kappa = Vector2::new(
                data.successes[i][0] as f64 - data.trials[i][0] as f64 / 2.0,
                data.successes[i][1] as f64 - data.trials[i][1] as f64 / 2.0,
            );
            let precision = omega + sigma_inv;
            let rhs = kappa + sigma_inv * mu;
            *psi_i = draw_bivariate_precision(precision, rhs, &mut rng)?;
        }

        // Conjugate normal-Wishart update for (mu, Sigma^-1).
        let nf = n_c as f64;
        let mut mean = Vector2::zeros();
        for v in &psi {
            mean += v;
        }
        mean /= nf;
        let mut scatter = Matrix2::zeros();
        for v in &psi {
            let d = v - mean;
            scatter += d * d.transpose();
        }
        let lambda0 = data.mu_prior_scale;
        let lambda_n = lambda0 + nf;
        let dev = mean - data.mu_prior_mean;
        let b_n = data.wishart_scale + scatter + (lambda0 * nf / lambda_n) * dev * dev.transpose();
        let d_n = data.wishart_dof + nf;

        // Sigma^-1 ~ Wishart(d_n, B_n^-1).
        let b_n_dyn = DMatrix::from_fn(2, 2, |r, c| b_n[(r, c)]);
        let b_n_inv = Cholesky::new(b_n_dyn)
            .ok_or(ModelError::NonPositiveDefinite("posterior Wishart scale"))?
            .inverse();
        let w = sample_wishart(d_n, &b_n_inv, &mut rng, "posterior Wishart scale")?;
        sigma_inv = Matrix2::new(w[(0, 0)], w[(0, 1)], w[(1, 0)], w[(1, 1)]);

        // mu | Sigma ~ N(m_n, Sigma / lambda_n).
        let m_n = (lambda0 * data.mu_prior_mean + nf * mean) / lambda_n;
        let sigma = Cholesky::new(sigma_inv)
            .ok_or(ModelError::NonPositiveDefinite("Sigma inverse"))?
            .inverse();
        let chol_mu = Cholesky::new(sigma / lambda_n)
            .ok_or(ModelError::NonPositiveDefinite("mu conditional covariance"))?;
        let z = Vector2::new(
            StandardNormal.sample(&mut rng),
            StandardNormal.sample(&mut rng),
        );
        mu = m_n + chol_mu.l() * z;

        if iter >= cfg.n_burn && (iter - cfg.n_burn + 1).is_multiple_of(cfg.thin) && row < retained
        {
            for i in 0..n_c {
                draws[(row, 3 * i)] = psi[i][0];
                draws[(row, 3 * i + 1)] = psi[i][1];
                draws[(row, 3 * i + 2)] = psi[i][0] - psi[i][1];
            }
            draws[(row, 3 * n_c)] = mu[0];
            draws[(row, 3 * n_c + 1)] = mu[1];
            draws[(row, 3 * n_c + 2)] = sigma[(0, 0)];
            draws[(row, 3 * n_c + 3)] = sigma[(0, 1)];
            draws[(row, 3 * n_c + 4)] = sigma[(1, 1)];
            row += 1;
        }
    }

    let mut names = Vec::with_capacity(out_cols);
    for i in 0..n_c {
        names.push(format!("psi1[{i}]"));
        names.push(format!("psi2[{i}]"));
        names.push(format!("lor[{i}]"));
    }
    names.extend(
        ["mu[1]", "mu[2]", "sigma[1,1]", "sigma[1,2]", "sigma[2,2]"]
            .iter()
            .map(|s| s.to_string()),
    );

    Ok(PosteriorDraws {
        names,
        draws,
        sampling_seconds: timer.map(|t| t.elapsed().as_secs_f64()).unwrap_or(0.0),
        acceptance_rate: None,
    })
}
