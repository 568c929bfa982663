//! Small Gaussian linear-algebra kernel: precision-form multivariate
//! normal draws through Cholesky factors, SPD inversion, and a Bartlett
//! Wishart sampler.  Conditional covariances are never formed by
//! explicit inversion.

use nalgebra::{Cholesky, DMatrix, DVector, Dyn};
use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};

use crate::error::ModelError;

/// Draw from N(P^-1 r, P^-1) given the precision P and the linear term r.
pub(crate) fn sample_gaussian_precision<R: Rng + ?Sized>(
    precision: DMatrix<f64>,
    rhs: &DVector<f64>,
    rng: &mut R,
    context: &'static str,
) -> Result<DVector<f64>, ModelError> {
    let chol = cholesky(precision, context)?;
    let mean = chol.solve(rhs);
    let z = standard_normal_vector(mean.len(), rng);
    // Solve L^T u = z so that Cov(u) = (L L^T)^-1 = P^-1.
    let u = chol
        .l()
        .transpose()
        .solve_upper_triangular(&z)
        .ok_or(ModelError::NonPositiveDefinite(context))?;
    Ok(mean + u)
}

/// Inverse of a symmetric positive-definite matrix via its Cholesky
/// factor.
pub(crate) fn spd_inverse(
    m: &DMatrix<f64>,
    context: &'static str,
) -> Result<DMatrix<f64>, ModelError> {
    Ok(cholesky(m.clone(), context)?.inverse())
}

pub(crate) fn cholesky(
    m: DMatrix<f64>,
    context: &'static str,
) -> Result<Cholesky<f64, Dyn>, ModelError> {
    Cholesky::new(m).ok_or(ModelError::NonPositiveDefinite(context))
}

/// Wishart(dof, scale) draw by the Bartlett decomposition; `scale` is
/// the Wishart scale matrix (so the mean is dof * scale).
pub(crate) fn sample_wishart<R: Rng + ?Sized>(
    dof: f64,
    scale: &DMatrix<f64>,
    rng: &mut R,
    context: &'static str,
) -> Result<DMatrix<f64>, ModelError> {
    let p = scale.nrows();
    if dof <= (p - 1) as f64 {
        return Err(ModelError::InsufficientDof {
            needed: (p - 1) as f64,
            got: dof,
        });
    }
    let l = cholesky(scale.clone(), context)?;
    let mut a = DMatrix::zeros(p, p);
    for i in 0..p {
        let chi2 = Gamma::new((dof - i as f64) / 2.0, 2.0).expect("valid chi-square dof");
        a[(i, i)] = chi2.sample(rng).sqrt();
        for j in 0..i {
            a[(i, j)] = StandardNormal.sample(rng);
        }
    }
    let la = l.l() * a;
    Ok(&la * la.transpose())
}

pub(crate) fn standard_normal_vector<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DVector<f64> {
    DVector::from_fn(n, |_, _| StandardNormal.sample(rng))
}
