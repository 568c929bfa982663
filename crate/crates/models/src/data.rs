//! Input containers shared by the model fitters, plus the draw matrix
//! they all return.

use nalgebra::{DMatrix, DVector, Matrix2, Vector2};
use pg_core::diagnostics::{summarize, EfficiencyReport, ParamSummary};
use pg_core::PgError;

use crate::error::ModelError;
use crate::linalg::spd_inverse;

/// Chain-length settings for a Gibbs run.
#[derive(Debug, Clone, Copy)]
pub struct GibbsConfig {
    pub n_samples: usize,
    pub n_burn: usize,
    pub thin: usize,
    pub seed: u64,
}

impl GibbsConfig {
    pub fn new(
        n_samples: usize,
        n_burn: usize,
        thin: usize,
        seed: u64,
    ) -> Result<Self, ModelError> {
        if n_samples == 0 {
            return Err(ModelError::InvalidConfig("n_samples must be >= 1".into()));
        }
        if thin == 0 {
            return Err(ModelError::InvalidConfig("thin must be >= 1".into()));
        }
        if n_samples / thin == 0 {
            return Err(ModelError::InvalidConfig(
                "thinning retains no draws: need n_samples >= thin".into(),
            ));
        }
        Ok(Self {
            n_samples,
            n_burn,
            thin,
            seed,
        })
    }

    /// Number of rows the fitters retain: `n_samples / thin`.
    pub fn retained(&self) -> usize {
        self.n_samples / self.thin
    }
}

/// Gaussian prior N(b, B) with symmetric positive-definite covariance.
#[derive(Debug, Clone)]
pub struct GaussianPrior {
    mean: DVector<f64>,
    covariance: DMatrix<f64>,
}

impl GaussianPrior {
    pub fn new(mean: DVector<f64>, covariance: DMatrix<f64>) -> Result<Self, ModelError> {
        let p = mean.len();
        if covariance.nrows() != p || covariance.ncols() != p {
            return Err(ModelError::Dimension(format!(
                "prior covariance is {}x{}, mean has length {p}",
                covariance.nrows(),
                covariance.ncols()
            )));
        }
        let asym = (&covariance - covariance.transpose()).abs().max();
        if asym > 1e-10 * covariance.abs().max().max(1.0) {
            return Err(ModelError::InvalidData(
                "prior covariance not symmetric".into(),
            ));
        }
        if nalgebra::Cholesky::new(covariance.clone()).is_none() {
            return Err(ModelError::NonPositiveDefinite("prior covariance"));
        }
        Ok(Self { mean, covariance })
    }

    /// N(0, variance * I) in `dim` dimensions.
    pub fn isotropic(dim: usize, variance: f64) -> Result<Self, ModelError> {
        if !(variance > 0.0) {
            return Err(ModelError::InvalidData(
                "prior variance must be positive".into(),
            ));
        }
        Self::new(DVector::zeros(dim), DMatrix::identity(dim, dim) * variance)
    }

    pub fn dim(&self) -> usize {
        self.mean.len()
    }

    pub fn mean(&self) -> &DVector<f64> {
        &self.mean
    }

    pub fn covariance(&self) -> &DMatrix<f64> {
        &self.covariance
    }

    /// (B^-1, B^-1 b), the pieces every conditional update needs.
    pub(crate) fn precision_parts(&self) -> Result<(DMatrix<f64>, DVector<f64>), ModelError> {
        let prec = spd_inverse(&self.covariance, "prior covariance")?;
        let scaled_mean = &prec * &self.mean;
        Ok((prec, scaled_mean))
    }
}

/// Binomial regression data: design matrix, success counts, trial counts.
#[derive(Debug, Clone)]
pub struct RegressionData {
    pub x: DMatrix<f64>,
    pub y: Vec<u64>,
    pub trials: Vec<u64>,
}

impl RegressionData {
    pub fn new(x: DMatrix<f64>, y: Vec<u64>, trials: Vec<u64>) -> Result<Self, ModelError> {
        if y.len() != x.nrows() || trials.len() != x.nrows() {
            return Err(ModelError::Dimension(format!(
                "design has {} rows, y has {}, trials has {}",
                x.nrows(),
                y.len(),
                trials.len()
            )));
        }
        if y.iter().zip(&trials).any(|(&yi, &ni)| yi > ni) {
            return Err(ModelError::InvalidData("y_i exceeds n_i".into()));
        }
        Ok(Self { x, y, trials })
    }

    pub fn n_obs(&self) -> usize {
        self.x.nrows()
    }

    pub fn n_coef(&self) -> usize {
        self.x.ncols()
    }

    /// Working response kappa_i = y_i - n_i / 2.
    pub(crate) fn kappa(&self) -> DVector<f64> {
        DVector::from_iterator(
            self.y.len(),
            self.y
                .iter()
                .zip(&self.trials)
                .map(|(&y, &n)| y as f64 - n as f64 / 2.0),
        )
    }
}

/// Grouped binomial data for the random-intercept mixed model.
#[derive(Debug, Clone)]
pub struct MixedData {
    pub group: Vec<usize>,
    pub n_groups: usize,
    pub x: DMatrix<f64>,
    pub y: Vec<u64>,
    pub trials: Vec<u64>,
}

impl MixedData {
    pub fn new(
        group: Vec<usize>,
        n_groups: usize,
        x: DMatrix<f64>,
        y: Vec<u64>,
        trials: Vec<u64>,
    ) -> Result<Self, ModelError> {
        let n = x.nrows();
        if group.len() != n || y.len() != n || trials.len() != n {
            return Err(ModelError::Dimension("row counts disagree".into()));
        }
        if group.iter().any(|&g| g >= n_groups) {
            return Err(ModelError::InvalidData("group index out of range".into()));
        }
        if n_groups == 0 || n == 0 {
            return Err(ModelError::InvalidData(
                "need at least one group and one row".into(),
            ));
        }
        if y.iter().zip(&trials).any(|(&yi, &ni)| yi > ni) {
            return Err(ModelError::InvalidData("y_i exceeds n_i".into()));
        }
        Ok(Self {
            group,
            n_groups,
            x,
            y,
            trials,
        })
    }
}

/// Count data for negative-binomial regression with integer dispersion.
#[derive(Debug, Clone)]
pub struct NegBinData {
    pub x: DMatrix<f64>,
    pub y: Vec<u64>,
    /// Initial over-dispersion state d >= 1.
    pub dispersion_init: u64,
    /// When false the dispersion stays fixed at `dispersion_init`.
    pub sample_dispersion: bool,
}

impl NegBinData {
    pub fn new(
        x: DMatrix<f64>,
        y: Vec<u64>,
        dispersion_init: u64,
        sample_dispersion: bool,
    ) -> Result<Self, ModelError> {
        if y.len() != x.nrows() {
            return Err(ModelError::Dimension("y length != design rows".into()));
        }
        if dispersion_init == 0 {
            return Err(ModelError::InvalidData("dispersion must be >= 1".into()));
        }
        Ok(Self {
            x,
            y,
            dispersion_init,
            sample_dispersion,
        })
    }
}

/// Multinomial counts: N x J category counts with the last category as
/// the identification reference (its coefficients are pinned at zero).
#[derive(Debug, Clone)]
pub struct MultinomialData {
    pub x: DMatrix<f64>,
    pub counts: Vec<Vec<u64>>,
}

impl MultinomialData {
    pub fn new(x: DMatrix<f64>, counts: Vec<Vec<u64>>) -> Result<Self, ModelError> {
        if counts.len() != x.nrows() {
            return Err(ModelError::Dimension("counts rows != design rows".into()));
        }
        let j = counts.first().map(|r| r.len()).unwrap_or(0);
        if j < 2 {
            return Err(ModelError::InvalidData(
                "need at least two categories".into(),
            ));
        }
        if counts.iter().any(|r| r.len() != j) {
            return Err(ModelError::Dimension("ragged count rows".into()));
        }
        if counts.iter().any(|r| r.iter().sum::<u64>() == 0) {
            return Err(ModelError::InvalidData(
                "every row needs a positive total".into(),
            ));
        }
        Ok(Self { x, counts })
    }

    pub fn n_categories(&self) -> usize {
        self.counts[0].len()
    }

    pub fn row_total(&self, i: usize) -> u64 {
        self.counts[i].iter().sum()
    }
}

/// Two-arm success/trial counts per center, plus the normal-Wishart
/// hyperparameters for the bivariate log-odds prior.
#[derive(Debug, Clone)]
pub struct TablesData {
    pub successes: Vec<[u64; 2]>,
    pub trials: Vec<[u64; 2]>,
    /// Inverse-Wishart degrees of freedom d for Sigma.
    pub wishart_dof: f64,
    /// Inverse-Wishart scale matrix B.
    pub wishart_scale: Matrix2<f64>,
    /// Prior mean of mu.
    pub mu_prior_mean: Vector2<f64>,
    /// Prior precision scale lambda for mu | Sigma ~ N(m0, Sigma/lambda).
    pub mu_prior_scale: f64,
}

impl TablesData {
    pub fn new(
        successes: Vec<[u64; 2]>,
        trials: Vec<[u64; 2]>,
        wishart_dof: f64,
        wishart_scale: Matrix2<f64>,
        mu_prior_mean: Vector2<f64>,
        mu_prior_scale: f64,
    ) -> Result<Self, ModelError> {
        if successes.len() != trials.len() || successes.is_empty() {
            return Err(ModelError::Dimension(
                "need matching, nonempty center lists".into(),
            ));
        }
        for (s, t) in successes.iter().zip(&trials) {
            if s[0] > t[0] || s[1] > t[1] {
                return Err(ModelError::InvalidData("successes exceed trials".into()));
            }
        }
        if !(wishart_dof > 1.0) {
            return Err(ModelError::InvalidData(
                "inverse-Wishart dof must exceed dimension - 1 = 1".into(),
            ));
        }
        if (wishart_scale - wishart_scale.transpose()).abs().max() > 1e-12 {
            return Err(ModelError::InvalidData(
                "Wishart scale not symmetric".into(),
            ));
        }
        if !(mu_prior_scale > 0.0) {
            return Err(ModelError::InvalidData(
                "mu prior scale must be positive".into(),
            ));
        }
        Ok(Self {
            successes,
            trials,
            wishart_dof,
            wishart_scale,
            mu_prior_mean,
            mu_prior_scale,
        })
    }

    pub fn n_centers(&self) -> usize {
        self.successes.len()
    }
}

/// Spatial count data for the Gaussian-process negative-binomial model.
#[derive(Debug, Clone)]
pub struct GpData {
    /// N x D coordinates.
    pub locations: DMatrix<f64>,
    pub y: Vec<u64>,
    pub length_scale: f64,
    pub nugget: f64,
    /// Fixed negative-binomial size parameter.
    pub nb_size: u64,
}

impl GpData {
    pub fn new(
        locations: DMatrix<f64>,
        y: Vec<u64>,
        length_scale: f64,
        nugget: f64,
        nb_size: u64,
    ) -> Result<Self, ModelError> {
        if y.len() != locations.nrows() {
            return Err(ModelError::Dimension("y length != location rows".into()));
        }
        if !(length_scale > 0.0) {
            return Err(ModelError::InvalidData(
                "length scale must be positive".into(),
            ));
        }
        if !(nugget >= 0.0) {
            return Err(ModelError::InvalidData("nugget must be nonnegative".into()));
        }
        if nb_size == 0 {
            return Err(ModelError::InvalidData("nb size must be >= 1".into()));
        }
        Ok(Self {
            locations,
            y,
            length_scale,
            nugget,
            nb_size,
        })
    }
}

/// Labeled matrix of post-burn-in draws plus timing metadata.
#[derive(Debug, Clone)]
pub struct PosteriorDraws {
    pub names: Vec<String>,
    /// One retained draw per row.
    pub draws: DMatrix<f64>,
    /// Wall time of the post-burn-in sampling loop only.
    pub sampling_seconds: f64,
    /// Metropolis acceptance rate, when the fitter has one.
    pub acceptance_rate: Option<f64>,
}

impl PosteriorDraws {
    pub fn n_draws(&self) -> usize {
        self.draws.nrows()
    }

    pub fn n_params(&self) -> usize {
        self.draws.ncols()
    }

    pub fn column(&self, j: usize) -> Vec<f64> {
        self.draws.column(j).iter().copied().collect()
    }

    pub fn column_named(&self, name: &str) -> Option<Vec<f64>> {
        let j = self.names.iter().position(|n| n == name)?;
        Some(self.column(j))
    }

    pub fn columns(&self) -> Vec<Vec<f64>> {
        (0..self.n_params()).map(|j| self.column(j)).collect()
    }

    pub fn mean(&self, j: usize) -> f64 {
        self.draws.column(j).mean()
    }

    pub fn summary(&self, probs: &[f64]) -> Result<Vec<ParamSummary<f64>>, PgError> {
        summarize(&self.names, &self.columns(), probs)
    }

    pub fn efficiency(&self) -> Result<EfficiencyReport<f64>, PgError> {
        EfficiencyReport::new(
            &self.names,
            &self.columns(),
            self.sampling_seconds.max(1e-9),
        )
    }
}
