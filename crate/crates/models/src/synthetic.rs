//! Bundled deterministic problems used by the benchmark command and the
//! acceptance suite.

use nalgebra::{DMatrix, Matrix2, Vector2};
use pg_core::real::SampleReal;
use pg_core::rng_stream;

use crate::data::{GaussianPrior, RegressionData, TablesData};

/// Fixed binary-logit benchmark problem: 53 observations, an intercept
/// plus five standard-normal predictors, moderate true effects.
pub fn logit_benchmark() -> (RegressionData, GaussianPrior) {
    let mut rng = rng_stream(0x7061_6e64);
    let n = 53;
    let true_beta = [0.5, 0.75, -0.75, 0.5, -0.5, 0.25];
    let p = true_beta.len();
    let mut x = DMatrix::zeros(n, p);
    let mut y = Vec::with_capacity(n);
    for i in 0..n {
        x[(i, 0)] = 1.0;
        let mut psi = true_beta[0];
        for k in 1..p {
            let v = f64::rand_normal(&mut rng);
            x[(i, k)] = v;
            psi += true_beta[k] * v;
        }
        let prob = 1.0 / (1.0 + (-psi).exp());
        y.push(u64::from(f64::rand_uniform(&mut rng) < prob));
    }
    let data = RegressionData::new(x, y, vec![1; n]).expect("consistent synthetic data");
    let prior = GaussianPrior::isotropic(p, 100.0).expect("valid prior");
    (data, prior)
}

/// The eight-center topical-cream trial (treatment and control arms),
/// with the reference normal-Wishart hyperparameters d = 4 and
/// B = [[0.754, 0.857], [0.857, 1.480]].
pub fn topical_cream_trial() -> TablesData {
    let successes = vec![
        [11, 10],
        [16, 22],
        [14, 7],
        [2, 1],
        [6, 0],
        [1, 0],
        [1, 1],
        [4, 6],
    ];
    let trials = vec![
        [36, 37],
        [20, 32],
        [19, 19],
        [16, 17],
        [17, 12],
        [11, 10],
        [5, 9],
        [6, 7],
    ];
    TablesData::new(
        successes,
        trials,
        4.0,
        Matrix2::new(0.754, 0.857, 0.857, 1.480),
        Vector2::zeros(),
        0.01,
    )
    .expect("reference data is consistent")
}
