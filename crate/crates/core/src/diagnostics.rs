//! MCMC efficiency metrics: effective sample size from an AR spectral
//! estimate, effective sampling rate, and posterior summaries.
//!
//! The AR order is chosen by AIC up to `max(1, 10 log10 M)`.  That rule
//! is the conventional default for AR spectral estimators, not the only
//! reasonable one; estimates from other packages can differ by a few
//! percent.

use crate::error::PgError;
use crate::real::Real;

/// Minimum chain length for which the spectral estimate is attempted.
const MIN_CHAIN_LEN: usize = 10;

/// ESS is clamped to at most this multiple of the chain length; genuinely
/// antithetic chains can exceed M, but runaway estimates indicate AR
/// instability.
const ESS_CLAMP_FACTOR: f64 = 1.2;

/// One parameter's post-burn-in trace.
#[derive(Debug, Clone)]
pub struct Chain<T> {
    values: Vec<T>,
}

impl<T: Real> Chain<T> {
    /// Validates length >= 10 and finiteness.
    pub fn new(values: Vec<T>) -> Result<Self, PgError> {
        if values.len() < MIN_CHAIN_LEN {
            return Err(PgError::ChainTooShort {
                min: MIN_CHAIN_LEN,
                got: values.len(),
            });
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(PgError::NonFiniteChain);
        }
        Ok(Self { values })
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }
}

/// Effective sample size of a chain.
///
/// The spectral density at zero is estimated from a Yule-Walker AR(p)
/// fit with the order chosen by AIC up to `max(1, 10 log10 M)`; the
/// result is `M * sample variance / spectrum(0)`, clamped to
/// `(0, 1.2 M]`.
pub fn ess<T: Real>(chain: &Chain<T>) -> Result<T, PgError> {
    let xs = chain.values();
    let m = xs.len();
    let mf = T::from_usize(m).expect("length");

    let mean = xs.iter().copied().sum::<T>() / mf;
    let demeaned: Vec<T> = xs.iter().map(|&x| x - mean).collect();

    let max_order = (10.0 * (m as f64).log10()).floor() as usize;
    let max_order = max_order.max(1).min(m - 2);

    // Biased autocovariances gamma_0 .. gamma_maxorder.
    let mut acov = vec![T::zero(); max_order + 1];
    for (lag, slot) in acov.iter_mut().enumerate() {
        let mut s = T::zero();
        for i in 0..m - lag {
            s += demeaned[i] * demeaned[i + lag];
        }
        *slot = s / mf;
    }
    let gamma0 = acov[0];
    if gamma0 <= T::zero() {
        return Err(PgError::ConstantChain);
    }

    // Levinson-Durbin over all orders; pick the AIC minimizer.
    let mut phi = vec![T::zero(); max_order + 1];
    let mut prev = vec![T::zero(); max_order + 1];
    let mut sigma2 = gamma0;
    let mut best_order = 0usize;
    let mut best_sigma2 = sigma2;
    let mut best_phi_sum = T::zero();
    let mut best_aic = mf * sigma2.ln();
    for p in 1..=max_order {
        let mut num = acov[p];
        for j in 1..p {
            num -= phi[j] * acov[p - j];
        }
        if sigma2 <= T::zero() {
            break;
        }
        let kappa = num / sigma2;
        prev[..p].copy_from_slice(&phi[..p]);
        phi[p] = kappa;
        for j in 1..p {
            phi[j] = prev[j] - kappa * prev[p - j];
        }
        sigma2 *= T::one() - kappa * kappa;
        if sigma2 <= T::zero() {
            // Perfectly predictable chain: superefficient, clamp below.
            best_sigma2 = T::zero();
            best_order = p;
            best_phi_sum = phi[1..=p].iter().copied().sum();
            break;
        }
        let aic = mf * sigma2.ln() + T::of(2.0) * T::from_usize(p).expect("order");
        if aic < best_aic {
            best_aic = aic;
            best_order = p;
            best_sigma2 = sigma2;
            best_phi_sum = phi[1..=p].iter().copied().sum();
        }
    }

    let clamp = T::of(ESS_CLAMP_FACTOR) * mf;
    let sample_var = gamma0 * mf / (mf - T::one());
    if best_order == 0 {
        let est = mf * sample_var / gamma0;
        return Ok(est.min(clamp));
    }
    let denom = T::one() - best_phi_sum;
    if best_sigma2 <= T::zero() || denom * denom <= T::zero() {
        return Ok(clamp);
    }
    let spectrum0 = best_sigma2 / (denom * denom);
    let est = mf * sample_var / spectrum0;
    if !est.is_finite() || est > clamp {
        Ok(clamp)
    } else {
        Ok(est)
    }
}

/// Effective sampling rate: ESS per second of sampling time.
pub fn esr<T: Real>(chain: &Chain<T>, sampling_seconds: T) -> Result<T, PgError> {
    if !(sampling_seconds > T::zero()) {
        return Err(PgError::NonPositiveSeconds(
            sampling_seconds.to_f64().unwrap_or(f64::NAN),
        ));
    }
    Ok(ess(chain)? / sampling_seconds)
}

/// Per-parameter posterior summary.
#[derive(Debug, Clone)]
pub struct ParamSummary<T> {
    pub name: String,
    pub mean: T,
    pub sd: T,
    /// (probability level, quantile value) pairs in the requested order.
    pub quantiles: Vec<(f64, T)>,
}

/// Means, standard deviations, and requested quantiles for each column.
pub fn summarize<T: Real>(
    names: &[String],
    columns: &[Vec<T>],
    probs: &[f64],
) -> Result<Vec<ParamSummary<T>>, PgError> {
    if columns.is_empty() || columns.iter().any(|c| c.is_empty()) {
        return Err(PgError::EmptyDraws);
    }
    for &p in probs {
        if !(p > 0.0 && p < 1.0) {
            return Err(PgError::QuantileOutOfRange(p));
        }
    }
    let mut out = Vec::with_capacity(columns.len());
    for (i, col) in columns.iter().enumerate() {
        let n = T::from_usize(col.len()).expect("length");
        let mean = col.iter().copied().sum::<T>() / n;
        let sd = if col.len() > 1 {
            (col.iter().map(|&x| (x - mean) * (x - mean)).sum::<T>() / (n - T::one())).sqrt()
        } else {
            T::zero()
        };
        let mut sorted = col.clone();
        sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite draws"));
        let quantiles = probs
            .iter()
            .map(|&p| (p, quantile_sorted(&sorted, p)))
            .collect();
        out.push(ParamSummary {
            name: names.get(i).cloned().unwrap_or_else(|| format!("p{i}")),
            mean,
            sd,
            quantiles,
        });
    }
    Ok(out)
}

/// Linear-interpolation quantile of a sorted slice.
fn quantile_sorted<T: Real>(sorted: &[T], p: f64) -> T {
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = p * (n - 1) as f64;
    let lo = h.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    let w = T::of(h - lo as f64);
    sorted[lo] + w * (sorted[hi] - sorted[lo])
}

/// Per-parameter ESS/ESR with min/median/max rollups.
#[derive(Debug, Clone)]
pub struct EfficiencyReport<T> {
    pub params: Vec<ParamEfficiency<T>>,
    pub ess_min: T,
    pub ess_median: T,
    pub ess_max: T,
    pub esr_min: T,
    pub esr_median: T,
    pub esr_max: T,
}

#[derive(Debug, Clone)]
pub struct ParamEfficiency<T> {
    pub name: String,
    pub ess: T,
    pub esr: T,
}

impl<T: Real> EfficiencyReport<T> {
    pub fn new(names: &[String], columns: &[Vec<T>], sampling_seconds: T) -> Result<Self, PgError> {
        if !(sampling_seconds > T::zero()) {
            return Err(PgError::NonPositiveSeconds(
                sampling_seconds.to_f64().unwrap_or(f64::NAN),
            ));
        }
        if columns.is_empty() {
            return Err(PgError::EmptyDraws);
        }
        let mut params = Vec::with_capacity(columns.len());
        for (i, col) in columns.iter().enumerate() {
            let chain = Chain::new(col.clone())?;
            let e = ess(&chain)?;
            params.push(ParamEfficiency {
                name: names.get(i).cloned().unwrap_or_else(|| format!("p{i}")),
                ess: e,
                esr: e / sampling_seconds,
            });
        }
        let ess_vals: Vec<T> = params.iter().map(|p| p.ess).collect();
        let esr_vals: Vec<T> = params.iter().map(|p| p.esr).collect();
        let (ess_min, ess_median, ess_max) = rollup(&ess_vals);
        let (esr_min, esr_median, esr_max) = rollup(&esr_vals);
        Ok(Self {
            params,
            ess_min,
            ess_median,
            ess_max,
            esr_min,
            esr_median,
            esr_max,
        })
    }
}

fn rollup<T: Real>(vals: &[T]) -> (T, T, T) {
    let mut sorted = vals.to_vec();
    sorted.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let n = sorted.len();
    let median = if n % 2 == 1 {
        sorted[n / 2]
    } else {
        (sorted[n / 2 - 1] + sorted[n / 2]) * T::of(0.5)
    };
    (sorted[0], median, sorted[n - 1])
}
