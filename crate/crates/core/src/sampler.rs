//! Exact and reference Polya-Gamma random-variate generation.
//!
//! `sample_pg1` draws PG(1, z) exactly by rejection from the two-kernel
//! envelope with alternating partial-sum accept tests; `sample_pg`
//! extends to PG(b, z) by convolution for integer b plus a truncated
//! sum-of-gammas tail for the fractional remainder; `sample_pg_naive`
//! is the truncated sum-of-gammas reference used as a distributional
//! oracle.

use rand::Rng;

use crate::error::PgError;
use crate::real::SampleReal;
use crate::series::{optimal_truncation_point, ProposalMixture, TiltedJacobiSeries};
use crate::tig::{sample_tig_large_mu, sample_tig_small_mu};

/// Outer rejection cap.  The acceptance probability is at least 0.99919,
/// so reaching this indicates a code defect, not bad luck.
const MAX_REJECTIONS: usize = 10_000;

/// Terms used for the fractional-shape sum-of-gammas remainder.
const FRACTIONAL_TAIL_TERMS: usize = 200;

/// Seeded, reproducible random source used throughout the crate.
pub type RngStream = rand_chacha::ChaCha8Rng;

/// Construct an [`RngStream`] from a seed.
pub fn rng_stream(seed: u64) -> RngStream {
    use rand::SeedableRng;
    RngStream::seed_from_u64(seed)
}

/// Instrumentation for the PG(1, z) rejection sampler: proposal and
/// acceptance counts plus a histogram of L, the number of partial sums
/// inspected per proposal decision.
#[derive(Debug, Clone, Default)]
pub struct SamplerStats {
    proposals: u64,
    acceptances: u64,
    partial_sum_histogram: Vec<u64>,
}

impl SamplerStats {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn proposals(&self) -> u64 {
        self.proposals
    }

    pub fn acceptances(&self) -> u64 {
        self.acceptances
    }

    /// Fraction of proposals accepted.
    pub fn acceptance_fraction(&self) -> f64 {
        if self.proposals == 0 {
            f64::NAN
        } else {
            self.acceptances as f64 / self.proposals as f64
        }
    }

    /// Histogram over L: `histogram()[l]` counts decisions made upon the
    /// l-th partial sum (index 0 is unused).
    pub fn partial_sum_histogram(&self) -> &[u64] {
        &self.partial_sum_histogram
    }

    /// Fraction of proposal decisions that needed more than `n` partial
    /// sums.
    pub fn tail_fraction(&self, n: usize) -> f64 {
        if self.proposals == 0 {
            return f64::NAN;
        }
        let beyond: u64 = self
            .partial_sum_histogram
            .iter()
            .enumerate()
            .filter(|(l, _)| *l > n)
            .map(|(_, c)| *c)
            .sum();
        beyond as f64 / self.proposals as f64
    }

    fn record(&mut self, l: usize, accepted: bool) {
        self.proposals += 1;
        if accepted {
            self.acceptances += 1;
        }
        if self.partial_sum_histogram.len() <= l {
            self.partial_sum_histogram.resize(l + 1, 0);
        }
        self.partial_sum_histogram[l] += 1;
    }
}

/// One exact draw from PG(1, z).
pub fn sample_pg1<T, R>(z: T, rng: &mut R) -> T
where
    T: SampleReal,
    R: Rng + ?Sized,
{
    // PG(1, z) = J*(1, z/2) / 4.
    sample_jstar_impl(z.abs() * T::of(0.5), rng, None) * T::of(0.25)
}

/// One exact draw from PG(1, z), recording proposal statistics.
pub fn sample_pg1_recorded<T, R>(z: T, rng: &mut R, stats: &mut SamplerStats) -> T
where
    T: SampleReal,
    R: Rng + ?Sized,
{
    sample_jstar_impl(z.abs() * T::of(0.5), rng, Some(stats)) * T::of(0.25)
}

/// One exact draw from the tilted Jacobi distribution J*(1, z), the
/// envelope-level target; PG(1, c) is J*(1, c/2) / 4.
pub fn sample_jstar<T, R>(z: T, rng: &mut R) -> T
where
    T: SampleReal,
    R: Rng + ?Sized,
{
    sample_jstar_impl(z.abs(), rng, None)
}

/// One exact draw from J*(1, z), recording proposal statistics.
pub fn sample_jstar_recorded<T, R>(z: T, rng: &mut R, stats: &mut SamplerStats) -> T
where
    T: SampleReal,
    R: Rng + ?Sized,
{
    sample_jstar_impl(z.abs(), rng, Some(stats))
}

fn sample_jstar_impl<T, R>(tilt: T, rng: &mut R, mut stats: Option<&mut SamplerStats>) -> T
where
    T: SampleReal,
    R: Rng + ?Sized,
{
    let t = optimal_truncation_point::<T>();
    let series = TiltedJacobiSeries::new(tilt);
    let mixture = ProposalMixture::new(tilt, t);
    let exp_fraction = mixture.exponential_fraction();
    let rate = mixture.rate();

    for _ in 0..MAX_REJECTIONS {
        let u = T::rand_uniform(rng);
        let x = if u < exp_fraction {
            t + T::rand_exp1(rng) / rate
        } else if tilt == T::zero() || tilt.recip() > t {
            sample_tig_large_mu(tilt, t, rng)
        } else {
            sample_tig_small_mu(tilt, t, rng)
        };

        // Accept test against the alternating partial sums.  The tilt
        // factor is common to every coefficient at fixed x, so the
        // untilted series decides identically.
        let s0 = series.coeff_untilted(0, x);
        if s0 == T::zero() {
            // x is far enough into the left tail that the envelope and
            // density coincide to machine precision.
            if let Some(st) = stats.as_deref_mut() {
                st.record(1, true);
            }
            return x;
        }
        let v = T::rand_uniform(rng);
        let y = v * s0;
        let mut s = s0;
        let mut n = 0usize;
        let decision = loop {
            n += 1;
            let a = series.coeff_untilted(n, x);
            if n % 2 == 1 {
                s -= a;
                if y < s {
                    break Some(x);
                }
            } else {
                s += a;
                if y > s {
                    break None;
                }
            }
            if a == T::zero() {
                // Series exhausted at working precision: s is the density.
                break if y < s { Some(x) } else { None };
            }
            assert!(
                n < 300,
                "partial-sum loop failed to terminate; internal defect"
            );
        };
        if let Some(st) = stats.as_deref_mut() {
            st.record(n, decision.is_some());
        }
        if let Some(accepted) = decision {
            return accepted;
        }
    }
    panic!("J*(1,z) sampler exceeded {MAX_REJECTIONS} rejections; internal defect");
}

/// Draw from PG(b, z) for any shape b > 0.
///
/// Integer shapes are exact: the sum of `b` independent PG(1, z) draws.
/// A fractional remainder e is served by a 200-term truncated
/// sum-of-gammas draw of PG(e, z), which is approximate but accurate for
/// e < 1 because the dropped weights decay like 1/k^2.
pub fn sample_pg<T, R>(b: T, z: T, rng: &mut R) -> Result<T, PgError>
where
    T: SampleReal,
    R: Rng + ?Sized,
{
    if !(b > T::zero()) || !b.is_finite() {
        return Err(PgError::NonPositiveShape(b.to_f64().unwrap_or(f64::NAN)));
    }
    let whole = b.floor();
    let frac = b - whole;
    let count = whole.to_u64().expect("integer part of shape");
    let mut acc = T::zero();
    for _ in 0..count {
        acc += sample_pg1(z, rng);
    }
    if frac > T::zero() {
        acc += sample_pg_naive(frac, z, FRACTIONAL_TAIL_TERMS, rng)?;
    }
    Ok(acc)
}

/// Same as [`sample_pg`] but records envelope statistics for the exact
/// PG(1, z) component draws.
pub fn sample_pg_recorded<T, R>(
    b: T,
    z: T,
    rng: &mut R,
    stats: &mut SamplerStats,
) -> Result<T, PgError>
where
    T: SampleReal,
    R: Rng + ?Sized,
{
    if !(b > T::zero()) || !b.is_finite() {
        return Err(PgError::NonPositiveShape(b.to_f64().unwrap_or(f64::NAN)));
    }
    let whole = b.floor();
    let frac = b - whole;
    let count = whole.to_u64().expect("integer part of shape");
    let mut acc = T::zero();
    for _ in 0..count {
        acc += sample_pg1_recorded(z, rng, stats);
    }
    if frac > T::zero() {
        acc += sample_pg_naive(frac, z, FRACTIONAL_TAIL_TERMS, rng)?;
    }
    Ok(acc)
}

/// Approximate PG(b, z) draw from the truncated sum-of-gammas
/// representation with `n_terms` terms; the distributional reference
/// oracle.
pub fn sample_pg_naive<T, R>(b: T, z: T, n_terms: usize, rng: &mut R) -> Result<T, PgError>
where
    T: SampleReal,
    R: Rng + ?Sized,
{
    if !(b > T::zero()) || !b.is_finite() {
        return Err(PgError::NonPositiveShape(b.to_f64().unwrap_or(f64::NAN)));
    }
    if n_terms == 0 {
        return Err(PgError::EmptySeries);
    }
    let two_pi = T::of(2.0) * T::PI();
    let offset = z * z / (two_pi * two_pi);
    let half = T::of(0.5);
    let mut acc = T::zero();
    for k in 1..=n_terms {
        let kf = T::from_usize(k).expect("index") - half;
        let g = T::rand_gamma(b, rng);
        acc += g / (kf * kf + offset);
    }
    Ok(acc / (two_pi * T::PI()))
}
