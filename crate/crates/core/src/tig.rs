//! Truncated inverse-Gaussian generation on (0, t], the left-branch
//! proposal of the PG(1, z) sampler.
//!
//! Two regimes, split on the untruncated mean mu = 1/z:
//! * mu > t (small tilt): propose `X = t / (1 + t E)^2` from a paired
//!   exponential construction and accept with probability
//!   `exp(-z^2 X / 2)`.
//! * mu <= t (large tilt): draw untruncated IG(mu, 1) variates by the
//!   many-to-one transformation and retry until `X <= t`.

use rand::Rng;

use crate::real::SampleReal;

/// Accept/reject tallies for a rejection sampler stage.
#[derive(Debug, Clone, Copy, Default)]
pub struct AcceptanceCounter {
    pub attempts: u64,
    pub accepts: u64,
}

impl AcceptanceCounter {
    pub fn fraction(&self) -> f64 {
        if self.attempts == 0 {
            f64::NAN
        } else {
            self.accepts as f64 / self.attempts as f64
        }
    }
}

/// Draw from IG(1/z, 1) restricted to (0, t] in the `1/z > t` regime
/// (z = 0 is the untilted limit).
pub fn sample_tig_large_mu<T, R>(z: T, t: T, rng: &mut R) -> T
where
    T: SampleReal,
    R: Rng + ?Sized,
{
    sample_tig_large_mu_counted(z, t, rng, &mut AcceptanceCounter::default())
}

/// Same as [`sample_tig_large_mu`] but tallies the accept step.
pub fn sample_tig_large_mu_counted<T, R>(
    z: T,
    t: T,
    rng: &mut R,
    counter: &mut AcceptanceCounter,
) -> T
where
    T: SampleReal,
    R: Rng + ?Sized,
{
    debug_assert!(z >= T::zero() && t > T::zero());
    debug_assert!(z == T::zero() || z.recip() > t, "wrong regime: 1/z <= t");
    let half = T::of(0.5);
    let two = T::of(2.0);
    loop {
        // Paired exponentials until E^2 <= 2 E' / t.
        let e: T = loop {
            let e = T::rand_exp1(rng);
            let e2 = T::rand_exp1(rng);
            if e * e <= two * e2 / t {
                break e;
            }
        };
        let denom = T::one() + t * e;
        let x = t / (denom * denom);
        counter.attempts += 1;
        if z == T::zero() {
            counter.accepts += 1;
            return x;
        }
        let alpha = (-z * z * x * half).exp();
        let u = T::rand_uniform(rng);
        if u <= alpha {
            counter.accepts += 1;
            return x;
        }
    }
}

/// Draw from IG(1/z, 1) restricted to (0, t] in the `1/z <= t` regime.
pub fn sample_tig_small_mu<T, R>(z: T, t: T, rng: &mut R) -> T
where
    T: SampleReal,
    R: Rng + ?Sized,
{
    sample_tig_small_mu_counted(z, t, rng, &mut AcceptanceCounter::default())
}

/// Same as [`sample_tig_small_mu`] but tallies the retry loop.
pub fn sample_tig_small_mu_counted<T, R>(
    z: T,
    t: T,
    rng: &mut R,
    counter: &mut AcceptanceCounter,
) -> T
where
    T: SampleReal,
    R: Rng + ?Sized,
{
    debug_assert!(z > T::zero() && t > T::zero());
    debug_assert!(z.recip() <= t, "wrong regime: 1/z > t");
    let mu = z.recip();
    loop {
        counter.attempts += 1;
        let x = sample_inverse_gaussian(mu, rng);
        if x <= t {
            counter.accepts += 1;
            return x;
        }
    }
}

/// Untruncated IG(mu, 1) by the many-to-one transformation of a squared
/// normal.
fn sample_inverse_gaussian<T, R>(mu: T, rng: &mut R) -> T
where
    T: SampleReal,
    R: Rng + ?Sized,
{
    let half = T::of(0.5);
    let four = T::of(4.0);
    let n = T::rand_normal(rng);
    let y = n * n;
    let muy = mu * y;
    let x = mu + half * mu * muy - half * mu * (four * muy + muy * muy).sqrt();
    // Guard against catastrophic cancellation pushing x to exactly 0.
    let x = x.max(T::of(1e-300));
    let u = T::rand_uniform(rng);
    if u > mu / (mu + x) {
        mu * mu / x
    } else {
        x
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn large_mu_draws_lie_in_support() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let t = 0.64_f64;
        for _ in 0..20_000 {
            let x = sample_tig_large_mu(0.0, t, &mut rng);
            assert!(x > 0.0 && x <= t);
        }
    }

    #[test]
    fn small_mu_draws_lie_in_support() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let t = 0.64_f64;
        for _ in 0..20_000 {
            let x = sample_tig_small_mu(4.0, t, &mut rng);
            assert!(x > 0.0 && x <= t);
        }
    }

    #[test]
    fn untruncated_ig_mean_matches() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let mu = 0.4_f64;
        let n = 200_000;
        let mean: f64 = (0..n)
            .map(|_| sample_inverse_gaussian(mu, &mut rng))
            .sum::<f64>()
            / n as f64;
        // Var of IG(mu, 1) is mu^3.
        let se = (mu.powi(3) / n as f64).sqrt();
        assert!((mean - mu).abs() < 5.0 * se, "mean {mean} vs {mu}");
    }
}
