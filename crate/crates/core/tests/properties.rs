//! Property-level invariants of the distribution functions: evenness in
//! the tilt, density normalization, the exponential-tilting identity,
//! envelope interlacing, and the mixture identity on a random grid.

mod common;

use common::{integrate, pg_tail_cutoff};
use pg_core::{
    pg_density, pg_laplace, pg_mean, pg_variance, verify_identity, PgParams, TiltedJacobiSeries,
};
use proptest::prelude::*;

#[test]
fn density_normalizes_on_parameter_grid() {
    for &b in &[1.0, 2.0, 5.0, 10.0] {
        for &c in &[0.0, 1.0, 3.0, 10.0] {
            let p = PgParams::new(b, c).unwrap();
            let hi = pg_tail_cutoff(b, c);
            let mass = integrate(&|x| pg_density(x, &p).unwrap(), 1e-4, hi, 5e-8);
            assert!(
                (mass - 1.0).abs() < 1e-6,
                "b={b} c={c}: mass {mass} (cutoff {hi})"
            );
        }
    }
}

#[test]
fn interlacing_brackets_the_density() {
    // The tilted partial sums sandwich the J*(1, z) density, which maps
    // to the PG density via PG(1, 2z) = J*(1, z) / 4.  Odd sums below,
    // even sums above; comparisons are non-strict where increments fall
    // under f64 resolution.
    let mut rng = pg_core::rng_stream(2024);
    use pg_core::real::SampleReal;
    for _ in 0..100 {
        let x = 0.05 + 2.95 * f64::rand_uniform(&mut rng);
        let z = 3.0 * f64::rand_uniform(&mut rng);
        let series = TiltedJacobiSeries::new(z);
        let params = PgParams::new(1.0, 2.0 * z).unwrap();
        let f = 0.25 * pg_density(x / 4.0, &params).unwrap();
        let sums: Vec<f64> = series.partial_sums(x).take(11).collect();
        for k in (0..sums.len()).step_by(2) {
            assert!(
                f <= sums[k] * (1.0 + 1e-12) + 1e-300,
                "even k={k} x={x} z={z}"
            );
            if k + 2 < sums.len() {
                assert!(sums[k + 2] <= sums[k], "x={x} z={z}");
            }
        }
        for k in (1..sums.len()).step_by(2) {
            assert!(
                f >= sums[k] * (1.0 - 1e-12) - 1e-300,
                "odd k={k} x={x} z={z}"
            );
            if k + 2 < sums.len() {
                assert!(sums[k] <= sums[k + 2], "x={x} z={z}");
            }
        }
        // Strict first gap whenever a_1 is representable next to a_0.
        if series.coeff(1, x) > 1e-13 * series.coeff(0, x) {
            assert!(sums[1] < sums[0], "x={x} z={z}");
        }
    }
}

#[test]
fn identity_residual_on_dense_grid() {
    // 1000-point grid over a in [0, b], b in {1, 2, 10, 100},
    // psi in [-30, 30].
    for &b in &[1.0, 2.0, 10.0, 100.0] {
        for i in 0..10 {
            let a = b * i as f64 / 9.0;
            for j in 0..25 {
                let psi = -30.0 + 60.0 * j as f64 / 24.0;
                let r = verify_identity(a, b, psi).unwrap();
                assert!(r < 1e-10, "a={a} b={b} psi={psi}: residual {r}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evenness_in_tilt(b in 0.1f64..50.0, c in -20.0f64..20.0, t in 0.0f64..10.0) {
        let plus = PgParams::new(b, c).unwrap();
        let minus = PgParams::new(b, -c).unwrap();
        prop_assert!((pg_laplace(&plus, t).unwrap() - pg_laplace(&minus, t).unwrap()).abs() <= 1e-12);
        prop_assert!((pg_mean(&plus) - pg_mean(&minus)).abs() <= 1e-12);
        prop_assert!((pg_variance(&plus) - pg_variance(&minus)).abs() <= 1e-12);
        let x = 0.3;
        prop_assert!((pg_density(x, &plus).unwrap() - pg_density(x, &minus).unwrap()).abs() <= 1e-12);
    }

    #[test]
    // x stays inside the distribution's bulk: deep in the right tail the
    // alternating series cancels to ~1e-5 of its largest term and no f64
    // evaluation can hold 1e-10 relative accuracy.
    fn tilting_identity(b in 0.2f64..30.0, c in 0.0f64..8.0, x in 0.01f64..1.5) {
        let tilted = pg_density(x, &PgParams::new(b, c).unwrap()).unwrap();
        let base = pg_density(x, &PgParams::new(b, 0.0).unwrap()).unwrap();
        let factor = ((c / 2.0).cosh().ln() * b - c * c * x / 2.0).exp();
        let want = factor * base;
        if want > 1e-290 {
            prop_assert!(
                ((tilted - want) / want).abs() < 1e-10,
                "b={} c={} x={}: {} vs {}", b, c, x, tilted, want
            );
        }
    }

    #[test]
    fn laplace_decreases_and_stays_in_unit_interval(b in 0.1f64..100.0, c in 0.0f64..20.0, t in 0.0f64..50.0) {
        let p = PgParams::new(b, c).unwrap();
        let v = pg_laplace(&p, t).unwrap();
        prop_assert!((0.0..=1.0).contains(&v));
        let v2 = pg_laplace(&p, t + 1.0).unwrap();
        prop_assert!(v2 <= v);
    }

    #[test]
    fn identity_residual_random(b in 0.5f64..100.0, frac in 0.0f64..1.0, psi in -30.0f64..30.0) {
        let a = b * frac;
        prop_assert!(verify_identity(a, b, psi).unwrap() < 1e-10);
    }

    #[test]
    fn mean_variance_positive(b in 0.1f64..200.0, c in 0.0f64..30.0) {
        let p = PgParams::new(b, c).unwrap();
        prop_assert!(pg_mean(&p) > 0.0);
        prop_assert!(pg_variance(&p) > 0.0);
    }
}

#[test]
fn laplace_matches_monte_carlo() {
    // E[exp(-omega t)] over sampler draws vs the closed form, b=2, c=3,
    // t=1.
    let p = PgParams::new(2.0, 3.0).unwrap();
    let want = pg_laplace(&p, 1.0).unwrap();
    let mut rng = pg_core::rng_stream(61);
    let n = 1_000_000usize;
    let vals: Vec<f64> = (0..n)
        .map(|_| (-pg_core::sample_pg(2.0f64, 3.0, &mut rng).unwrap()).exp())
        .collect();
    let mean = vals.iter().sum::<f64>() / n as f64;
    let sd = (vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt();
    let se = sd / (n as f64).sqrt();
    assert!((mean - want).abs() < 4.0 * se, "{mean} vs {want} (se {se})");
}

#[test]
fn variance_matches_monte_carlo_at_large_tilt() {
    // Var of PG(1, 4) from the series vs the sample variance.
    let p = PgParams::new(1.0, 4.0).unwrap();
    let want = pg_variance(&p);
    let mut rng = pg_core::rng_stream(62);
    let n = 1_000_000usize;
    let draws: Vec<f64> = (0..n).map(|_| pg_core::sample_pg1(4.0, &mut rng)).collect();
    let mean = draws.iter().sum::<f64>() / n as f64;
    let var = draws.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
    let m4 = draws.iter().map(|v| (v - mean).powi(4)).sum::<f64>() / n as f64;
    let se_var = ((m4 - var * var) / n as f64).sqrt();
    assert!(
        (var - want).abs() < 4.0 * se_var,
        "{var} vs {want} (se {se_var})"
    );
}

#[test]
fn density_matches_kernel_density_estimate() {
    // Gaussian KDE of one million PG(1, 2) draws against pg_density on a
    // grid through the bulk.
    let mut rng = pg_core::rng_stream(63);
    let n = 1_000_000usize;
    let draws: Vec<f64> = (0..n).map(|_| pg_core::sample_pg1(2.0, &mut rng)).collect();
    let mean = draws.iter().sum::<f64>() / n as f64;
    let sd = (draws.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1) as f64).sqrt();
    let h = 1.06 * sd * (n as f64).powf(-0.2);
    let params = PgParams::new(1.0, 2.0).unwrap();
    let norm = (2.0 * std::f64::consts::PI).sqrt();
    let lo = (mean - 1.5 * sd).max(0.02);
    let hi = mean + 2.5 * sd;
    for step in 0..8 {
        let x = lo + (hi - lo) * step as f64 / 7.0;
        let kde: f64 = draws
            .iter()
            .map(|&v| (-((x - v) / h).powi(2) / 2.0).exp())
            .sum::<f64>()
            / (n as f64 * h * norm);
        // The KDE estimates the kernel-smoothed density, so smooth the
        // analytic density with the same bandwidth before comparing;
        // what remains is pure Monte Carlo noise.
        let smoothed = common::integrate(
            &|u: f64| {
                if u <= 1e-6 {
                    0.0
                } else {
                    pg_density(u, &params).unwrap() * (-((x - u) / h).powi(2) / 2.0).exp()
                }
            },
            (x - 8.0 * h).max(1e-6),
            x + 8.0 * h,
            1e-10,
        ) / (h * norm);
        let se = (smoothed.max(0.05) * 0.2821 / (n as f64 * h)).sqrt();
        assert!(
            (kde - smoothed).abs() < 5.0 * se,
            "x={x}: kde {kde} vs smoothed density {smoothed} (se {se})"
        );
    }
}

#[test]
fn convolution_matches_naive_reference() {
    // PG(3, z) by summed PG(1, z) draws against the 2000-term
    // sum-of-gammas reference, two-sample KS at the 1% level.
    let n = 5_000usize;
    let z = 1.0;
    let mut rng = pg_core::rng_stream(64);
    let exact: Vec<f64> = (0..n)
        .map(|_| pg_core::sample_pg(3.0, z, &mut rng).unwrap())
        .collect();
    let reference: Vec<f64> = (0..n)
        .map(|_| pg_core::sample_pg_naive(3.0, z, 2000, &mut rng).unwrap())
        .collect();
    let d = common::ks_statistic(&exact, &reference);
    let crit = common::ks_critical_1pct(n, n);
    assert!(d < crit, "D = {d} vs critical {crit}");
}
