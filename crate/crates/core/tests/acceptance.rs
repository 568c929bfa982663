//! Acceptance gates for the distribution layer: sampler exactness,
//! envelope efficiency, partial-sum tail behavior, the mixture identity,
//! the truncated inverse-Gaussian subroutines, the ESS estimator, and
//! throughput.  Each gate prints one PASS/FAIL line; run with
//! `cargo test -p pg-core --test acceptance -- --nocapture` to see them.

mod common;

use std::time::Instant;

use common::{integrate, ks_critical_1pct, ks_statistic, mean_sd};
use pg_core::real::SampleReal;
use pg_core::{
    ess, pg_mean, pg_variance, rng_stream, sample_jstar_recorded, sample_pg1, sample_pg_naive,
    sample_tig_large_mu_counted, sample_tig_small_mu_counted, verify_identity, AcceptanceCounter,
    Chain, PgParams, SamplerStats,
};

fn report(n: u32, desc: &str, pass: bool, detail: &str) {
    println!(
        "criterion {n:2} [{}] {desc}: {detail}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {n} failed: {detail}");
}

#[test]
fn criterion_01_moment_suite() {
    let start = Instant::now();
    let mut detail = String::new();
    let mut pass = true;

    let p0 = PgParams::new(1.0f64, 0.0).unwrap();
    pass &= (pg_mean(&p0) - 0.25).abs() < 1e-10;
    pass &= (pg_variance(&p0) - 1.0 / 24.0).abs() < 1e-10;

    let n = 100_000usize;
    for (i, &z) in [0.0, 0.5, 1.378, 3.0, 10.0].iter().enumerate() {
        let mut rng = rng_stream(100 + i as u64);
        let draws: Vec<f64> = (0..n).map(|_| sample_pg1(z, &mut rng)).collect();
        let (m, sd) = mean_sd(&draws);
        let p = PgParams::new(1.0, z).unwrap();
        let want_m = pg_mean(&p);
        let want_v = pg_variance(&p);
        let se_mean = (want_v / n as f64).sqrt();
        // Standard error of the sample variance via the empirical fourth
        // central moment.
        let m4 = draws.iter().map(|&x| (x - m).powi(4)).sum::<f64>() / n as f64;
        let se_var = ((m4 - want_v * want_v).max(0.0) / n as f64).sqrt();
        let ok_m = (m - want_m).abs() < 4.0 * se_mean;
        let ok_v = (sd * sd - want_v).abs() < 4.0 * se_var;
        if !(ok_m && ok_v) {
            detail.push_str(&format!(
                "z={z}: mean {m} vs {want_m}, var {} vs {want_v}; ",
                sd * sd
            ));
        }
        pass &= ok_m && ok_v;
    }
    let secs = start.elapsed().as_secs_f64();
    pass &= secs < 5.0;
    detail.push_str(&format!("runtime {secs:.2}s"));
    report(1, "moment suite", pass, &detail);
}

#[test]
fn criterion_02_acceptance_bound() {
    let start = Instant::now();
    let mut pass = true;
    let mut detail = String::new();

    // Worst-case envelope tilt z = 1.378 (the Jacobi-level tilt, where
    // the 0.99919 bound is attained): at least 1e7 proposals.
    let mut stats = SamplerStats::new();
    let mut rng = rng_stream(200);
    while stats.proposals() < 10_000_000 {
        sample_jstar_recorded(1.378, &mut rng, &mut stats);
    }
    let acc = stats.acceptance_fraction();
    let ok = (0.9988..=0.9995).contains(&acc);
    detail.push_str(&format!("accept(z=1.378)={acc:.6}; "));
    pass &= ok;

    // 50-point grid on [0, 20].
    let n_grid = 200_000u64;
    let mut worst = f64::INFINITY;
    for i in 0..50 {
        let z = 20.0 * i as f64 / 49.0;
        let mut st = SamplerStats::new();
        let mut rng = rng_stream(300 + i);
        while st.proposals() < n_grid {
            sample_jstar_recorded(z, &mut rng, &mut st);
        }
        let a = st.acceptance_fraction();
        let sigma = (0.999f64 * 0.001 / st.proposals() as f64).sqrt();
        let floor = 0.999 - 3.0 * sigma;
        if a - floor < worst {
            worst = a - floor;
        }
        if a < floor {
            pass = false;
            detail.push_str(&format!("z={z:.2}: accept {a:.5} < {floor:.5}; "));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    pass &= secs < 60.0;
    detail.push_str(&format!("grid margin {worst:.2e}, runtime {secs:.1}s"));
    report(2, "acceptance bound 0.99919", pass, &detail);
}

#[test]
fn criterion_03_partial_sum_tail() {
    // Envelope tilt z = 1.378, the worst case tabulated for P(L > n).
    let mut stats = SamplerStats::new();
    let mut rng = rng_stream(400);
    while stats.proposals() < 10_000_000 {
        sample_jstar_recorded(1.378, &mut rng, &mut stats);
    }
    let n = stats.proposals() as f64;
    let p_ref = 8.023e-4;
    let sigma = (p_ref * (1.0 - p_ref) / n).sqrt();
    let observed = stats.tail_fraction(1);
    let ok_tail = (observed - p_ref).abs() <= 4.0 * sigma;
    let max_l = stats.partial_sum_histogram().len() - 1;
    let ok_max = max_l <= 3;
    let detail = format!(
        "P(L>1)={observed:.4e} (target {p_ref:.3e} +- {:.1e}), max L={max_l}",
        4.0 * sigma
    );
    report(3, "partial-sum tail", ok_tail && ok_max, &detail);
}

#[test]
fn criterion_04_distributional_exactness_ks() {
    let start = Instant::now();
    let n = 10_000usize;
    let crit = ks_critical_1pct(n, n);
    let mut pass = true;
    let mut detail = String::new();
    for (i, &z) in [0.0, 1.0, 2.0, 5.0].iter().enumerate() {
        let mut rng = rng_stream(510 + i as u64);
        let exact: Vec<f64> = (0..n).map(|_| sample_pg1(z, &mut rng)).collect();
        let reference: Vec<f64> = (0..n)
            .map(|_| sample_pg_naive(1.0, z, 2000, &mut rng).unwrap())
            .collect();
        let d = ks_statistic(&exact, &reference);
        detail.push_str(&format!("z={z}: D={d:.4}; "));
        pass &= d < crit;
    }
    let secs = start.elapsed().as_secs_f64();
    pass &= secs < 30.0;
    detail.push_str(&format!("crit={crit:.4}, runtime {secs:.1}s"));
    report(4, "KS vs sum-of-gammas reference", pass, &detail);
}

#[test]
fn criterion_05_mixture_identity() {
    let mut worst = 0.0f64;
    for &b in &[1.0, 2.0, 10.0, 100.0] {
        for i in 0..10 {
            let a = b * i as f64 / 9.0;
            for j in 0..25 {
                let psi = -30.0 + 60.0 * j as f64 / 24.0;
                let r = verify_identity(a, b, psi).unwrap();
                worst = worst.max(r);
            }
        }
    }
    let detail = format!("max residual {worst:.2e} over 1000-point grid");
    report(
        5,
        "integral identity residual < 1e-10",
        worst < 1e-10,
        &detail,
    );
}

// Criterion 6 (posterior exactness) and 8 (tables model) live in the
// pg-models acceptance suite; 11 as well.

#[test]
fn criterion_07_truncated_inverse_gaussian() {
    let t = 0.64f64;
    let n = 100_000usize;
    let mut pass = true;
    let mut detail = String::new();

    // Quadrature oracle for the truncated-IG mean over (0, t].
    let tig_mean = |z: f64| {
        let pdf = move |x: f64| {
            if x <= 0.0 {
                return 0.0;
            }
            let base = (2.0 * std::f64::consts::PI * x.powi(3)).sqrt().recip();
            if z == 0.0 {
                base * (-1.0 / (2.0 * x)).exp()
            } else {
                base * (-z * z * x / 2.0 + z - 1.0 / (2.0 * x)).exp()
            }
        };
        let mass = integrate(&pdf, 1e-9, t, 1e-12);
        let first = integrate(&move |x| x * pdf(x), 1e-9, t, 1e-12);
        first / mass
    };

    // Large-mu regime (1/z > t), acceptance floor 0.61.
    for (i, &z) in [0.0, 0.5, 1.0].iter().enumerate() {
        let mut rng = rng_stream(700 + i as u64);
        let mut counter = AcceptanceCounter::default();
        let draws: Vec<f64> = (0..n)
            .map(|_| sample_tig_large_mu_counted(z, t, &mut rng, &mut counter))
            .collect();
        let support_ok = draws.iter().all(|&x| x > 0.0 && x <= t);
        let frac = counter.fraction();
        let (m, sd) = mean_sd(&draws);
        let want = tig_mean(z);
        let se = sd / (n as f64).sqrt();
        let ok = support_ok && frac >= 0.61 && (m - want).abs() < 4.0 * se;
        if !ok {
            detail.push_str(&format!(
                "large-mu z={z}: accept {frac:.3}, mean {m:.5} vs {want:.5}; "
            ));
        }
        pass &= ok;
    }

    // Small-mu regime (1/z <= t), acceptance floor 0.67 away from the
    // regime boundary.
    for (i, &z) in [2.0f64, 4.0].iter().enumerate() {
        let mut rng = rng_stream(750 + i as u64);
        let mut counter = AcceptanceCounter::default();
        let draws: Vec<f64> = (0..n)
            .map(|_| sample_tig_small_mu_counted(z, t, &mut rng, &mut counter))
            .collect();
        let support_ok = draws.iter().all(|&x| x > 0.0 && x <= t);
        let frac = counter.fraction();
        let (m, sd) = mean_sd(&draws);
        let want = tig_mean(z);
        let se = sd / (n as f64).sqrt();
        let ok = support_ok && frac >= 0.67 && (m - want).abs() < 4.0 * se;
        if !ok {
            detail.push_str(&format!(
                "small-mu z={z}: accept {frac:.3}, mean {m:.5} vs {want:.5}; "
            ));
        }
        pass &= ok;
    }

    if detail.is_empty() {
        detail = "support, acceptance floors, quadrature means all OK".to_string();
    }
    report(7, "truncated inverse-Gaussian subroutines", pass, &detail);
}

#[test]
fn criterion_09_ess_estimator() {
    // AR(1) with rho = 0.9: analytic ESS is M (1 - rho) / (1 + rho).
    let m = 100_000usize;
    let rho = 0.9f64;
    let mut rng = rng_stream(900);
    let innov = (1.0 - rho * rho).sqrt();
    let mut x = 0.0;
    let ar1: Vec<f64> = (0..m)
        .map(|_| {
            x = rho * x + innov * f64::rand_normal(&mut rng);
            x
        })
        .collect();
    let e_ar1 = ess(&Chain::new(ar1).unwrap()).unwrap();
    let want = m as f64 / 19.0;
    let ok_ar1 = (e_ar1 - want).abs() < 0.15 * want;

    let m2 = 10_000usize;
    let iid: Vec<f64> = (0..m2).map(|_| f64::rand_normal(&mut rng)).collect();
    let e_iid = ess(&Chain::new(iid).unwrap()).unwrap();
    let ok_iid = e_iid >= 0.9 * m2 as f64 && e_iid <= 1.2 * m2 as f64;

    let detail = format!("AR(1): {e_ar1:.0} vs {want:.0}; iid: {e_iid:.0} on M={m2}");
    report(9, "ESS estimator", ok_ar1 && ok_iid, &detail);
}

// Criterion 10 (throughput) lives in its own test target so its
// timings never share the process with other running tests.
