//! Shared helpers for the integration suites: quadrature oracles and a
//! two-sample Kolmogorov-Smirnov statistic, implemented independently of
//! the code under test.
//!
//! Each test binary uses a different subset of these.
#![allow(dead_code)]

/// Adaptive Simpson integration to absolute tolerance `tol`.
///
/// The range is pre-split into 128 uniform panels before the adaptive
/// recursion so that narrow features cannot slip between the first
/// coarse nodes.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, m: f64, b: f64) -> f64 {
        (b - a) / 6.0 * (f(a) + 4.0 * f(m) + f(b))
    }
    fn rec<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, whole: f64, tol: f64, depth: usize) -> f64 {
        let m = 0.5 * (a + b);
        let left = simpson(f, a, 0.5 * (a + m), m);
        let right = simpson(f, m, 0.5 * (m + b), b);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            rec(f, a, m, left, 0.5 * tol, depth - 1) + rec(f, m, b, right, 0.5 * tol, depth - 1)
        }
    }
    let panels = 128;
    let h = (b - a) / panels as f64;
    let panel_tol = tol / panels as f64;
    (0..panels)
        .map(|k| {
            let lo = a + k as f64 * h;
            let hi = lo + h;
            let whole = simpson(f, lo, 0.5 * (lo + hi), hi);
            rec(f, lo, hi, whole, panel_tol, 40)
        })
        .sum()
}

/// Two-sample Kolmogorov-Smirnov statistic.
pub fn ks_statistic(xs: &[f64], ys: &[f64]) -> f64 {
    let mut a = xs.to_vec();
    let mut b = ys.to_vec();
    a.sort_by(|p, q| p.partial_cmp(q).unwrap());
    b.sort_by(|p, q| p.partial_cmp(q).unwrap());
    let (n, m) = (a.len(), b.len());
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < n && j < m {
        if a[i] <= b[j] {
            i += 1;
        } else {
            j += 1;
        }
        let fa = i as f64 / n as f64;
        let fb = j as f64 / m as f64;
        d = d.max((fa - fb).abs());
    }
    d
}

/// Critical value of the two-sample KS test at the 1% level.
pub fn ks_critical_1pct(n: usize, m: usize) -> f64 {
    // c(alpha) = sqrt(-ln(alpha/2)/2) with alpha = 0.01.
    let c = (-0.5 * (0.01f64 / 2.0).ln()).sqrt();
    c * ((n + m) as f64 / (n as f64 * m as f64)).sqrt()
}

pub fn mean_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, v.sqrt())
}

/// Upper integration limit beyond which the PG(b, c) tail mass is below
/// 1e-9, from the Chernoff bound at s just inside the first pole of the
/// moment generating function.
pub fn pg_tail_cutoff(b: f64, c: f64) -> f64 {
    let s = c * c / 2.0 + std::f64::consts::PI.powi(2) / 2.0 - 0.5;
    let inner = ((s - c * c / 2.0) / 2.0).sqrt();
    let log_mgf = b * ((c / 2.0).cosh().ln() - inner.cos().ln());
    (log_mgf + 9.0 * std::f64::consts::LN_10) / s
}
