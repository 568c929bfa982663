//! Shared oracles for the model test suites.
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

pub fn mean_sd(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let m = xs.iter().sum::<f64>() / n;
    let v = xs.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0);
    (m, v.sqrt())
}

/// Monte Carlo standard error of a chain mean, discounting by the
/// effective sample size.
pub fn mc_se(chain: &[f64]) -> f64 {
    let (_, sd) = mean_sd(chain);
    let ess = pg_core::ess(&pg_core::Chain::new(chain.to_vec()).unwrap()).unwrap();
    sd / ess.sqrt()
}

/// Equal-tailed interval from sorted copies of the draws.
pub fn credible_interval(draws: &[f64], level: f64) -> (f64, f64) {
    let mut s = draws.to_vec();
    s.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let alpha = (1.0 - level) / 2.0;
    let lo = s[(alpha * s.len() as f64) as usize];
    let hi = s[((1.0 - alpha) * s.len() as f64) as usize];
    (lo, hi)
}
