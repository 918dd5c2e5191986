//! Derivative-free Nelder–Mead simplex minimization.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NelderMeadConfig {
    /// Edge length of the initial simplex.
    pub step: f64,
    /// Converged once the best value improves by less than `tolerance`
    /// over `stall_iterations` consecutive iterations.
    pub tolerance: f64,
    pub stall_iterations: usize,
    pub max_iterations: usize,
}

impl Default for NelderMeadConfig {
    fn default() -> Self {
        Self { step: 0.5, tolerance: 1e-10, stall_iterations: 200, max_iterations: 20_000 }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub iterations: usize,
    pub converged: bool,
}

/// Minimizes `f` from `x0` with the standard reflection, expansion,
/// contraction and shrink coefficients `(1, 2, ½, ½)`.
pub fn nelder_mead(f: impl Fn(&[f64]) -> f64, x0: &[f64], cfg: &NelderMeadConfig) -> Minimum {
    let n = x0.len();
    let eval = |x: &[f64]| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), eval(x0)));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += cfg.step;
        let v = eval(&x);
        simplex.push((x, v));
    }
    let lerp = |a: &[f64], b: &[f64], t: f64| -> Vec<f64> { a.iter().zip(b).map(|(p, q)| p + t * (q - p)).collect() };

    let mut best = f64::INFINITY;
    let mut last_improvement = 0;
    let mut iterations = 0;
    let mut converged = false;
    while iterations < cfg.max_iterations {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if simplex[0].1 < best - cfg.tolerance {
            best = simplex[0].1;
            last_improvement = iterations;
        } else if iterations - last_improvement >= cfg.stall_iterations {
            converged = true;
            break;
        }
        iterations += 1;

        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, v) in centroid.iter_mut().zip(x) {
                *c += v / n as f64;
            }
        }
        let worst = simplex[n].clone();
        let reflected = lerp(&centroid, &worst.0, -1.0);
        let fr = eval(&reflected);
        if fr < simplex[0].1 {
            let expanded = lerp(&centroid, &worst.0, -2.0);
            let fe = eval(&expanded);
            simplex[n] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr < simplex[n - 1].1 {
            simplex[n] = (reflected, fr);
            continue;
        }
        let (contracted, fc) = if fr < worst.1 {
            let x = lerp(&centroid, &reflected, 0.5);
            let v = eval(&x);
            (x, v)
        } else {
            let x = lerp(&centroid, &worst.0, 0.5);
            let v = eval(&x);
            (x, v)
        };
        if fc < worst.1.min(fr) {
            simplex[n] = (contracted, fc);
            continue;
        }
        let x_best = simplex[0].0.clone();
        for entry in simplex.iter_mut().skip(1) {
            let x = lerp(&x_best, &entry.0, 0.5);
            let v = eval(&x);
            *entry = (x, v);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    let (x, value) = simplex.swap_remove(0);
    Minimum { x, value, iterations, converged }
}
