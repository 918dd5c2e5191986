//! Closed-form observables of the free (`e = 0`) quench.

use num_complex::Complex64;
use schwinger_model::{dispersion, ModelParams};

use crate::{OracleError, Result};

fn require_free(params: &ModelParams) -> Result<()> {
    params.validate()?;
    if params.e != 0.0 {
        return Err(OracleError::Interacting { e: params.e });
    }
    Ok(())
}

/// Per-mode factor `g_q(t) = cos ω_q t + i sin ω_q t (1 − 2m²/ω_q²)`, the
/// non-equal-time correlator `⟨ψ†_q(0) ψ_q(t)⟩` of the quench.
pub fn necf_analytic(params: &ModelParams, q: i64, t: f64) -> Result<Complex64> {
    require_free(params)?;
    let w = dispersion(params, q)?;
    let mu = params.effective_mass();
    let (s, c) = (w * t).sin_cos();
    Ok(Complex64::new(c, s * (1.0 - 2.0 * mu * mu / (w * w))))
}

/// Loschmidt amplitude `L(t) = ∏_q g_q(t)` of the free quench `m → −m`.
pub fn loschmidt_analytic(params: &ModelParams, t: f64) -> Result<Complex64> {
    require_free(params)?;
    params.momenta().try_fold(Complex64::new(1.0, 0.0), |acc, q| Ok(acc * necf_analytic(params, q, t)?))
}

/// Finite-size rate function `Γ = −ln|L| / N`; `+∞` when `L = 0`.
pub fn rate_function(l: Complex64, n: usize) -> f64 {
    let a = l.norm();
    if a == 0.0 {
        f64::INFINITY
    } else {
        -a.ln() / n as f64
    }
}
