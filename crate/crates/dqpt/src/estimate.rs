//! Ramsey estimators: `⟨σx⟩ + i⟨σy⟩` of the ancilla on postselected shots,
//! with binomial uncertainties, and recombination of correlator components.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use schwinger_circuit::NecfComponent;
use schwinger_sim::Outcomes;

use crate::postselect::{postselect_symmetry, PostselectMode};
use crate::{DqptError, Result};

/// A complex overlap read from an ancilla, with per-component standard errors.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RamseyEstimate {
    pub value: Complex64,
    pub sigma_re: f64,
    pub sigma_im: f64,
    /// Shots kept after postselection, summed over both bases (0 in exact mode).
    pub n_kept: u64,
    pub n_total: u64,
    /// Kept probability mass averaged over both bases.
    pub kept_fraction: f64,
}

impl RamseyEstimate {
    /// Combined uncertainty `√(σ_re² + σ_im²)`.
    pub fn sigma(&self) -> f64 {
        self.sigma_re.hypot(self.sigma_im)
    }
}

struct Component {
    mean: f64,
    sigma: f64,
    kept: u64,
    total: u64,
    fraction: f64,
}

fn component(outcomes: &Outcomes, ancilla: usize, n_system: usize, mode: PostselectMode) -> Result<Component> {
    let system_mask = (1usize << n_system) - 1;
    let kept = outcomes.filter(|i| postselect_symmetry(i & system_mask, n_system, mode));
    let total_w = outcomes.total();
    let kept_w = kept.total();
    if kept_w <= 0.0 {
        return Err(DqptError::EmptyPostselection);
    }
    let p0 = kept.weights().iter().filter(|(i, _)| i >> ancilla & 1 == 0).map(|w| w.1).sum::<f64>() / kept_w;
    let p1 = 1.0 - p0;
    let (sigma, kept_n, total_n) = match (kept.n_shots(), outcomes.n_shots()) {
        (Some(k), Some(n)) => (2.0 * (p0 * p1 / k as f64).sqrt(), k, n),
        _ => (0.0, 0, 0),
    };
    Ok(Component { mean: p0 - p1, sigma, kept: kept_n, total: total_n, fraction: kept_w / total_w })
}

/// `⟨σ⟩` of the ancilla in one basis (the readout rotation is in the circuit).
pub fn ramsey_component(outcomes: &Outcomes, ancilla: usize, n_system: usize, mode: PostselectMode) -> Result<(f64, f64)> {
    let c = component(outcomes, ancilla, n_system, mode)?;
    Ok((c.mean, c.sigma))
}

/// Overlap `e^{iφ}(⟨σx⟩ + i⟨σy⟩)` from x- and y-basis readouts of a Ramsey
/// circuit, where `φ` is the circuit's phase tag and the system register is
/// qubits `0..n_system`. Standard errors are rotated with the phase.
pub fn estimate_loschmidt(
    x: &Outcomes,
    y: &Outcomes,
    ancilla: usize,
    n_system: usize,
    mode: PostselectMode,
    phase: f64,
) -> Result<RamseyEstimate> {
    let cx = component(x, ancilla, n_system, mode)?;
    let cy = component(y, ancilla, n_system, mode)?;
    let rot = Complex64::from_polar(1.0, phase);
    let (s, c) = phase.sin_cos();
    Ok(RamseyEstimate {
        value: rot * Complex64::new(cx.mean, cy.mean),
        sigma_re: (c * c * cx.sigma * cx.sigma + s * s * cy.sigma * cy.sigma).sqrt(),
        sigma_im: (s * s * cx.sigma * cx.sigma + c * c * cy.sigma * cy.sigma).sqrt(),
        n_kept: cx.kept + cy.kept,
        n_total: cx.total + cy.total,
        kept_fraction: 0.5 * (cx.fraction + cy.fraction),
    })
}

/// `g_q(t) = conj(Σ w·C)` over the eight correlators `C = ⟨P(t)P′(0)⟩` of the
/// a- and b-channels.
pub fn estimate_necf(components: &[(NecfComponent, Complex64)]) -> Result<Complex64> {
    let mut sum = Complex64::new(0.0, 0.0);
    for want in NecfComponent::all() {
        let (_, c) = components
            .iter()
            .find(|(k, _)| *k == want)
            .ok_or_else(|| DqptError::MissingComponent(want.label()))?;
        sum += want.weight() * c;
    }
    Ok(sum.conj())
}
