//! Local decoherence channels
//! `ℳ[ρ] = (1 − pN)ρ + p Σᵢ Kᵢ[ρ]` with `p ∈ [0, 1/N]`, where `Kᵢ` is the
//! single-qubit depolarizer `Trᵢ(ρ)⊗𝟙ᵢ/2`, the bit flip `XᵢρXᵢ` or the phase
//! flip `ZᵢρZᵢ`, and a per-gate Pauli trajectory model for pure states.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use schwinger_circuit::{Circuit, Gate, GateKind};
use serde::{Deserialize, Serialize};

use crate::density::DensityMatrix;
use crate::kernels::apply_gate;
use crate::state::StateVector;
use crate::{Result, SimError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NoiseKind {
    Depolarizing,
    BitFlip,
    Phase,
}

impl NoiseKind {
    pub const ALL: [NoiseKind; 3] = [NoiseKind::Depolarizing, NoiseKind::BitFlip, NoiseKind::Phase];
}

/// Channel weights: `p1` depolarizing, `p2` bit flip, `p3` phase.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct NoiseParams {
    #[serde(default)]
    pub p1: f64,
    #[serde(default)]
    pub p2: f64,
    #[serde(default)]
    pub p3: f64,
}

impl NoiseParams {
    pub fn weight(&self, kind: NoiseKind) -> f64 {
        match kind {
            NoiseKind::Depolarizing => self.p1,
            NoiseKind::BitFlip => self.p2,
            NoiseKind::Phase => self.p3,
        }
    }

    pub fn is_noiseless(&self) -> bool {
        self.p1 == 0.0 && self.p2 == 0.0 && self.p3 == 0.0
    }

    /// Every weight must lie in `[0, 1/n]`.
    pub fn validate(&self, n: usize) -> Result<()> {
        for kind in NoiseKind::ALL {
            check_weight(self.weight(kind), n)?;
        }
        Ok(())
    }

    /// Applies the three channels in the order depolarizing, bit flip, phase.
    pub fn apply(&self, rho: &DensityMatrix) -> Result<DensityMatrix> {
        let mut out = rho.clone();
        for kind in NoiseKind::ALL {
            let p = self.weight(kind);
            if p != 0.0 {
                out = out.apply_channel(kind, p)?;
            }
        }
        Ok(out)
    }
}

fn check_weight(p: f64, n: usize) -> Result<()> {
    if !(p.is_finite() && p >= 0.0 && p <= 1.0 / n as f64 + 1e-12) {
        return Err(SimError::NoiseOutOfRange { p, n });
    }
    Ok(())
}

impl DensityMatrix {
    /// `ℳ[ρ]` for one channel kind with weight `p`; `N` is this register's width.
    pub fn apply_channel(&self, kind: NoiseKind, p: f64) -> Result<DensityMatrix> {
        let n = self.width;
        check_weight(p, n)?;
        let d = self.dim();
        let rho = &self.entries;
        let mut out: DMatrix<Complex64> = rho * Complex64::new(1.0 - p * n as f64, 0.0);
        for i in 0..n {
            let m = 1usize << i;
            for r in 0..d {
                for c in 0..d {
                    let term = match kind {
                        NoiseKind::Depolarizing => {
                            if (r ^ c) & m != 0 {
                                continue;
                            }
                            (rho[(r & !m, c & !m)] + rho[(r | m, c | m)]) * 0.5
                        }
                        NoiseKind::BitFlip => rho[(r ^ m, c ^ m)],
                        NoiseKind::Phase => {
                            if (r ^ c) & m != 0 {
                                -rho[(r, c)]
                            } else {
                                rho[(r, c)]
                            }
                        }
                    };
                    out[(r, c)] += term * p;
                }
            }
        }
        Ok(DensityMatrix { width: n, entries: out })
    }
}

/// Runs `circuit` on `state` inserting, after every gate and on each qubit it
/// touches, a uniformly random Pauli with probability `p` (stochastic
/// depolarization trajectory).
pub fn apply_trajectory_noise(circuit: &Circuit, state: &mut StateVector, p: f64, rng: &mut impl Rng) -> Result<()> {
    if circuit.width != state.width {
        return Err(SimError::WidthMismatch { circuit: circuit.width, state: state.width });
    }
    check_weight(p, 1)?;
    for g in &circuit.gates {
        apply_gate(g, &mut state.amplitudes);
        for &q in &g.qubits {
            if rng.random::<f64>() < p {
                let kind = [GateKind::X, GateKind::Y, GateKind::Z][rng.random_range(0..3)];
                apply_gate(&Gate::new(kind, &[q], 0.0), &mut state.amplitudes);
            }
        }
    }
    Ok(())
}
