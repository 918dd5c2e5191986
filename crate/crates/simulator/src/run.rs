//! One-call execution from `|0…0⟩` to an outcome table.

use rand::Rng;
use schwinger_circuit::Circuit;

use crate::density::DensityMatrix;
use crate::noise::NoiseParams;
use crate::outcomes::{Outcomes, SampleMode};
use crate::state::StateVector;
use crate::Result;

/// Born probabilities of `circuit` applied to `|0…0⟩`. With non-zero `noise`
/// the local channels act on the final pre-measurement density matrix, whose
/// `N` is the full circuit width.
pub fn final_probabilities(circuit: &Circuit, noise: &NoiseParams) -> Result<Vec<f64>> {
    let state = StateVector::zero(circuit.width).evolved(circuit)?;
    if noise.is_noiseless() {
        return Ok(state.probabilities());
    }
    noise.validate(circuit.width)?;
    let rho = noise.apply(&DensityMatrix::from_state(&state)?)?;
    Ok(rho.probabilities())
}

/// Executes `circuit` and reads it out exactly or with shots.
pub fn execute(circuit: &Circuit, mode: SampleMode, noise: &NoiseParams, rng: &mut impl Rng) -> Result<Outcomes> {
    Outcomes::read(final_probabilities(circuit, noise)?, mode, rng)
}
