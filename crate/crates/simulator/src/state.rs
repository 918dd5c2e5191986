//! Pure states.

use num_complex::Complex64;
use schwinger_circuit::Circuit;

use crate::kernels::apply_gate;
use crate::{Result, SimError};

/// Amplitudes of a `width`-qubit pure state.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    pub width: usize,
    pub amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(width: usize) -> Self {
        Self::basis(width, 0)
    }

    pub fn basis(width: usize, index: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << width];
        amplitudes[index] = Complex64::new(1.0, 0.0);
        Self { width, amplitudes }
    }

    /// Wraps amplitudes, requiring a power-of-two length and unit norm (1e−10).
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if !len.is_power_of_two() {
            return Err(SimError::NotPowerOfTwo(len));
        }
        let s = Self { width: len.trailing_zeros() as usize, amplitudes };
        let norm = s.norm();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(SimError::NotNormalized(norm));
        }
        Ok(s)
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Applies every gate of `circuit` in order. The circuit's classical phase
    /// tag is not applied; callers that need it read `circuit.phase`.
    pub fn apply(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.width != self.width {
            return Err(SimError::WidthMismatch { circuit: circuit.width, state: self.width });
        }
        for g in &circuit.gates {
            apply_gate(g, &mut self.amplitudes);
        }
        Ok(())
    }

    /// Returns the state after `circuit`.
    pub fn evolved(mut self, circuit: &Circuit) -> Result<Self> {
        self.apply(circuit)?;
        Ok(self)
    }

    /// Born probabilities indexed by basis state.
    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        self.amplitudes.iter().zip(&other.amplitudes).map(|(a, b)| a.conj() * b).sum()
    }
}
