//! Mixed states as dense density matrices (at most [`MAX_DENSITY_WIDTH`] qubits).

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use schwinger_circuit::{Circuit, Gate};

use crate::kernels::apply_gate;
use crate::state::StateVector;
use crate::{Result, SimError};

/// Largest register handled in density-matrix mode.
pub const MAX_DENSITY_WIDTH: usize = 10;

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    pub width: usize,
    pub entries: DMatrix<Complex64>,
}

fn check_width(width: usize) -> Result<()> {
    if width > MAX_DENSITY_WIDTH {
        return Err(SimError::TooWide { width, max: MAX_DENSITY_WIDTH });
    }
    Ok(())
}

impl DensityMatrix {
    /// `|ψ⟩⟨ψ|`.
    pub fn from_state(state: &StateVector) -> Result<Self> {
        check_width(state.width)?;
        let v = nalgebra::DVector::from_column_slice(&state.amplitudes);
        Ok(Self { width: state.width, entries: &v * v.adjoint() })
    }

    /// Wraps a square matrix of side `2^width`.
    pub fn from_matrix(entries: DMatrix<Complex64>) -> Result<Self> {
        let n = entries.nrows();
        if !n.is_power_of_two() || entries.ncols() != n {
            return Err(SimError::NotPowerOfTwo(n));
        }
        let width = n.trailing_zeros() as usize;
        check_width(width)?;
        Ok(Self { width, entries })
    }

    /// `𝟙/2^width`.
    pub fn maximally_mixed(width: usize) -> Result<Self> {
        check_width(width)?;
        let d = 1usize << width;
        Ok(Self { width, entries: DMatrix::from_diagonal_element(d, d, Complex64::new(1.0 / d as f64, 0.0)) })
    }

    pub fn dim(&self) -> usize {
        1 << self.width
    }

    pub fn trace(&self) -> Complex64 {
        self.entries.trace()
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        self.entries.iter().map(|z| z.norm_sqr()).sum()
    }

    /// `Tr(ρσ)` (real for Hermitian inputs).
    pub fn overlap(&self, other: &DensityMatrix) -> f64 {
        // Tr(ρσ) = Σ ρ_ij σ_ji = Σ ρ_ij conj(σ_ij) for Hermitian σ.
        self.entries.iter().zip(other.entries.iter()).map(|(a, b)| (a * b.conj()).re).sum()
    }

    pub fn hermiticity_error(&self) -> f64 {
        (&self.entries - self.entries.adjoint()).camax()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let herm = (&self.entries + self.entries.adjoint()) * Complex64::new(0.5, 0.0);
        let mut e: Vec<f64> = SymmetricEigen::new(herm).eigenvalues.iter().copied().collect();
        e.sort_by(f64::total_cmp);
        e
    }

    /// Hermitian, unit trace and positive semidefinite within `tol`.
    pub fn is_physical(&self, tol: f64) -> bool {
        self.hermiticity_error() < tol
            && (self.trace() - Complex64::new(1.0, 0.0)).norm() < tol
            && self.eigenvalues().first().is_none_or(|&e| e > -tol)
    }

    /// Diagonal: Born probabilities in the computational basis.
    pub fn probabilities(&self) -> Vec<f64> {
        self.entries.diagonal().iter().map(|z| z.re.max(0.0)).collect()
    }

    /// `ρ → GρG†` for one gate.
    pub fn apply_gate(&mut self, gate: &Gate) {
        self.conjugate_with(|col| apply_gate(gate, col));
    }

    /// `ρ → UρU†` for the circuit's gate product.
    pub fn apply(&mut self, circuit: &Circuit) -> Result<()> {
        if circuit.width != self.width {
            return Err(SimError::WidthMismatch { circuit: circuit.width, state: self.width });
        }
        self.conjugate_with(|col| {
            for g in &circuit.gates {
                apply_gate(g, col);
            }
        });
        Ok(())
    }

    fn conjugate_with(&mut self, f: impl Fn(&mut [Complex64])) {
        // U ρ U† = (U (U ρ)†)†, applying U column by column.
        for _ in 0..2 {
            for mut col in self.entries.column_iter_mut() {
                f(col.as_mut_slice());
            }
            self.entries.adjoint_mut();
        }
    }

    /// Reduced state on `keep`; qubit `keep[k]` becomes qubit `k`.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<DensityMatrix> {
        for &q in keep {
            if q >= self.width {
                return Err(SimError::QubitOutOfRange { qubit: q, width: self.width });
            }
        }
        let rest: Vec<usize> = (0..self.width).filter(|q| !keep.contains(q)).collect();
        let scatter = |bits: usize, qs: &[usize]| -> usize { qs.iter().enumerate().map(|(k, &q)| (bits >> k & 1) << q).sum() };
        let da = 1usize << keep.len();
        let a_idx: Vec<usize> = (0..da).map(|i| scatter(i, keep)).collect();
        let mut out = DMatrix::zeros(da, da);
        for b in 0..1usize << rest.len() {
            let off = scatter(b, &rest);
            for i in 0..da {
                for j in 0..da {
                    out[(i, j)] += self.entries[(a_idx[i] | off, a_idx[j] | off)];
                }
            }
        }
        Ok(DensityMatrix { width: keep.len(), entries: out })
    }
}

impl StateVector {
    /// Outer product; see [`DensityMatrix::from_state`].
    pub fn to_density(&self) -> Result<DensityMatrix> {
        DensityMatrix::from_state(self)
    }
}
