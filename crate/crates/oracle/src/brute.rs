//! Brute-force state-vector utilities: partial traces, Schmidt spectra and
//! fermion bilinears computed directly from amplitudes.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;

use crate::ed::hop;
use crate::gaussian::SchmidtSpectrum;

/// `ρ_A = Tr_B |ψ⟩⟨ψ|` keeping `keep` (qubit `keep[k]` becomes bit `k` of ρ_A's index).
pub fn reduced_density_matrix(state: &[Complex64], keep: &[usize]) -> DMatrix<Complex64> {
    let n = state.len().trailing_zeros() as usize;
    let rest: Vec<usize> = (0..n).filter(|q| !keep.contains(q)).collect();
    let da = 1usize << keep.len();
    let db = 1usize << rest.len();
    let scatter = |bits: usize, qubits: &[usize]| -> usize {
        qubits.iter().enumerate().map(|(k, &q)| ((bits >> k) & 1) << q).sum()
    };
    let a_idx: Vec<usize> = (0..da).map(|i| scatter(i, keep)).collect();
    let b_idx: Vec<usize> = (0..db).map(|i| scatter(i, &rest)).collect();
    let mut rho = DMatrix::<Complex64>::zeros(da, da);
    for &b in &b_idx {
        for i in 0..da {
            let ai = state[a_idx[i] | b];
            if ai == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..da {
                rho[(i, j)] += ai * state[a_idx[j] | b].conj();
            }
        }
    }
    rho
}

/// Eigenvalues of a Hermitian density matrix, sorted descending.
pub fn spectrum_of(rho: &DMatrix<Complex64>) -> SchmidtSpectrum {
    let e = SymmetricEigen::new(rho.clone()).eigenvalues;
    SchmidtSpectrum::new(e.iter().copied().collect())
}

/// Schmidt probabilities of `state` for the bipartition `keep | rest`.
pub fn schmidt_spectrum(state: &[Complex64], keep: &[usize]) -> SchmidtSpectrum {
    spectrum_of(&reduced_density_matrix(state, keep))
}

/// `⟨ψ|ψ†_i ψ_j|ψ⟩` for all site pairs.
pub fn fermion_correlation(state: &[Complex64], n: usize) -> DMatrix<Complex64> {
    let mut g = DMatrix::<Complex64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let mut acc = Complex64::new(0.0, 0.0);
            for (s, &amp) in state.iter().enumerate() {
                if let Some((s2, sign)) = hop(s, i, j) {
                    acc += state[s2].conj() * amp * sign;
                }
            }
            g[(i, j)] = acc;
        }
    }
    g
}

/// `⟨a|b⟩`.
pub fn inner(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}
