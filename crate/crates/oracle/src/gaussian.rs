//! Free-fermion (Gaussian) description of the quenched state: the equal-time
//! correlation matrix and the entanglement spectrum it determines.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use schwinger_model::{bogoliubov_matrix, mode_hamiltonian, MassSign, ModelParams};

use crate::{OracleError, Result};

/// `G_{n₁n₂}(t) = ⟨ψ†_{n₁} ψ_{n₂}⟩` in the evolving state.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    pub entries: DMatrix<Complex64>,
    pub t: f64,
}

impl CorrelationMatrix {
    /// Submatrix on the given sites, in the given order.
    pub fn restrict(&self, sites: &[usize]) -> DMatrix<Complex64> {
        DMatrix::from_fn(sites.len(), sites.len(), |i, j| self.entries[(sites[i], sites[j])])
    }

    pub fn trace(&self) -> f64 {
        self.entries.diagonal().iter().map(|z| z.re).sum()
    }

    pub fn hermiticity_error(&self) -> f64 {
        (&self.entries - self.entries.adjoint()).camax()
    }

    /// Eigenvalues in ascending order.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut e: Vec<f64> = SymmetricEigen::new(self.entries.clone()).eigenvalues.iter().copied().collect();
        e.sort_by(f64::total_cmp);
        e
    }
}

/// Correlation matrix after the free quench `m → −m`.
///
/// Each mode starts in the lower-band spinor of `h_q(+m)` and rotates under
/// `h_q(−m)`; `G` is the supercell Fourier sum of the evolved spinor bilinears.
pub fn correlation_matrix(params: &ModelParams, t: f64) -> Result<CorrelationMatrix> {
    params.validate()?;
    if params.e != 0.0 {
        return Err(OracleError::Interacting { e: params.e });
    }
    let n = params.n;
    let cells = n / 2;
    let mut g = DMatrix::<Complex64>::zeros(n, n);
    for q in params.momenta() {
        let u = bogoliubov_matrix(params, q, MassSign::Plus)?;
        let lower = [u[(0, 1)], u[(1, 1)]];
        let h = mode_hamiltonian(params, q, MassSign::Minus)?;
        let w = schwinger_model::dispersion(params, q)?;
        let (s, c) = (w * t).sin_cos();
        // exp(−i h t) = cos(ωt) − i sin(ωt) h/ω since h² = ω².
        let phi: [Complex64; 2] = std::array::from_fn(|r| {
            let hv = h[(r, 0)] * lower[0] + h[(r, 1)] * lower[1];
            lower[r] * c - Complex64::i() * hv * (s / w)
        });
        let k = 2.0 * std::f64::consts::PI * q as f64 / cells as f64;
        for n1 in 0..n {
            for n2 in 0..n {
                let dcell = (n1 / 2) as f64 - (n2 / 2) as f64;
                let z = Complex64::from_polar(1.0 / cells as f64, k * dcell);
                g[(n1, n2)] += z * phi[n1 % 2].conj() * phi[n2 % 2];
            }
        }
    }
    Ok(CorrelationMatrix { entries: g, t })
}

/// Descending Schmidt probabilities of a reduced density matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct SchmidtSpectrum {
    pub probabilities: Vec<f64>,
}

impl SchmidtSpectrum {
    pub fn new(mut probabilities: Vec<f64>) -> Self {
        sort_desc(&mut probabilities);
        Self { probabilities }
    }

    pub fn purity(&self) -> f64 {
        self.probabilities.iter().map(|p| p * p).sum()
    }

    /// Second Rényi entropy in bits.
    pub fn renyi2(&self) -> f64 {
        -self.purity().log2()
    }
}

/// Single-particle data of a Gaussian reduced state.
#[derive(Debug, Clone, PartialEq)]
pub struct EntanglementSpectrum {
    /// Eigenvalues `𝒢_n` of `G_A`, descending, after clipping.
    pub occupations: Vec<f64>,
    /// Finite single-particle levels `−ln[𝒢/(1−𝒢)]`.
    pub levels: Vec<f64>,
    pub schmidt: SchmidtSpectrum,
}

/// Entanglement spectrum from a subsystem correlation matrix; eigenvalues
/// within `clip` of 0 or 1 are treated as exactly 0 or 1 (infinite levels,
/// omitted from `levels` but kept as deterministic factors).
pub fn free_entanglement_spectrum(g_a: &DMatrix<Complex64>, clip: f64) -> Result<EntanglementSpectrum> {
    let herm = (g_a - g_a.adjoint()).camax();
    if herm > 1e-8 {
        return Err(OracleError::NotHermitian(herm));
    }
    let eig = SymmetricEigen::new(g_a.clone());
    let mut occ: Vec<f64> = Vec::with_capacity(g_a.nrows());
    for &e in eig.eigenvalues.iter() {
        if !(-1e-8..=1.0 + 1e-8).contains(&e) {
            return Err(OracleError::OccupationOutOfRange(e));
        }
        occ.push(if e < clip {
            0.0
        } else if e > 1.0 - clip {
            1.0
        } else {
            e
        });
    }
    sort_desc(&mut occ);
    let levels = occ.iter().filter(|&&g| g > 0.0 && g < 1.0).map(|&g| -(g / (1.0 - g)).ln()).collect();
    let na = occ.len();
    let probs = (0..1usize << na)
        .map(|mask| (0..na).map(|k| if mask >> k & 1 == 1 { occ[k] } else { 1.0 - occ[k] }).product())
        .collect();
    Ok(EntanglementSpectrum { occupations: occ, levels, schmidt: SchmidtSpectrum::new(probs) })
}

/// Sorts in descending order.
pub fn sort_desc(v: &mut [f64]) {
    v.sort_by(|a, b| b.total_cmp(a));
}
