//! Exact diagonalization of the position-space Hamiltonian
//! `H(m) = H₀(m) + H_I` under the Jordan-Wigner mapping (string from site 0).

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use schwinger_model::{interaction_hamiltonian_terms, is_occupied, ModelParams};

use crate::{OracleError, Result};

/// Largest lattice handled by the dense engine unless overridden.
pub const DEFAULT_DENSE_LIMIT: usize = 12;

fn occupied_below(state: usize, site: usize) -> u32 {
    (!state & ((1usize << site) - 1)).count_ones()
}

/// `ψ†_i ψ_j |s⟩ = sign |s'⟩`, or `None` when it annihilates `|s⟩`.
/// Basis states use the register encoding (bit `k` clear ↔ site `k` occupied).
pub fn hop(state: usize, i: usize, j: usize) -> Option<(usize, f64)> {
    if !is_occupied(state, j) {
        return None;
    }
    if i == j {
        return Some((state, 1.0));
    }
    let s1 = state | (1 << j);
    if is_occupied(s1, i) {
        return None;
    }
    let parity = occupied_below(state, j) + occupied_below(s1, i);
    let sign = if parity % 2 == 0 { 1.0 } else { -1.0 };
    Some((s1 & !(1 << i), sign))
}

/// Number of occupied sites in a basis state.
pub fn particle_number(n: usize, state: usize) -> usize {
    (0..n).filter(|&k| is_occupied(state, k)).count()
}

fn hamiltonian_on(params: &ModelParams, mass: f64, interaction: bool, basis: &[usize]) -> Result<DMatrix<f64>> {
    let n = params.n;
    let dim = basis.len();
    let mut index = HashMap::with_capacity(dim);
    for (k, &s) in basis.iter().enumerate() {
        index.insert(s, k);
    }
    let terms = if interaction { Some(interaction_hamiltonian_terms(params)?) } else { None };
    let t_hop = 1.0 / (2.0 * params.a);
    let mut h = DMatrix::<f64>::zeros(dim, dim);
    for (col, &s) in basis.iter().enumerate() {
        let mut diag = 0.0;
        for site in 0..n {
            if is_occupied(s, site) {
                diag += if site % 2 == 0 { mass } else { -mass };
            }
        }
        if let Some(t) = &terms {
            diag += t.diagonal_energy(s);
        }
        h[(col, col)] += diag;
        for site in 0..n {
            let next = (site + 1) % n;
            for (i, j) in [(site, next), (next, site)] {
                if let Some((s2, sign)) = hop(s, i, j) {
                    if let Some(&row) = index.get(&s2) {
                        h[(row, col)] += t_hop * sign;
                    }
                }
            }
        }
    }
    Ok(h)
}

/// Dense `2^N × 2^N` position-space Hamiltonian with mass `mass` (already
/// signed, θ folded in by the caller) and optionally the interaction.
pub fn position_hamiltonian(params: &ModelParams, mass: f64, interaction: bool) -> Result<DMatrix<f64>> {
    params.validate()?;
    let basis: Vec<usize> = (0..1usize << params.n).collect();
    hamiltonian_on(params, mass, interaction, &basis)
}

/// Half-filling basis states in ascending order.
pub fn half_filling_basis(n: usize) -> Vec<usize> {
    (0..1usize << n).filter(|&s| particle_number(n, s) == n / 2).collect()
}

/// Cached spectral data for the quench `GS(m) → e^{−iH(−m)t}`.
#[derive(Debug, Clone)]
pub struct ExactPropagator {
    pub params: ModelParams,
    basis: Vec<usize>,
    energies: DVector<f64>,
    vectors: DMatrix<f64>,
    /// Initial state expanded in the post-quench eigenbasis.
    weights: DVector<f64>,
    ground: DVector<f64>,
}

impl ExactPropagator {
    pub fn new(params: &ModelParams) -> Result<Self> {
        Self::with_limit(params, DEFAULT_DENSE_LIMIT)
    }

    pub fn with_limit(params: &ModelParams, limit: usize) -> Result<Self> {
        params.validate()?;
        if params.n > limit {
            return Err(OracleError::DenseLimit { n: params.n, limit });
        }
        let basis = half_filling_basis(params.n);
        let mu = params.effective_mass();
        let h0 = hamiltonian_on(params, mu, false, &basis)?;
        let g = SymmetricEigen::new(h0);
        let k = g.eigenvalues.imin();
        let ground = g.eigenvectors.column(k).into_owned();
        let hq = hamiltonian_on(params, -mu, true, &basis)?;
        let eig = SymmetricEigen::new(hq);
        let weights = eig.eigenvectors.transpose() * &ground;
        Ok(Self { params: *params, basis, energies: eig.eigenvalues, vectors: eig.eigenvectors, weights, ground })
    }

    fn expand(&self, sector: &DVector<Complex64>) -> Vec<Complex64> {
        let mut full = vec![Complex64::new(0.0, 0.0); 1 << self.params.n];
        for (k, &s) in self.basis.iter().enumerate() {
            full[s] = sector[k];
        }
        full
    }

    /// Pre-quench ground state `|GS(m)⟩` on the full register.
    pub fn ground_state(&self) -> Vec<Complex64> {
        self.expand(&self.ground.map(Complex64::from))
    }

    /// `e^{−iH(−m)t}|GS(m)⟩` on the full register.
    pub fn evolve(&self, t: f64) -> Vec<Complex64> {
        let coeffs = DVector::from_iterator(
            self.energies.len(),
            self.energies.iter().zip(self.weights.iter()).map(|(&e, &w)| Complex64::from_polar(w, -e * t)),
        );
        let sector = self.vectors.map(Complex64::from) * coeffs;
        self.expand(&sector)
    }

    /// `⟨GS(m)|e^{−iH(−m)t}|GS(m)⟩`, including the interaction's constant part.
    pub fn loschmidt(&self, t: f64) -> Complex64 {
        self.energies
            .iter()
            .zip(self.weights.iter())
            .map(|(&e, &w)| Complex64::from_polar(w * w, -e * t))
            .sum()
    }

    /// `⟨H(−m)⟩` in the evolving state; time independent.
    pub fn quench_energy(&self) -> f64 {
        self.energies.iter().zip(self.weights.iter()).map(|(&e, &w)| e * w * w).sum()
    }

    /// Ground-state energy of `H₀(m)` in the half-filled sector.
    pub fn ground_energy(&self) -> f64 {
        let h0 = hamiltonian_on(&self.params, self.params.effective_mass(), false, &self.basis)
            .expect("parameters validated at construction");
        (self.ground.transpose() * h0 * &self.ground)[(0, 0)]
    }
}

type CacheKey = (usize, u64, u64, u64, u64);

fn cache() -> &'static RwLock<HashMap<CacheKey, Arc<ExactPropagator>>> {
    static CACHE: OnceLock<RwLock<HashMap<CacheKey, Arc<ExactPropagator>>>> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

/// Shared propagator for `params`, built once per parameter set.
pub fn propagator(params: &ModelParams) -> Result<Arc<ExactPropagator>> {
    let key = (params.n, params.a.to_bits(), params.m.to_bits(), params.e.to_bits(), params.theta.to_bits());
    if let Some(p) = cache().read().expect("cache poisoned").get(&key) {
        return Ok(Arc::clone(p));
    }
    let built = Arc::new(ExactPropagator::new(params)?);
    let mut w = cache().write().expect("cache poisoned");
    Ok(Arc::clone(w.entry(key).or_insert(built)))
}

/// `e^{−iH(−m)t}|GS(m)⟩` on the full `2^N` register.
pub fn exact_evolve(params: &ModelParams, t: f64) -> Result<Vec<Complex64>> {
    Ok(propagator(params)?.evolve(t))
}

/// `exp(−iHt)` of a real symmetric matrix.
pub fn expm_hermitian(h: &DMatrix<f64>, t: f64) -> DMatrix<Complex64> {
    let eig = SymmetricEigen::new(h.clone());
    let v = eig.eigenvectors.map(Complex64::from);
    let d = DMatrix::from_diagonal(&eig.eigenvalues.map(|e| Complex64::from_polar(1.0, -e * t)));
    &v * d * v.adjoint()
}
