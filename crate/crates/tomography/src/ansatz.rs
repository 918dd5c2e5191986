//! Local entanglement-Hamiltonian ansatz `ρ_A ∝ e^{−H_A}` with independent
//! weights on site densities, nearest-neighbour hoppings and currents, and
//! next-nearest-neighbour hoppings of the subsystem's fermions.

use nalgebra::{DMatrix, SymmetricEigen};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use schwinger_oracle::hop;
use schwinger_sim::DensityMatrix;

use crate::{Result, TomographyError};

/// Largest subsystem the dense ansatz is built for.
pub const MAX_SUBSYSTEM: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EhTermKind {
    /// `ψ†_n ψ_n` (staggering absorbed into the weight).
    Mass,
    /// `ψ†_n ψ_{n+1} + h.c.`
    Hop,
    /// `i(ψ†_n ψ_{n+1} − h.c.)`
    Current,
    /// `ψ†_n ψ_{n+2} + h.c.`
    NextHop,
}

/// One operator of the ansatz, acting on positions `a`, `b` of the subsystem
/// list (`a = b` for a density).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EhTerm {
    pub kind: EhTermKind,
    pub a: usize,
    pub b: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EHAnsatz {
    /// Ordered sites of `A`; position `k` is local qubit `k`.
    pub subsystem: Vec<usize>,
    pub terms: Vec<EhTerm>,
    pub parameters: Vec<f64>,
}

impl EHAnsatz {
    /// All terms for `subsystem`, zero weights: `N_A` densities, `N_A − 1`
    /// hoppings and currents, `N_A − 2` next-nearest hoppings (4 parameters
    /// at `N_A = 2`, 12 at `N_A = 4`).
    pub fn new(subsystem: Vec<usize>) -> Result<Self> {
        let n = subsystem.len();
        if n == 0 || n > MAX_SUBSYSTEM {
            return Err(TomographyError::BadAnsatz(format!("subsystem of {n} sites")));
        }
        let mut terms: Vec<EhTerm> = (0..n).map(|k| EhTerm { kind: EhTermKind::Mass, a: k, b: k }).collect();
        for k in 0..n.saturating_sub(1) {
            terms.push(EhTerm { kind: EhTermKind::Hop, a: k, b: k + 1 });
        }
        for k in 0..n.saturating_sub(1) {
            terms.push(EhTerm { kind: EhTermKind::Current, a: k, b: k + 1 });
        }
        for k in 0..n.saturating_sub(2) {
            terms.push(EhTerm { kind: EhTermKind::NextHop, a: k, b: k + 2 });
        }
        let parameters = vec![0.0; terms.len()];
        let a = Self { subsystem, terms, parameters };
        a.validate()?;
        Ok(a)
    }

    pub fn with_parameters(mut self, parameters: Vec<f64>) -> Result<Self> {
        self.parameters = parameters;
        self.validate()?;
        Ok(self)
    }

    pub fn n_sites(&self) -> usize {
        self.subsystem.len()
    }

    pub fn n_parameters(&self) -> usize {
        self.terms.len()
    }

    /// Supports inside `A`, distinct sites, one finite weight per term.
    pub fn validate(&self) -> Result<()> {
        let n = self.n_sites();
        for (k, s) in self.subsystem.iter().enumerate() {
            if self.subsystem[..k].contains(s) {
                return Err(TomographyError::BadAnsatz(format!("site {s} repeated")));
            }
        }
        if self.terms.iter().any(|t| t.a >= n || t.b >= n) {
            return Err(TomographyError::BadAnsatz("term support outside the subsystem".into()));
        }
        if self.parameters.len() != self.terms.len() {
            return Err(TomographyError::BadAnsatz(format!(
                "{} parameters for {} terms",
                self.parameters.len(),
                self.terms.len()
            )));
        }
        if self.parameters.iter().any(|p| !p.is_finite()) {
            return Err(TomographyError::BadAnsatz("non-finite parameter".into()));
        }
        Ok(())
    }

    /// Matrix of one term on the `2^{N_A}` local register (occupied = bit 0).
    pub fn operator(&self, term: &EhTerm) -> DMatrix<Complex64> {
        let d = 1usize << self.n_sites();
        let mut m = DMatrix::<Complex64>::zeros(d, d);
        // ψ†_i ψ_j with Jordan-Wigner signs in subsystem order.
        let mut add = |i: usize, j: usize, w: Complex64| {
            for s in 0..d {
                if let Some((s2, sign)) = hop(s, i, j) {
                    m[(s2, s)] += w * sign;
                }
            }
        };
        let one = Complex64::new(1.0, 0.0);
        let i = Complex64::i();
        match term.kind {
            EhTermKind::Mass => add(term.a, term.a, one),
            EhTermKind::Hop | EhTermKind::NextHop => {
                add(term.a, term.b, one);
                add(term.b, term.a, one);
            }
            EhTermKind::Current => {
                add(term.a, term.b, i);
                add(term.b, term.a, -i);
            }
        }
        m
    }

    /// `H_A = Σ_j θ_j O_j`.
    pub fn hamiltonian(&self) -> DMatrix<Complex64> {
        let d = 1usize << self.n_sites();
        self.terms
            .iter()
            .zip(&self.parameters)
            .fold(DMatrix::zeros(d, d), |acc, (t, &w)| acc + self.operator(t) * Complex64::new(w, 0.0))
    }
}

/// `e^{−H}/Tr e^{−H}` for a Hermitian `H`, shifted by its smallest eigenvalue
/// for stability.
pub fn gibbs(h: &DMatrix<Complex64>) -> DMatrix<Complex64> {
    let eig = SymmetricEigen::new(h.clone());
    let lo = eig.eigenvalues.iter().copied().fold(f64::INFINITY, f64::min);
    let w: Vec<f64> = eig.eigenvalues.iter().map(|&e| (-(e - lo)).exp()).collect();
    let z: f64 = w.iter().sum();
    let v = &eig.eigenvectors;
    let scaled = DMatrix::from_fn(v.nrows(), v.ncols(), |r, c| v[(r, c)] * (w[c] / z));
    let rho = scaled * v.adjoint();
    (&rho + rho.adjoint()) * Complex64::new(0.5, 0.0)
}

/// Normalized `ρ_A = e^{−H_A}/Tr e^{−H_A}` of the ansatz.
pub fn bw_density(ansatz: &EHAnsatz) -> Result<DensityMatrix> {
    ansatz.validate()?;
    Ok(DensityMatrix::from_matrix(gibbs(&ansatz.hamiltonian()))?)
}
