//! Ground-truth engines for the lattice Schwinger model quench: closed-form
//! free-theory observables, the Gaussian correlation matrix and entanglement
//! spectrum, and dense exact-diagonalization evolution at any coupling.

pub mod analytic;
pub mod brute;
pub mod ed;
pub mod gaussian;

pub use analytic::{loschmidt_analytic, necf_analytic, rate_function};
pub use brute::{fermion_correlation, inner, reduced_density_matrix, schmidt_spectrum, spectrum_of};
pub use ed::{
    exact_evolve, expm_hermitian, half_filling_basis, hop, particle_number, position_hamiltonian, propagator,
    ExactPropagator, DEFAULT_DENSE_LIMIT,
};
pub use gaussian::{
    correlation_matrix, free_entanglement_spectrum, sort_desc, CorrelationMatrix, EntanglementSpectrum,
    SchmidtSpectrum,
};

use schwinger_model::ModelError;
use thiserror::Error;

/// Default clip width for occupation eigenvalues near 0 or 1.
pub const DEFAULT_CLIP: f64 = 1e-12;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OracleError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("closed forms hold only for the free theory (e = {e})")]
    Interacting { e: f64 },
    #[error("N = {n} exceeds the dense limit of {limit} sites")]
    DenseLimit { n: usize, limit: usize },
    #[error("correlation matrix is not Hermitian (deviation {0:e})")]
    NotHermitian(f64),
    #[error("occupation eigenvalue {0} outside [0, 1]")]
    OccupationOutOfRange(f64),
}

pub type Result<T> = std::result::Result<T, OracleError>;
