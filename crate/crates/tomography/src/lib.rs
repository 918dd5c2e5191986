//! Randomized-measurement tomography of small registers: records of
//! random-basis readouts, overlap/purity/Rényi/fidelity estimators, bootstrap
//! errors, and fits of a local entanglement-Hamiltonian ansatz (optionally
//! through a noise channel) to the measured distributions.

pub mod ansatz;
pub mod bootstrap;
pub mod estimate;
pub mod fit;
pub mod optimize;
pub mod record;

pub use ansatz::{bw_density, gibbs, EHAnsatz, EhTerm, EhTermKind, MAX_SUBSYSTEM};
pub use bootstrap::bootstrap;
pub use estimate::{
    estimate_overlap, estimate_overlap_with, fidelity, loschmidt_from_overlap, overlap_samples, pure_qubit_haar_estimate,
    purity, renyi2, standard_error, total_renyi, HammingSign, RenyiEstimate,
};
pub use fit::{
    bhattacharyya, chi2, fit_entanglement_hamiltonian, fit_series, fit_with_noise_channel, FitConfig, FitResult,
};
pub use optimize::{nelder_mead, NelderMeadConfig, Minimum};
pub use record::{measure_density, measure_state, random_angles, AcquisitionConfig, MeasurementRecord};

use schwinger_circuit::CircuitError;
use schwinger_sim::SimError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum TomographyError {
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error("unitary {0} has no partner in the other record set")]
    UnpairedUnitary(u64),
    #[error("unitary {0} appears twice in one record set")]
    DuplicateUnitary(u64),
    #[error("invalid subsystem: {0}")]
    BadSubsystem(String),
    #[error("invalid record: {0}")]
    InvalidRecord(String),
    #[error("no records")]
    NoRecords,
    #[error("purity estimate {0} is not positive; entropy undefined")]
    NonPositivePurity(f64),
    #[error("bootstrap needs shot counts, not exact probabilities")]
    BootstrapNeedsCounts,
    #[error("bootstrap needs at least two successful copies (got {0})")]
    TooFewCopies(usize),
    #[error("invalid ansatz: {0}")]
    BadAnsatz(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, TomographyError>;
