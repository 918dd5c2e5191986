//! Execution backends for [`schwinger_circuit::Circuit`]: pure-state
//! amplitudes with in-place stride kernels, dense density matrices for mixed
//! states, exact or finite-shot readout, and local decoherence channels.

pub mod density;
pub mod kernels;
pub mod noise;
pub mod outcomes;
pub mod run;
pub mod seed;
pub mod state;

pub use density::{DensityMatrix, MAX_DENSITY_WIDTH};
pub use kernels::apply_gate;
pub use noise::{apply_trajectory_noise, NoiseKind, NoiseParams};
pub use outcomes::{bitstring, parse_bitstring, sample_shots, Outcomes, SampleMode};
pub use run::{execute, final_probabilities};
pub use seed::{substream_seed, task_rng};
pub use state::StateVector;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("circuit width {circuit} does not match state width {state}")]
    WidthMismatch { circuit: usize, state: usize },
    #[error("amplitude vector length {0} is not a power of two")]
    NotPowerOfTwo(usize),
    #[error("state norm {0} differs from 1")]
    NotNormalized(f64),
    #[error("density-matrix mode is limited to {max} qubits (width {width})")]
    TooWide { width: usize, max: usize },
    #[error("noise weight {p} outside [0, 1/{n}]")]
    NoiseOutOfRange { p: f64, n: usize },
    #[error("qubit {qubit} outside width {width}")]
    QubitOutOfRange { qubit: usize, width: usize },
    #[error("n_shots must be at least 1")]
    NoShots,
    #[error("invalid bitstring {0:?}")]
    BadBitstring(String),
}

pub type Result<T> = std::result::Result<T, SimError>;
