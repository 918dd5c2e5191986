//! Gate-level intermediate representation and circuit builders.
//!
//! Builders emit [`Circuit`] values over the shared qubit layout of
//! `schwinger-model`: qubit `k` is bit `k` of a basis index, `|0⟩` is an
//! occupied mode, and Ramsey circuits put their ancilla on qubit `N`.

pub mod builders;
pub mod circuit;
pub mod cue;
pub mod export;
pub mod gate;
pub mod ramsey;

pub use builders::*;
pub use circuit::{apply_reference, Circuit, GateCounts, RawCounts};
pub use cue::{build_cue_layer, cue_layer_from_angles, sample_cue, unitarity_error, zyz_angles, CueAngles};
pub use gate::{Gate, GateKind, Mat2};
pub use ramsey::*;

use schwinger_model::ModelError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CircuitError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("gate {gate} expects a different number of qubits (got {got})")]
    Arity { gate: &'static str, got: usize },
    #[error("qubit {qubit} outside circuit width {width}")]
    QubitOutOfRange { qubit: usize, width: usize },
    #[error("qubit {qubit} used twice in one gate")]
    RepeatedQubit { qubit: usize },
    #[error("gate {gate} has a non-finite angle")]
    NonFiniteAngle { gate: &'static str },
    #[error("unsupported lattice size N = {n}: N/2 must be a power of two")]
    UnsupportedSize { n: usize },
    #[error("dense expansion limited to {max} qubits (width {width})")]
    TooWide { width: usize, max: usize },
    #[error("input matrix is not unitary")]
    NotUnitary,
    #[error("circuit JSON: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, CircuitError>;
