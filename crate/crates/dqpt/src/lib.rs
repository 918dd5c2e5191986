//! Quench observables from Ramsey measurements: postselected Loschmidt-echo
//! estimates and rate functions, per-mode non-equal-time correlators, the
//! topological index `ν(t)` and the critical-time estimate.

pub mod estimate;
pub mod grid;
pub mod io;
pub mod peak;
pub mod pipeline;
pub mod postselect;
pub mod topo;

pub use estimate::{estimate_loschmidt, estimate_necf, ramsey_component, RamseyEstimate};
pub use grid::NecfGrid;
pub use io::{write_loschmidt_csv, write_necf_csv, write_nu_csv};
pub use peak::{dqpt_time, PeakEstimate};
pub use pipeline::{run_loschmidt, run_necf_grid, LoschmidtConfig, LoschmidtPoint, NecfConfig};
pub use postselect::{postselect_bitstring, postselect_symmetry, PostselectMode};
pub use topo::{nu_oracle, nu_trajectory, topological_index, TopoIndex};

use schwinger_circuit::CircuitError;
use schwinger_model::ModelError;
use schwinger_oracle::OracleError;
use schwinger_sim::SimError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DqptError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Sim(#[from] SimError),
    #[error("no shots survived postselection")]
    EmptyPostselection,
    #[error("correlator component {0} missing")]
    MissingComponent(String),
    #[error("|g| below 1e-9 on the contour at q = {q}, t = {t}")]
    VortexOnContour { q: i64, t: f64 },
    #[error("phase step {step:.3} exceeds π/2 at q = {q}, t = {t}; refine the time grid")]
    GridTooCoarse { q: i64, t: f64, step: f64 },
    #[error("time {t} outside the grid [{start}, {stop}]")]
    TimeOutOfGrid { t: f64, start: f64, stop: f64 },
    #[error("no interior maximum among the samples")]
    NoInteriorMaximum,
    #[error("need at least {need} samples, got {got}")]
    TooFewSamples { need: usize, got: usize },
    #[error("the per-mode correlator circuits require e = 0")]
    Interacting,
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, DqptError>;
