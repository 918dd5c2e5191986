//! End-to-end sweeps: build circuits, execute them (exact or sampled, with
//! optional channel noise) and estimate observables, in parallel over
//! independent tasks with seeds derived from one master seed.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use schwinger_circuit::{build_ramsey_loschmidt, build_ramsey_necf, NecfComponent, ReadoutBasis};
use schwinger_model::ModelParams;
use schwinger_oracle::rate_function;
use schwinger_sim::{execute, task_rng, NoiseParams, SampleMode};

use crate::estimate::{estimate_loschmidt, estimate_necf, RamseyEstimate};
use crate::grid::NecfGrid;
use crate::postselect::PostselectMode;
use crate::{DqptError, Result};

/// Loschmidt-echo sweep settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoschmidtConfig {
    pub params: ModelParams,
    pub times: Vec<f64>,
    pub mode: SampleMode,
    #[serde(default)]
    pub noise: NoiseParams,
    pub postselect: PostselectMode,
    pub seed: u64,
}

/// One time point of a Loschmidt sweep.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LoschmidtPoint {
    pub t: f64,
    pub estimate: RamseyEstimate,
    /// `Γ = −ln|L|/N` of the estimate.
    pub rate: f64,
}

fn basis_id(b: ReadoutBasis) -> u64 {
    match b {
        ReadoutBasis::X => 0,
        ReadoutBasis::Y => 1,
    }
}

/// Runs both readout bases of the Ramsey circuit at every time.
pub fn run_loschmidt(cfg: &LoschmidtConfig) -> Result<Vec<LoschmidtPoint>> {
    cfg.params.validate()?;
    let n = cfg.params.n;
    cfg.times
        .par_iter()
        .enumerate()
        .map(|(k, &t)| {
            let mut reads = Vec::with_capacity(2);
            let mut phase = 0.0;
            for basis in ReadoutBasis::BOTH {
                let circuit = build_ramsey_loschmidt(&cfg.params, t, basis)?;
                phase = circuit.phase;
                let mut rng = task_rng(cfg.seed, &[k as u64, basis_id(basis)]);
                reads.push(execute(&circuit, cfg.mode, &cfg.noise, &mut rng)?);
            }
            let estimate = estimate_loschmidt(&reads[0], &reads[1], n, n, cfg.postselect, phase)?;
            Ok(LoschmidtPoint { t, estimate, rate: rate_function(estimate.value, n) })
        })
        .collect()
}

/// Correlator-grid sweep settings (free theory, per-mode circuits).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NecfConfig {
    pub params: ModelParams,
    pub times: Vec<f64>,
    pub mode: SampleMode,
    #[serde(default)]
    pub noise: NoiseParams,
    pub seed: u64,
}

/// Measures all eight correlator components per `(q, t)` and recombines them.
pub fn run_necf_grid(cfg: &NecfConfig) -> Result<NecfGrid> {
    cfg.params.validate()?;
    if cfg.params.e != 0.0 {
        return Err(DqptError::Interacting);
    }
    let momenta: Vec<i64> = cfg.params.momenta().collect();
    let tasks: Vec<(usize, usize)> =
        (0..momenta.len()).flat_map(|i| (0..cfg.times.len()).map(move |k| (i, k))).collect();
    let values: Vec<Complex64> = tasks
        .par_iter()
        .map(|&(i, k)| {
            let (q, t) = (momenta[i], cfg.times[k]);
            let mut parts = Vec::with_capacity(8);
            for (ci, comp) in NecfComponent::all().into_iter().enumerate() {
                let mut reads = Vec::with_capacity(2);
                for basis in ReadoutBasis::BOTH {
                    let circuit = build_ramsey_necf(&cfg.params, q, t, comp, basis)?;
                    let path = [i as u64, k as u64, ci as u64, basis_id(basis)];
                    reads.push(execute(&circuit, cfg.mode, &cfg.noise, &mut task_rng(cfg.seed, &path))?);
                }
                // Both branches keep each mode at even occupancy.
                let est = estimate_loschmidt(&reads[0], &reads[1], 2, 2, PostselectMode::MomentumPairs, 0.0)?;
                parts.push((comp, est.value));
            }
            estimate_necf(&parts)
        })
        .collect::<Result<_>>()?;
    let t_len = cfg.times.len();
    Ok(NecfGrid {
        params: cfg.params.clone(),
        momenta,
        times: cfg.times.clone(),
        values: values.chunks(t_len).map(|c| c.to_vec()).collect(),
    })
}
