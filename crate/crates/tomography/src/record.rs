//! Measurement records: one random single-qubit basis per qubit plus the
//! resulting outcome table, and their acquisition from simulated states.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use schwinger_circuit::{cue_layer_from_angles, sample_cue, zyz_angles, CueAngles};
use schwinger_sim::{bitstring, parse_bitstring, task_rng, DensityMatrix, NoiseParams, Outcomes, SampleMode, StateVector};

use crate::{Result, TomographyError};

/// Outcomes of one random-basis setting. Bit `k` of an outcome index is qubit `k`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RecordJson", into = "RecordJson")]
pub struct MeasurementRecord {
    pub unitary_id: u64,
    /// Euler angles of qubit `k`'s rotation.
    pub angles: Vec<CueAngles>,
    pub outcomes: Outcomes,
}

/// On-disk form: outcome tables keyed by bitstrings (qubit 0 leftmost).
#[derive(Debug, Clone, Serialize, Deserialize)]
struct RecordJson {
    unitary_id: u64,
    angles: Vec<CueAngles>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    n_shots: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    counts: Option<BTreeMap<String, u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    probabilities: Option<BTreeMap<String, f64>>,
}

impl From<MeasurementRecord> for RecordJson {
    fn from(r: MeasurementRecord) -> Self {
        let width = r.outcomes.width();
        let (counts, probabilities) = match &r.outcomes {
            Outcomes::Counts { counts, .. } => {
                (Some(counts.iter().map(|(&i, &n)| (bitstring(i, width), n)).collect()), None)
            }
            Outcomes::Exact { probabilities, .. } => (
                None,
                Some(
                    probabilities
                        .iter()
                        .enumerate()
                        .filter(|(_, &p)| p != 0.0)
                        .map(|(i, &p)| (bitstring(i, width), p))
                        .collect(),
                ),
            ),
        };
        RecordJson { unitary_id: r.unitary_id, n_shots: r.outcomes.n_shots(), angles: r.angles, counts, probabilities }
    }
}

impl TryFrom<RecordJson> for MeasurementRecord {
    type Error = TomographyError;

    fn try_from(j: RecordJson) -> Result<Self> {
        let width = j.angles.len();
        let index = |s: &str| -> Result<usize> {
            if s.len() != width {
                return Err(TomographyError::InvalidRecord(format!("bitstring {s:?} does not have {width} bits")));
            }
            Ok(parse_bitstring(s)?)
        };
        let outcomes = match (j.counts, j.probabilities) {
            (Some(c), None) => {
                let counts = c.iter().map(|(s, &n)| Ok((index(s)?, n))).collect::<Result<BTreeMap<_, _>>>()?;
                if let Some(n) = j.n_shots {
                    let total: u64 = counts.values().sum();
                    if total != n {
                        return Err(TomographyError::InvalidRecord(format!("counts sum to {total}, n_shots is {n}")));
                    }
                }
                Outcomes::Counts { width, counts }
            }
            (None, Some(p)) => {
                let mut probabilities = vec![0.0; 1 << width];
                for (s, &w) in &p {
                    probabilities[index(s)?] = w;
                }
                Outcomes::Exact { width, probabilities }
            }
            _ => return Err(TomographyError::InvalidRecord("exactly one of counts or probabilities required".into())),
        };
        let r = MeasurementRecord { unitary_id: j.unitary_id, angles: j.angles, outcomes };
        r.validate()?;
        Ok(r)
    }
}

impl MeasurementRecord {
    pub fn width(&self) -> usize {
        self.angles.len()
    }

    /// Angles match the outcome width; probabilities are non-negative and
    /// sum to one, or counts are non-empty.
    pub fn validate(&self) -> Result<()> {
        if self.outcomes.width() != self.width() {
            return Err(TomographyError::InvalidRecord(format!(
                "{} angle triples for {} measured qubits",
                self.width(),
                self.outcomes.width()
            )));
        }
        match &self.outcomes {
            Outcomes::Exact { probabilities, .. } => {
                let total: f64 = probabilities.iter().sum();
                if probabilities.iter().any(|&p| !(p >= -1e-12)) || (total - 1.0).abs() > 1e-9 {
                    return Err(TomographyError::InvalidRecord(format!("probabilities sum to {total}")));
                }
            }
            Outcomes::Counts { counts, .. } => {
                if counts.values().sum::<u64>() == 0 {
                    return Err(TomographyError::InvalidRecord("no shots".into()));
                }
            }
        }
        Ok(())
    }

    /// Normalized outcome distribution on `qubits` (qubit `qubits[k]` → bit `k`).
    pub fn marginal_probabilities(&self, qubits: &[usize]) -> Vec<f64> {
        self.outcomes.marginal(qubits).probabilities()
    }
}

/// Settings for simulated randomized measurements.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AcquisitionConfig {
    /// Number of random unitaries `n_CUE`.
    pub n_cue: usize,
    pub mode: SampleMode,
    #[serde(default)]
    pub noise: NoiseParams,
    /// Seed of the unitary ensemble; equal seeds give identical bases, as
    /// needed for cross-correlating two states.
    pub unitary_seed: u64,
    /// Seed of the shot noise.
    pub shot_seed: u64,
}

/// The Euler angles of unitary `id` on `width` qubits (a pure function of the seed and id).
pub fn random_angles(width: usize, seed: u64, id: u64) -> Vec<CueAngles> {
    let mut rng = task_rng(seed, &[0, id]);
    (0..width)
        .map(|_| zyz_angles(&sample_cue(&mut rng)).expect("sampled matrices are unitary"))
        .collect()
}

fn acquire(width: usize, cfg: &AcquisitionConfig, probs: impl Fn(&[CueAngles]) -> Result<Vec<f64>> + Sync) -> Result<Vec<MeasurementRecord>> {
    (0..cfg.n_cue as u64)
        .into_par_iter()
        .map(|id| {
            let angles = random_angles(width, cfg.unitary_seed, id);
            let p: Vec<f64> = probs(&angles)?.into_iter().map(|x| x.max(0.0)).collect();
            let outcomes = Outcomes::read(p, cfg.mode, &mut task_rng(cfg.shot_seed, &[1, id]))?;
            Ok(MeasurementRecord { unitary_id: id, angles, outcomes })
        })
        .collect()
}

/// Randomized measurements of a pure state; channel noise, if any, acts on the
/// rotated state right before readout.
pub fn measure_state(state: &StateVector, cfg: &AcquisitionConfig) -> Result<Vec<MeasurementRecord>> {
    if !cfg.noise.is_noiseless() {
        return measure_density(&DensityMatrix::from_state(state)?, cfg);
    }
    acquire(state.width, cfg, |angles| Ok(state.clone().evolved(&cue_layer_from_angles(angles))?.probabilities()))
}

/// Randomized measurements of a mixed state.
pub fn measure_density(rho: &DensityMatrix, cfg: &AcquisitionConfig) -> Result<Vec<MeasurementRecord>> {
    cfg.noise.validate(rho.width)?;
    acquire(rho.width, cfg, |angles| {
        let mut r = rho.clone();
        r.apply(&cue_layer_from_angles(angles))?;
        Ok(cfg.noise.apply(&r)?.probabilities())
    })
}
