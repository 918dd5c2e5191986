//! Readout: exact probability tables or finite-shot count tables.

use std::collections::BTreeMap;

use rand::Rng;
use rand_distr::{Binomial, Distribution};
use serde::{Deserialize, Serialize};

use crate::{Result, SimError};

/// How a circuit's output distribution is read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleMode {
    /// Exact Born probabilities.
    ExactProb,
    /// Multinomial sample of the given number of shots.
    Shots(u64),
}

/// Outcome distribution over `width`-bit strings (bit `k` = qubit `k`).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Outcomes {
    Exact { width: usize, probabilities: Vec<f64> },
    Counts { width: usize, counts: BTreeMap<usize, u64> },
}

impl Outcomes {
    pub fn from_probabilities(probabilities: Vec<f64>) -> Self {
        let width = probabilities.len().trailing_zeros() as usize;
        Outcomes::Exact { width, probabilities }
    }

    /// Exact table, or a sample drawn from it.
    pub fn read(probabilities: Vec<f64>, mode: SampleMode, rng: &mut impl Rng) -> Result<Self> {
        match mode {
            SampleMode::ExactProb => Ok(Self::from_probabilities(probabilities)),
            SampleMode::Shots(n) => {
                let width = probabilities.len().trailing_zeros() as usize;
                Ok(Outcomes::Counts { width, counts: sample_shots(&probabilities, n, rng)? })
            }
        }
    }

    pub fn width(&self) -> usize {
        match self {
            Outcomes::Exact { width, .. } | Outcomes::Counts { width, .. } => *width,
        }
    }

    /// Number of shots, `None` for exact tables.
    pub fn n_shots(&self) -> Option<u64> {
        match self {
            Outcomes::Exact { .. } => None,
            Outcomes::Counts { counts, .. } => Some(counts.values().sum()),
        }
    }

    /// `(index, weight)` pairs with non-zero weight; weights are
    /// probabilities or counts.
    pub fn weights(&self) -> Vec<(usize, f64)> {
        match self {
            Outcomes::Exact { probabilities, .. } => {
                probabilities.iter().enumerate().filter(|(_, &p)| p != 0.0).map(|(i, &p)| (i, p)).collect()
            }
            Outcomes::Counts { counts, .. } => {
                counts.iter().filter(|(_, &n)| n != 0).map(|(&i, &n)| (i, n as f64)).collect()
            }
        }
    }

    /// Sum of all weights.
    pub fn total(&self) -> f64 {
        self.weights().iter().map(|w| w.1).sum()
    }

    /// Normalized probability vector of length `2^width`.
    pub fn probabilities(&self) -> Vec<f64> {
        let mut p = vec![0.0; 1 << self.width()];
        let total = self.total();
        if total > 0.0 {
            for (i, w) in self.weights() {
                p[i] = w / total;
            }
        }
        p
    }

    /// Keeps only outcomes satisfying `keep` (no renormalization).
    pub fn filter(&self, keep: impl Fn(usize) -> bool) -> Self {
        match self {
            Outcomes::Exact { width, probabilities } => Outcomes::Exact {
                width: *width,
                probabilities: probabilities.iter().enumerate().map(|(i, &p)| if keep(i) { p } else { 0.0 }).collect(),
            },
            Outcomes::Counts { width, counts } => Outcomes::Counts {
                width: *width,
                counts: counts.iter().filter(|(&i, _)| keep(i)).map(|(&i, &n)| (i, n)).collect(),
            },
        }
    }

    /// Marginal on `qubits`; qubit `qubits[k]` becomes bit `k`.
    pub fn marginal(&self, qubits: &[usize]) -> Self {
        let gather = |i: usize| -> usize { qubits.iter().enumerate().map(|(k, &q)| (i >> q & 1) << k).sum() };
        match self {
            Outcomes::Exact { probabilities, .. } => {
                let mut p = vec![0.0; 1 << qubits.len()];
                for (i, &w) in probabilities.iter().enumerate() {
                    p[gather(i)] += w;
                }
                Outcomes::Exact { width: qubits.len(), probabilities: p }
            }
            Outcomes::Counts { counts, .. } => {
                let mut c = BTreeMap::new();
                for (&i, &n) in counts {
                    *c.entry(gather(i)).or_insert(0) += n;
                }
                Outcomes::Counts { width: qubits.len(), counts: c }
            }
        }
    }
}

/// Multinomial draw of `n_shots` outcomes by sequential conditional binomials.
pub fn sample_shots(probabilities: &[f64], n_shots: u64, rng: &mut impl Rng) -> Result<BTreeMap<usize, u64>> {
    if n_shots == 0 {
        return Err(SimError::NoShots);
    }
    let mut out = BTreeMap::new();
    let mut remaining = n_shots;
    let mut mass: f64 = probabilities.iter().map(|p| p.max(0.0)).sum();
    for (i, &p) in probabilities.iter().enumerate() {
        if remaining == 0 {
            break;
        }
        let p = p.max(0.0);
        if p == 0.0 {
            continue;
        }
        let frac = if mass > 0.0 { (p / mass).min(1.0) } else { 1.0 };
        let k = if frac >= 1.0 {
            remaining
        } else {
            Binomial::new(remaining, frac).expect("probability in [0, 1]").sample(rng)
        };
        if k > 0 {
            out.insert(i, k);
        }
        remaining -= k;
        mass -= p;
    }
    if remaining > 0 {
        // Rounding left mass unassigned; give it to the most likely outcome.
        let best = probabilities.iter().enumerate().max_by(|a, b| a.1.total_cmp(b.1)).map(|x| x.0).unwrap_or(0);
        *out.entry(best).or_insert(0) += remaining;
    }
    Ok(out)
}

/// Bitstring with qubit 0 as the leftmost character.
pub fn bitstring(index: usize, width: usize) -> String {
    (0..width).map(|k| if index >> k & 1 == 1 { '1' } else { '0' }).collect()
}

/// Inverse of [`bitstring`].
pub fn parse_bitstring(s: &str) -> Result<usize> {
    s.chars().enumerate().try_fold(0usize, |acc, (k, ch)| match ch {
        '0' => Ok(acc),
        '1' => Ok(acc | 1 << k),
        _ => Err(SimError::BadBitstring(s.to_string())),
    })
}
