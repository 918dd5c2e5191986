//! Cross-correlation estimators of `Tr(ρ₁ρ₂)` from randomized measurements,
//! and the purities, Rényi entropies and fidelities built on them.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use schwinger_circuit::cue_layer_from_angles;
use schwinger_sim::{DensityMatrix, Outcomes};

use crate::record::MeasurementRecord;
use crate::{Result, TomographyError};

/// Sign of the Hamming-distance exponent in the kernel `2^{N_A}(−2)^{∓D}`.
/// Only [`HammingSign::Negative`] gives an unbiased estimator; the other is
/// kept to demonstrate that.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum HammingSign {
    /// `(−2)^{−D}`.
    Negative,
    /// `(−2)^{+D}`.
    Positive,
}

impl HammingSign {
    /// Per-qubit kernel entries `(equal bits, different bits)`; their
    /// `N_A`-fold product is `2^{N_A}(−2)^{∓D}`.
    fn per_qubit(self) -> (f64, f64) {
        match self {
            HammingSign::Negative => (2.0, -1.0),
            HammingSign::Positive => (2.0, -4.0),
        }
    }
}

/// `K·v` for the product kernel, one qubit at a time.
fn apply_kernel(v: &[f64], n_a: usize, sign: HammingSign) -> Vec<f64> {
    let (a, b) = sign.per_qubit();
    let mut out = v.to_vec();
    for k in 0..n_a {
        let m = 1 << k;
        for i in 0..out.len() {
            if i & m == 0 {
                let (x, y) = (out[i], out[i | m]);
                out[i] = a * x + b * y;
                out[i | m] = b * x + a * y;
            }
        }
    }
    out
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn check_subsystem(records: &[MeasurementRecord], subsystem: &[usize]) -> Result<()> {
    let width = records.first().ok_or(TomographyError::NoRecords)?.width();
    if subsystem.is_empty() {
        return Err(TomographyError::BadSubsystem("empty".into()));
    }
    for (k, &q) in subsystem.iter().enumerate() {
        if q >= width || subsystem[..k].contains(&q) {
            return Err(TomographyError::BadSubsystem(format!("{subsystem:?} on {width} qubits")));
        }
    }
    if records.iter().any(|r| r.width() != width) {
        return Err(TomographyError::InvalidRecord("records of different widths".into()));
    }
    Ok(())
}

/// Single-unitary estimate `Σ K(s₁,s₂) P₁(s₁) P₂(s₂)` on the subsystem
/// (NaN for a self-overlap from fewer than two shots).
fn unitary_term(r1: &MeasurementRecord, r2: &MeasurementRecord, subsystem: &[usize], same: bool, sign: HammingSign) -> f64 {
    let n_a = subsystem.len();
    let m1 = r1.outcomes.marginal(subsystem);
    if same {
        if let Outcomes::Counts { counts, .. } = &m1 {
            // Unbiased over distinct shot pairs: drop the diagonal s₁ = s₂ of the same shot.
            let mut n = vec![0.0; 1 << n_a];
            for (&i, &c) in counts {
                n[i] = c as f64;
            }
            let total: f64 = n.iter().sum();
            if total < 2.0 {
                return f64::NAN;
            }
            let k_diag = sign.per_qubit().0.powi(n_a as i32);
            return (dot(&n, &apply_kernel(&n, n_a, sign)) - k_diag * total) / (total * (total - 1.0));
        }
    }
    let p1 = m1.probabilities();
    let p2 = r2.marginal_probabilities(subsystem);
    dot(&p1, &apply_kernel(&p2, n_a, sign))
}

/// A per-unitary term for every pair of records sharing a `unitary_id`.
fn paired_terms(
    records1: &[MeasurementRecord],
    records2: &[MeasurementRecord],
    mut term: impl FnMut(&MeasurementRecord, &MeasurementRecord) -> f64,
) -> Result<Vec<f64>> {
    let mut by_id: HashMap<u64, &MeasurementRecord> = HashMap::with_capacity(records2.len());
    for r in records2 {
        if by_id.insert(r.unitary_id, r).is_some() {
            return Err(TomographyError::DuplicateUnitary(r.unitary_id));
        }
    }
    if records1.len() != records2.len() {
        let ids1: Vec<u64> = records1.iter().map(|r| r.unitary_id).collect();
        let lone = records2.iter().find(|r| !ids1.contains(&r.unitary_id)).map(|r| r.unitary_id);
        return Err(TomographyError::UnpairedUnitary(lone.unwrap_or(0)));
    }
    records1
        .iter()
        .map(|r1| {
            let r2 = by_id.get(&r1.unitary_id).ok_or(TomographyError::UnpairedUnitary(r1.unitary_id))?;
            Ok(term(r1, r2))
        })
        .collect()
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

/// Per-unitary estimates of `Tr(ρ₁ρ₂)` (in the order of `records1`); their
/// mean is [`estimate_overlap_with`] and their spread the ensemble error.
pub fn overlap_samples(
    records1: &[MeasurementRecord],
    records2: &[MeasurementRecord],
    subsystem: &[usize],
    sign: HammingSign,
) -> Result<Vec<f64>> {
    check_subsystem(records1, subsystem)?;
    check_subsystem(records2, subsystem)?;
    let same = std::ptr::eq(records1, records2);
    paired_terms(records1, records2, |a, b| unitary_term(a, b, subsystem, same, sign))
}

/// Standard error of the mean of per-unitary samples.
pub fn standard_error(samples: &[f64]) -> f64 {
    let n = samples.len() as f64;
    if n < 2.0 {
        return f64::INFINITY;
    }
    let m = mean(samples);
    (samples.iter().map(|x| (x - m).powi(2)).sum::<f64>() / (n - 1.0) / n).sqrt()
}

/// `Tr(ρ₁ρ₂)` on `subsystem` with the kernel of the given sign. Records are
/// paired by `unitary_id`. When both arguments are the same slice of shot
/// records, same-shot pairs are excluded so the purity estimate is unbiased.
pub fn estimate_overlap_with(
    records1: &[MeasurementRecord],
    records2: &[MeasurementRecord],
    subsystem: &[usize],
    sign: HammingSign,
) -> Result<f64> {
    Ok(mean(&overlap_samples(records1, records2, subsystem, sign)?))
}

/// `Tr(ρ₁ρ₂) = ⟨2^{N_A} Σ (−2)^{−D(s₁,s₂)} P¹(s₁) P²(s₂)⟩` on `subsystem`.
pub fn estimate_overlap(records1: &[MeasurementRecord], records2: &[MeasurementRecord], subsystem: &[usize]) -> Result<f64> {
    estimate_overlap_with(records1, records2, subsystem, HammingSign::Negative)
}

/// `Tr ρ_A²`.
pub fn purity(records: &[MeasurementRecord], subsystem: &[usize]) -> Result<f64> {
    estimate_overlap(records, records, subsystem)
}

fn entropy_of(p: f64) -> Result<f64> {
    if !(p > 0.0) {
        return Err(TomographyError::NonPositivePurity(p));
    }
    Ok(-p.log2())
}

/// Second Rényi entropy of a subsystem and of its complement.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RenyiEstimate {
    pub purity: f64,
    /// `S⁽²⁾_A` in bits.
    pub entropy: f64,
    /// Purity and entropy of the complement `B`, when it is non-empty.
    pub complement: Option<(f64, f64)>,
}

impl RenyiEstimate {
    /// `(S_A + S_B)/2`, or `S_A` without a complement.
    pub fn mean(&self) -> f64 {
        self.complement.map_or(self.entropy, |(_, sb)| 0.5 * (self.entropy + sb))
    }

    /// `S_A − S_B`, a proxy for the finite-ensemble error on pure global states.
    pub fn difference(&self) -> f64 {
        self.complement.map_or(0.0, |(_, sb)| self.entropy - sb)
    }
}

/// `S⁽²⁾ = −log₂ Tr ρ_A²` for `subsystem` and its complement among the measured qubits.
pub fn renyi2(records: &[MeasurementRecord], subsystem: &[usize]) -> Result<RenyiEstimate> {
    let pa = purity(records, subsystem)?;
    let width = records[0].width();
    let rest: Vec<usize> = (0..width).filter(|q| !subsystem.contains(q)).collect();
    let complement = if rest.is_empty() {
        None
    } else {
        let pb = purity(records, &rest)?;
        Some((pb, entropy_of(pb)?))
    };
    Ok(RenyiEstimate { purity: pa, entropy: entropy_of(pa)?, complement })
}

/// `S⁽²⁾` of the whole measured register.
pub fn total_renyi(records: &[MeasurementRecord]) -> Result<f64> {
    let all: Vec<usize> = (0..records.first().ok_or(TomographyError::NoRecords)?.width()).collect();
    Ok(renyi2(records, &all)?.entropy)
}

/// `ℱ = Tr(ρ ρ_e)/√(Tr ρ² Tr ρ_e²)` with `ρ` the measured state and `ρ_e` a
/// classical reference, whose outcome probabilities are computed under the
/// same unitaries and fed through the same estimator.
pub fn fidelity(records: &[MeasurementRecord], rho_exact: &DensityMatrix) -> Result<f64> {
    let all: Vec<usize> = (0..records.first().ok_or(TomographyError::NoRecords)?.width()).collect();
    check_subsystem(records, &all)?;
    if rho_exact.width != all.len() {
        return Err(TomographyError::InvalidRecord(format!(
            "reference has {} qubits, records have {}",
            rho_exact.width,
            all.len()
        )));
    }
    let reference = records
        .iter()
        .map(|r| {
            let mut rho = rho_exact.clone();
            rho.apply(&cue_layer_from_angles(&r.angles))?;
            Ok(MeasurementRecord {
                unitary_id: r.unitary_id,
                angles: r.angles.clone(),
                outcomes: Outcomes::from_probabilities(rho.probabilities()),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let cross = estimate_overlap(records, &reference, &all)?;
    let pm = purity(records, &all)?;
    let pe = purity(&reference, &all)?;
    if !(pm > 0.0) {
        return Err(TomographyError::NonPositivePurity(pm));
    }
    Ok(cross / (pm * pe).sqrt())
}

/// `|L(t)|² ≈ Tr[ρ(0)ρ(t)]/√(Tr ρ(0)² Tr ρ(t)²)` from full-register records
/// taken with a shared unitary ensemble.
pub fn loschmidt_from_overlap(records_t0: &[MeasurementRecord], records_t: &[MeasurementRecord]) -> Result<f64> {
    let all: Vec<usize> = (0..records_t0.first().ok_or(TomographyError::NoRecords)?.width()).collect();
    let cross = estimate_overlap(records_t0, records_t, &all)?;
    let p0 = purity(records_t0, &all)?;
    let pt = purity(records_t, &all)?;
    if !(p0 > 0.0) {
        return Err(TomographyError::NonPositivePurity(p0));
    }
    if !(pt > 0.0) {
        return Err(TomographyError::NonPositivePurity(pt));
    }
    Ok(cross / (p0 * pt).sqrt())
}

/// Haar average of the single-unitary purity estimate of a pure qubit. The
/// outcome probability `p = (1 + u)/2` of a Haar-random basis has `u` uniform
/// on `[−1, 1]`; the average is taken by midpoint quadrature.
pub fn pure_qubit_haar_estimate(sign: HammingSign) -> f64 {
    const NODES: usize = 20_000;
    (0..NODES)
        .map(|k| {
            let u = -1.0 + 2.0 * (k as f64 + 0.5) / NODES as f64;
            let p = [(1.0 + u) / 2.0, (1.0 - u) / 2.0];
            dot(&p, &apply_kernel(&p, 1, sign))
        })
        .sum::<f64>()
        / NODES as f64
}
