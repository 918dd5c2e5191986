//! Entanglement-Hamiltonian fits: minimize
//! `χ² = ⟨Σ_s [P_𝒰(s) − Tr(ρ_A 𝒰|s⟩⟨s|𝒰†)]²⟩_𝒰` over the ansatz weights
//! (and optionally a local channel weight), with multi-start simplex search.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;
use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use schwinger_sim::{task_rng, DensityMatrix, NoiseKind};

use crate::ansatz::{bw_density, EHAnsatz};
use crate::optimize::{nelder_mead, Minimum, NelderMeadConfig};
use crate::record::MeasurementRecord;
use crate::{Result, TomographyError};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FitConfig {
    /// Random starting points in addition to the warm (or zero) start.
    pub starts: usize,
    /// Random starts are uniform in `[−spread, spread]` per weight.
    pub spread: f64,
    pub seed: u64,
    pub simplex: NelderMeadConfig,
    /// Restarts of the simplex around the best point, each with a tenth of
    /// the previous edge length.
    pub polish_rounds: usize,
    pub warm_start: Option<Vec<f64>>,
}

impl Default for FitConfig {
    fn default() -> Self {
        Self { starts: 8, spread: 2.0, seed: 0, simplex: NelderMeadConfig::default(), polish_rounds: 3, warm_start: None }
    }
}

fn serialize_matrix<S: Serializer>(rho: &DensityMatrix, s: S) -> std::result::Result<S::Ok, S::Error> {
    let rows: Vec<Vec<[f64; 2]>> =
        (0..rho.dim()).map(|r| (0..rho.dim()).map(|c| [rho.entries[(r, c)].re, rho.entries[(r, c)].im]).collect()).collect();
    rows.serialize(s)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FitResult {
    pub subsystem: Vec<usize>,
    pub parameters: Vec<f64>,
    pub chi2: f64,
    /// Reconstructed state, as rows of `[re, im]` pairs in JSON.
    #[serde(serialize_with = "serialize_matrix")]
    pub rho_a: DensityMatrix,
    /// Eigenvalues of `rho_a`, descending.
    pub schmidt: Vec<f64>,
    pub noise_kind: Option<NoiseKind>,
    pub noise_p: Option<f64>,
    /// The channel weight sits at its upper bound `1/N_A`.
    pub at_bound: bool,
    pub converged: bool,
    pub iterations: usize,
}

/// `χ²(ρ)` as a quadratic form in the real coordinates of `ρ`, precomputed
/// from the records so that each evaluation is independent of `n_CUE`.
struct Objective {
    dim: usize,
    gram: DMatrix<f64>,
    linear: DVector<f64>,
    constant: f64,
    n_unitaries: f64,
}

/// Unitary of the subsystem's rotations; local qubit `k` is bit `k`.
fn local_unitary(record: &MeasurementRecord, subsystem: &[usize]) -> DMatrix<Complex64> {
    let d = 1usize << subsystem.len();
    let mats: Vec<_> = subsystem.iter().map(|&q| record.angles[q].matrix()).collect();
    DMatrix::from_fn(d, d, |s, i| mats.iter().enumerate().map(|(k, m)| m[s >> k & 1][i >> k & 1]).product())
}

/// Real coordinates: diagonal `Re ρ_ii`, then `(Re ρ_ij, Im ρ_ij)` for `i < j`.
fn coordinates(rho: &DMatrix<Complex64>) -> DVector<f64> {
    let d = rho.nrows();
    let mut r = Vec::with_capacity(d * d);
    r.extend((0..d).map(|i| rho[(i, i)].re));
    for i in 0..d {
        for j in i + 1..d {
            r.push(rho[(i, j)].re);
            r.push(rho[(i, j)].im);
        }
    }
    DVector::from_vec(r)
}

impl Objective {
    fn new(records: &[MeasurementRecord], subsystem: &[usize]) -> Result<Self> {
        if records.is_empty() {
            return Err(TomographyError::NoRecords);
        }
        for r in records {
            if subsystem.iter().any(|&q| q >= r.width()) {
                return Err(TomographyError::BadSubsystem(format!("{subsystem:?} on {} qubits", r.width())));
            }
        }
        let d = 1usize << subsystem.len();
        let rows = records.len() * d;
        let mut a = DMatrix::<f64>::zeros(rows, d * d);
        let mut p = DVector::<f64>::zeros(rows);
        for (u, rec) in records.iter().enumerate() {
            let m = local_unitary(rec, subsystem);
            let probs = rec.marginal_probabilities(subsystem);
            for s in 0..d {
                let row = u * d + s;
                p[row] = probs[s];
                for i in 0..d {
                    a[(row, i)] = m[(s, i)].norm_sqr();
                }
                let mut col = d;
                for i in 0..d {
                    for j in i + 1..d {
                        let w = m[(s, i)] * m[(s, j)].conj();
                        a[(row, col)] = 2.0 * w.re;
                        a[(row, col + 1)] = -2.0 * w.im;
                        col += 2;
                    }
                }
            }
        }
        Ok(Self {
            dim: d,
            gram: a.transpose() * &a,
            linear: a.transpose() * &p,
            constant: p.norm_squared(),
            n_unitaries: records.len() as f64,
        })
    }

    fn chi2(&self, rho: &DMatrix<Complex64>) -> f64 {
        debug_assert_eq!(rho.nrows(), self.dim);
        let r = coordinates(rho);
        let quad = r.dot(&(&self.gram * &r));
        ((quad - 2.0 * self.linear.dot(&r) + self.constant) / self.n_unitaries).max(0.0)
    }
}

/// `χ²` of a given subsystem state against the records, by direct summation.
pub fn chi2(records: &[MeasurementRecord], subsystem: &[usize], rho: &DensityMatrix) -> f64 {
    let total: f64 = records
        .iter()
        .map(|rec| {
            let m = local_unitary(rec, subsystem);
            let rotated = &m * &rho.entries * m.adjoint();
            let probs = rec.marginal_probabilities(subsystem);
            probs.iter().enumerate().map(|(s, p)| (p - rotated[(s, s)].re).powi(2)).sum::<f64>()
        })
        .sum();
    total / records.len() as f64
}

fn descending_eigenvalues(rho: &DensityMatrix) -> Vec<f64> {
    let mut e: Vec<f64> = SymmetricEigen::new(rho.entries.clone()).eigenvalues.iter().copied().collect();
    e.sort_by(|a, b| b.total_cmp(a));
    e
}

struct Model<'a> {
    ansatz: &'a EHAnsatz,
    channel: Option<NoiseKind>,
    p_max: f64,
}

impl Model<'_> {
    fn state(&self, x: &[f64]) -> Result<(DensityMatrix, Option<f64>)> {
        let k = self.ansatz.n_parameters();
        let a = self.ansatz.clone().with_parameters(x[..k].to_vec())?;
        let rho = bw_density(&a)?;
        match self.channel {
            None => Ok((rho, None)),
            Some(kind) => {
                let p = x[k].clamp(0.0, self.p_max);
                Ok((rho.apply_channel(kind, p)?, Some(p)))
            }
        }
    }
}

fn run_fit(records: &[MeasurementRecord], ansatz: &EHAnsatz, channel: Option<NoiseKind>, cfg: &FitConfig) -> Result<FitResult> {
    ansatz.validate()?;
    let subsystem = &ansatz.subsystem;
    let objective = Objective::new(records, subsystem)?;
    let model = Model { ansatz, channel, p_max: 1.0 / ansatz.n_sites() as f64 };
    let k = ansatz.n_parameters();
    let dim = k + usize::from(channel.is_some());
    let f = |x: &[f64]| match model.state(x) {
        Ok((rho, _)) => objective.chi2(&rho.entries),
        Err(_) => f64::INFINITY,
    };

    let mut first = cfg.warm_start.clone().unwrap_or_else(|| ansatz.parameters.clone());
    first.resize(k, 0.0);
    if channel.is_some() {
        first.push(0.5 * model.p_max);
    }
    let mut starts = vec![first];
    for j in 0..cfg.starts {
        let mut rng = task_rng(cfg.seed, &[j as u64]);
        let mut x: Vec<f64> = (0..k).map(|_| rng.random_range(-cfg.spread..=cfg.spread)).collect();
        if channel.is_some() {
            x.push(rng.random_range(0.0..=model.p_max));
        }
        starts.push(x);
    }
    debug_assert!(starts.iter().all(|s| s.len() == dim));
    let runs: Vec<Minimum> = starts.par_iter().map(|x0| nelder_mead(f, x0, &cfg.simplex)).collect();
    let mut best = runs.into_iter().min_by(|a, b| a.value.total_cmp(&b.value)).expect("at least one start");
    let mut simplex = cfg.simplex;
    let mut iterations = best.iterations;
    for _ in 0..cfg.polish_rounds {
        simplex.step *= 0.1;
        let next = nelder_mead(f, &best.x, &simplex);
        iterations += next.iterations;
        let improved = next.value < best.value - cfg.simplex.tolerance;
        if next.value <= best.value {
            best = Minimum { converged: next.converged, ..next };
        }
        if !improved {
            break;
        }
    }

    let (rho_a, noise_p) = model.state(&best.x)?;
    let mut parameters = best.x[..k].to_vec();
    parameters.shrink_to_fit();
    Ok(FitResult {
        subsystem: subsystem.clone(),
        parameters,
        chi2: objective.chi2(&rho_a.entries),
        schmidt: descending_eigenvalues(&rho_a),
        rho_a,
        noise_kind: channel,
        noise_p,
        at_bound: noise_p.is_some_and(|p| p >= model.p_max - 1e-9),
        converged: best.converged,
        iterations,
    })
}

/// Fits the ansatz weights to records of the full register, marginalized to
/// the ansatz subsystem.
pub fn fit_entanglement_hamiltonian(records: &[MeasurementRecord], ansatz: &EHAnsatz, cfg: &FitConfig) -> Result<FitResult> {
    run_fit(records, ansatz, None, cfg)
}

/// Joint fit of the ansatz and a local channel `ℳ` acting on `ρ_A`, with the
/// channel weight confined to `[0, 1/N_A]`.
pub fn fit_with_noise_channel(
    records: &[MeasurementRecord],
    ansatz: &EHAnsatz,
    kind: NoiseKind,
    cfg: &FitConfig,
) -> Result<FitResult> {
    run_fit(records, ansatz, Some(kind), cfg)
}

/// Fits a time series. With `warm`, each fit starts from the previous
/// solution and the chain runs sequentially; otherwise the fits run in
/// parallel from the configured starts only.
pub fn fit_series(series: &[Vec<MeasurementRecord>], ansatz: &EHAnsatz, cfg: &FitConfig, warm: bool) -> Result<Vec<FitResult>> {
    if !warm {
        return series.par_iter().map(|r| fit_entanglement_hamiltonian(r, ansatz, cfg)).collect();
    }
    let mut out: Vec<FitResult> = Vec::with_capacity(series.len());
    for records in series {
        let mut c = cfg.clone();
        if let Some(prev) = out.last() {
            c.warm_start = Some(prev.parameters.clone());
        }
        out.push(fit_entanglement_hamiltonian(records, ansatz, &c)?);
    }
    Ok(out)
}

/// `ΔB = −ln Σ_λ √(p_λ p′_λ)` after sorting both spectra in descending order
/// and zero-padding the shorter; `+∞` for disjoint supports.
pub fn bhattacharyya(p: &[f64], q: &[f64]) -> f64 {
    let sorted = |v: &[f64], n: usize| {
        let mut s: Vec<f64> = v.iter().map(|x| x.max(0.0)).collect();
        s.sort_by(|a, b| b.total_cmp(a));
        s.resize(n, 0.0);
        s
    };
    let n = p.len().max(q.len());
    let (a, b) = (sorted(p, n), sorted(q, n));
    let bc: f64 = a.iter().zip(&b).map(|(x, y)| (x * y).sqrt()).sum();
    if bc <= 0.0 {
        f64::INFINITY
    } else {
        (-bc.ln()).max(0.0)
    }
}
