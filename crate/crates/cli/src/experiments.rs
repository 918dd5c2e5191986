//! One driver per experiment kind. Each returns its data table, the matching
//! oracle table on the same grid, and the checks that decide pass/fail.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use schwinger_circuit::build_quenched_state;
use schwinger_dqpt::{
    dqpt_time, nu_oracle, nu_trajectory, run_loschmidt, run_necf_grid, write_loschmidt_csv, write_necf_csv, write_nu_csv,
    LoschmidtConfig, LoschmidtPoint, NecfConfig, NecfGrid, PostselectMode, RamseyEstimate, TopoIndex,
};
use schwinger_model::ModelParams;
use schwinger_oracle::{
    correlation_matrix, free_entanglement_spectrum, loschmidt_analytic, propagator, rate_function, schmidt_spectrum,
    DEFAULT_CLIP,
};
use schwinger_sim::{substream_seed, SampleMode, StateVector};
use schwinger_tomography::{
    bhattacharyya, bootstrap, fidelity, fit_series, fit_with_noise_channel, loschmidt_from_overlap, measure_state,
    overlap_samples, renyi2, standard_error, total_renyi, AcquisitionConfig, EHAnsatz, FitConfig, FitResult,
    HammingSign, MeasurementRecord, TomographyError,
};

use crate::compare::{compare, CompareOptions, CompareReport};
use crate::config::{ExperimentConfig, ExperimentKind};
use crate::gates::{gate_report, gate_report_csv};
use crate::table::Table;
use crate::Result;

/// A file produced by a run, relative to the output directory.
#[derive(Debug, Clone, PartialEq)]
pub struct Artifact {
    pub name: String,
    pub bytes: Vec<u8>,
}

impl Artifact {
    fn new(name: &str, bytes: Vec<u8>) -> Self {
        Self { name: name.into(), bytes }
    }
}

/// A named pass/fail test on the run's output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub detail: String,
    pub pass: bool,
}

impl Check {
    fn new(name: &str, detail: String, pass: bool) -> Self {
        Self { name: name.into(), detail, pass }
    }

    fn from_report(name: &str, r: &CompareReport) -> Self {
        let detail = r
            .columns
            .iter()
            .map(|c| format!("{}: max|Δ| {:.3e}, {}/{} ({})", c.column, c.max_abs, c.within, c.points, c.criterion))
            .collect::<Vec<_>>()
            .join("; ");
        Self::new(name, detail, r.pass)
    }
}

/// Everything an experiment produced, before it is written out.
#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub artifacts: Vec<Artifact>,
    /// Data file plotted against the oracle file.
    pub data_file: String,
    pub oracle_file: Option<String>,
    pub checks: Vec<Check>,
    pub comparison: Option<CompareReport>,
}

pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    cfg.validate()?;
    match cfg.kind {
        ExperimentKind::Loschmidt => loschmidt(cfg),
        ExperimentKind::Necf => necf(cfg),
        ExperimentKind::TopoIndex => topo(cfg),
        ExperimentKind::Tomography => tomography(cfg),
        ExperimentKind::EhFit => eh_fit(cfg),
        ExperimentKind::OverlapLoschmidt => overlap_loschmidt(cfg),
        ExperimentKind::GateReport => gates(),
    }
}

/// Exact `L(t)`: closed form at `e = 0`, exact diagonalization otherwise.
pub fn loschmidt_oracle(params: &ModelParams, t: f64) -> Result<Complex64> {
    if params.e == 0.0 {
        Ok(loschmidt_analytic(params, t)?)
    } else {
        Ok(propagator(params)?.loschmidt(t))
    }
}

/// Exact Schmidt spectrum of `sites` (descending): Gaussian at `e = 0`,
/// exact diagonalization otherwise.
pub fn schmidt_oracle(params: &ModelParams, t: f64, sites: &[usize]) -> Result<Vec<f64>> {
    if params.e == 0.0 {
        let g = correlation_matrix(params, t)?;
        Ok(free_entanglement_spectrum(&g.restrict(sites), DEFAULT_CLIP)?.schmidt.probabilities)
    } else {
        Ok(schmidt_spectrum(&propagator(params)?.evolve(t), sites).probabilities)
    }
}

fn renyi_of(spectrum: &[f64]) -> f64 {
    -spectrum.iter().map(|p| p * p).sum::<f64>().log2()
}

fn exact_point(t: f64, l: Complex64, n: usize) -> LoschmidtPoint {
    let estimate = RamseyEstimate { value: l, sigma_re: 0.0, sigma_im: 0.0, n_kept: 0, n_total: 0, kept_fraction: 1.0 };
    LoschmidtPoint { t, estimate, rate: rate_function(l, n) }
}

fn csv_bytes(f: impl FnOnce(&mut Vec<u8>) -> schwinger_dqpt::Result<()>) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    f(&mut buf)?;
    Ok(buf)
}

/// Relative agreement of two peak times, when both rate functions have one.
fn peak_check(times: &[f64], run: &[f64], oracle: &[f64], tolerance: f64) -> Check {
    match (dqpt_time(times, run), dqpt_time(times, oracle)) {
        (Ok(a), Ok(b)) => {
            let rel = (a.t - b.t).abs() / b.t;
            Check::new(
                "dqpt-time",
                format!("peak at t = {:.4} (Γ = {:.4}) vs exact {:.4} (Γ = {:.4}); relative offset {:.2}%", a.t, a.value, b.t, b.value, 100.0 * rel),
                rel <= tolerance,
            )
        }
        (a, b) => Check::new("dqpt-time", format!("no interior peak (run: {}, exact: {})", a.is_ok(), b.is_ok()), false),
    }
}

fn loschmidt(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let p = cfg.params;
    let times = cfg.grid.times();
    let postselect = if cfg.postselect { PostselectMode::for_params(&p) } else { PostselectMode::Off };
    let points = run_loschmidt(&LoschmidtConfig {
        params: p,
        times: times.clone(),
        mode: cfg.sample_mode(),
        noise: cfg.noise,
        postselect,
        seed: cfg.seed_or_default(),
    })?;
    let oracle: Vec<LoschmidtPoint> =
        times.par_iter().map(|&t| Ok(exact_point(t, loschmidt_oracle(&p, t)?, p.n))).collect::<Result<_>>()?;
    let data = csv_bytes(|b| write_loschmidt_csv(b, &points))?;
    let exact = csv_bytes(|b| write_loschmidt_csv(b, &oracle))?;

    let opts = CompareOptions { columns: Some(vec!["re".into(), "im".into()]), ..Default::default() };
    let report = compare(&Table::from_csv(&data)?, &Table::from_csv(&exact)?, &opts)?;
    let mut checks = Vec::new();
    if p.e == 0.0 {
        checks.push(Check::from_report("oracle-agreement", &report));
    }
    if times.len() >= 5 {
        let run_rate: Vec<f64> = points.iter().map(|x| x.rate).collect();
        let exact_rate: Vec<f64> = oracle.iter().map(|x| x.rate).collect();
        checks.push(peak_check(&times, &run_rate, &exact_rate, 0.05));
    }
    Ok(ExperimentOutput {
        artifacts: vec![Artifact::new("loschmidt.csv", data), Artifact::new("oracle.csv", exact)],
        data_file: "loschmidt.csv".into(),
        oracle_file: Some("oracle.csv".into()),
        checks,
        comparison: Some(report),
    })
}

fn necf_run(cfg: &ExperimentConfig) -> Result<NecfGrid> {
    Ok(run_necf_grid(&NecfConfig {
        params: cfg.params,
        times: cfg.grid.times(),
        mode: cfg.sample_mode(),
        noise: cfg.noise,
        seed: cfg.seed_or_default(),
    })?)
}

fn necf(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let grid = necf_run(cfg)?;
    let exact = NecfGrid::analytic(&cfg.params, &grid.times)?;
    let data = csv_bytes(|b| write_necf_csv(b, &grid))?;
    let oracle = csv_bytes(|b| write_necf_csv(b, &exact))?;
    // Eight components of standard error ≤ 1/√n each, weights ¼.
    let tolerance = match cfg.sample_mode() {
        SampleMode::ExactProb => 1e-8,
        SampleMode::Shots(n) => 5.0 * (0.5 / n as f64).sqrt(),
    };
    let opts = CompareOptions { columns: Some(vec!["re".into(), "im".into()]), tolerance, ..Default::default() };
    let report = compare(&Table::from_csv(&data)?, &Table::from_csv(&oracle)?, &opts)?;
    Ok(ExperimentOutput {
        artifacts: vec![Artifact::new("necf.csv", data), Artifact::new("oracle.csv", oracle)],
        data_file: "necf.csv".into(),
        oracle_file: Some("oracle.csv".into()),
        checks: vec![Check::from_report("oracle-agreement", &report)],
        comparison: Some(report),
    })
}

fn topo(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let grid = necf_run(cfg)?;
    let nu: Vec<TopoIndex> = nu_trajectory(&grid)?;
    let exact = nu_oracle(&cfg.params, &grid.times)?;
    let data = csv_bytes(|b| write_nu_csv(b, &nu))?;
    let oracle = csv_bytes(|b| write_nu_csv(b, &exact))?;
    let opts = CompareOptions { columns: Some(vec!["nu".into()]), ..Default::default() };
    let report = compare(&Table::from_csv(&data)?, &Table::from_csv(&oracle)?, &opts)?;
    let worst = nu.iter().map(|r| (r.raw - r.raw.round()).abs()).fold(0.0, f64::max);
    let checks = vec![
        Check::from_report("nu-sequence", &report),
        Check::new("nu-integer", format!("max |ν − round(ν)| = {worst:.2e}"), worst < 0.05),
    ];
    Ok(ExperimentOutput {
        artifacts: vec![
            Artifact::new("nu.csv", data),
            Artifact::new("oracle.csv", oracle),
            Artifact::new("necf.csv", csv_bytes(|b| write_necf_csv(b, &grid))?),
        ],
        data_file: "nu.csv".into(),
        oracle_file: Some("oracle.csv".into()),
        checks,
        comparison: Some(report),
    })
}

/// Ideal circuit state at time `t` in the position register.
pub fn circuit_state(params: &ModelParams, t: f64) -> Result<StateVector> {
    Ok(StateVector::zero(params.n).evolved(&build_quenched_state(params, t)?)?)
}

/// Randomized-measurement records at every grid time, sharing one unitary
/// ensemble; shot noise is drawn independently per time.
pub fn acquire_series(cfg: &ExperimentConfig, times: &[f64]) -> Result<Vec<(StateVector, Vec<MeasurementRecord>)>> {
    let seed = cfg.seed_or_default();
    times
        .iter()
        .enumerate()
        .map(|(k, &t)| {
            let state = circuit_state(&cfg.params, t)?;
            let acq = AcquisitionConfig {
                n_cue: cfg.n_cue,
                mode: cfg.sample_mode(),
                noise: cfg.noise,
                unitary_seed: seed,
                shot_seed: substream_seed(seed, &[1, k as u64]),
            };
            let records = measure_state(&state, &acq)?;
            Ok((state, records))
        })
        .collect()
}

/// Estimator failures caused by sampling (negative purity) become NaN.
fn or_nan(r: std::result::Result<f64, TomographyError>) -> Result<f64> {
    match r {
        Ok(v) => Ok(v),
        Err(TomographyError::NonPositivePurity(_)) => Ok(f64::NAN),
        Err(e) => Err(e.into()),
    }
}

const TOMOGRAPHY_COLUMNS: [&str; 11] =
    ["t", "s_a", "s_b", "s_mean", "sigma_boot", "sigma_diff", "sigma_s_mean", "s_total", "fidelity", "n_cue", "n_shots"];

fn tomography(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let p = cfg.params;
    let times = cfg.grid.times();
    let sub = cfg.subsystem_or_default();
    let rest: Vec<usize> = (0..p.n).filter(|s| !sub.contains(s)).collect();
    let series = acquire_series(cfg, &times)?;
    let seed = cfg.seed_or_default();
    let n_shots = match cfg.sample_mode() {
        SampleMode::Shots(n) => n as f64,
        SampleMode::ExactProb => 0.0,
    };

    let rows: Vec<(Vec<f64>, Vec<f64>)> = series
        .par_iter()
        .zip(&times)
        .enumerate()
        .map(|(k, ((state, records), &t))| {
            let (s_a, s_b, s_mean, diff) = match renyi2(records, &sub) {
                Ok(e) => {
                    let s_b = e.complement.map_or(f64::NAN, |c| c.1);
                    (e.entropy, s_b, e.mean(), e.difference().abs())
                }
                Err(TomographyError::NonPositivePurity(_)) => (f64::NAN, f64::NAN, f64::NAN, f64::NAN),
                Err(e) => return Err(e.into()),
            };
            let sigma_boot = match cfg.sample_mode() {
                SampleMode::Shots(_) => {
                    let est = |r: &[MeasurementRecord]| Ok(renyi2(r, &sub)?.mean());
                    or_nan(bootstrap(records, cfg.bootstrap, substream_seed(seed, &[2, k as u64]), est))?
                }
                SampleMode::ExactProb => {
                    // Unitary-ensemble standard error propagated to the entropy.
                    let samples = overlap_samples(records, records, &sub, HammingSign::Negative)?;
                    let purity = samples.iter().sum::<f64>() / samples.len() as f64;
                    standard_error(&samples) / (purity * std::f64::consts::LN_2)
                }
            };
            let s_total = or_nan(total_renyi(records))?;
            let f = or_nan(fidelity(records, &state.to_density()?))?;
            let row = vec![t, s_a, s_b, s_mean, sigma_boot, diff, sigma_boot + diff, s_total, f, cfg.n_cue as f64, n_shots];

            let ea = renyi_of(&schmidt_oracle(&p, t, &sub)?);
            let eb = if rest.is_empty() { f64::NAN } else { renyi_of(&schmidt_oracle(&p, t, &rest)?) };
            let mean = if rest.is_empty() { ea } else { 0.5 * (ea + eb) };
            let exact = vec![t, ea, eb, mean, 0.0, 0.0, 0.0, 0.0, 1.0, cfg.n_cue as f64, n_shots];
            Ok((row, exact))
        })
        .collect::<Result<_>>()?;
    let mut data = Table::new(TOMOGRAPHY_COLUMNS);
    let mut oracle = Table::new(TOMOGRAPHY_COLUMNS);
    for (r, e) in rows {
        data.push(r);
        oracle.push(e);
    }

    // The entropy error is the bootstrap spread plus the A/B difference.
    let opts = CompareOptions {
        columns: Some(vec!["s_mean".into()]),
        n_sigma: 1.0,
        coverage: 0.9,
        tolerance: 0.0,
        ..Default::default()
    };
    let report = compare(&data, &oracle, &opts)?;
    let ideal = cfg.noise.is_noiseless();
    let total = data.column("s_total").unwrap_or_default();
    let fid = data.column("fidelity").unwrap_or_default();
    let worst_total = total.iter().fold(0.0f64, |m, x| if x.is_nan() { f64::NAN } else { m.max(x.abs()) });
    let worst_fid = fid.iter().fold(0.0f64, |m, x| if x.is_nan() { f64::NAN } else { m.max((x - 1.0).abs()) });
    let mut checks = vec![Check::from_report("entropy-vs-oracle", &report)];
    if ideal {
        checks.push(Check::new("total-entropy", format!("max |S_(A+B)| = {worst_total:.4}"), worst_total <= 0.05));
        checks.push(Check::new("fidelity", format!("max |ℱ − 1| = {worst_fid:.4}"), worst_fid <= 0.02));
    }
    Ok(ExperimentOutput {
        artifacts: vec![Artifact::new("tomography.csv", data.to_csv()?), Artifact::new("oracle.csv", oracle.to_csv()?)],
        data_file: "tomography.csv".into(),
        oracle_file: Some("oracle.csv".into()),
        checks,
        comparison: Some(report),
    })
}

fn padded(mut v: Vec<f64>, d: usize) -> Vec<f64> {
    v.resize(d, 0.0);
    v
}

/// Fits to a series of records, chained or with a noise channel.
pub fn fit_records(cfg: &ExperimentConfig, series: &[Vec<MeasurementRecord>]) -> Result<Vec<FitResult>> {
    let ansatz = EHAnsatz::new(cfg.subsystem_or_default())?;
    let fit_cfg = FitConfig { seed: cfg.seed_or_default(), ..FitConfig::default() };
    match cfg.noise_fit {
        None => Ok(fit_series(series, &ansatz, &fit_cfg, cfg.warm_start)?),
        Some(kind) => series
            .par_iter()
            .map(|r| Ok(fit_with_noise_channel(r, &ansatz, kind, &fit_cfg)?))
            .collect(),
    }
}

fn eh_fit(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let p = cfg.params;
    let times = cfg.grid.times();
    let sub = cfg.subsystem_or_default();
    let d = 1usize << sub.len();
    let series: Vec<Vec<MeasurementRecord>> = acquire_series(cfg, &times)?.into_iter().map(|(_, r)| r).collect();
    let fits = fit_records(cfg, &series)?;
    let lambda: Vec<String> = (0..d).map(|k| format!("p_{k}")).collect();
    let columns: Vec<String> =
        ["t", "delta_b", "chi2", "noise_p"].iter().map(|s| s.to_string()).chain(lambda.iter().cloned()).collect();
    let mut data = Table::new(columns.clone());
    let mut oracle = Table::new(columns);
    let mut worst = 0.0f64;
    for (fit, &t) in fits.iter().zip(&times) {
        let exact = padded(schmidt_oracle(&p, t, &sub)?, d);
        let db = bhattacharyya(&fit.schmidt, &exact);
        worst = worst.max(db);
        let mut row = vec![t, db, fit.chi2, fit.noise_p.unwrap_or(0.0)];
        row.extend(padded(fit.schmidt.clone(), d));
        data.push(row);
        let mut row = vec![t, 0.0, 0.0, 0.0];
        row.extend(exact);
        oracle.push(row);
    }
    let mut checks = vec![Check::new("spectrum-distance", format!("max ΔB = {worst:.3e}"), worst < 0.02)];
    if cfg.noise_fit.is_some() {
        let bound = fits.iter().filter(|f| f.at_bound).count();
        checks.push(Check::new("noise-bound", format!("{bound}/{} fits at the channel bound", fits.len()), bound == 0));
    }
    Ok(ExperimentOutput {
        artifacts: vec![
            Artifact::new("eh_fit.csv", data.to_csv()?),
            Artifact::new("oracle.csv", oracle.to_csv()?),
            Artifact::new("fits.json", serde_json::to_vec_pretty(&fits)?),
        ],
        data_file: "eh_fit.csv".into(),
        oracle_file: Some("oracle.csv".into()),
        checks,
        comparison: None,
    })
}

fn overlap_loschmidt(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let p = cfg.params;
    let times = cfg.grid.times();
    let mut all_times = vec![0.0];
    all_times.extend(&times);
    let series = acquire_series(cfg, &all_times)?;
    let r0 = &series[0].1;
    let full: Vec<usize> = (0..p.n).collect();
    let mut data = Table::new(["t", "l2", "sigma_l2"]);
    let mut oracle = Table::new(["t", "l2", "sigma_l2"]);
    let mut worst = 0.0f64;
    for ((_, rt), &t) in series[1..].iter().zip(&times) {
        let l2 = or_nan(loschmidt_from_overlap(r0, rt))?;
        let cross = overlap_samples(r0, rt, &full, HammingSign::Negative)?;
        let norm = {
            let p0 = or_nan(schwinger_tomography::purity(r0, &full))?;
            let pt = or_nan(schwinger_tomography::purity(rt, &full))?;
            (p0 * pt).sqrt()
        };
        let exact = loschmidt_oracle(&p, t)?.norm_sqr();
        worst = if l2.is_nan() { f64::NAN } else { worst.max((l2 - exact).abs()) };
        data.push(vec![t, l2, standard_error(&cross) / norm]);
        oracle.push(vec![t, exact, 0.0]);
    }
    let opts = CompareOptions { columns: Some(vec!["l2".into()]), ..Default::default() };
    let report = compare(&data, &oracle, &opts)?;
    let checks = vec![Check::new("overlap-loschmidt", format!("max ||L|² − exact| = {worst:.4}"), worst <= 0.03)];
    Ok(ExperimentOutput {
        artifacts: vec![Artifact::new("overlap_loschmidt.csv", data.to_csv()?), Artifact::new("oracle.csv", oracle.to_csv()?)],
        data_file: "overlap_loschmidt.csv".into(),
        oracle_file: Some("oracle.csv".into()),
        checks,
        comparison: Some(report),
    })
}

fn gates() -> Result<ExperimentOutput> {
    let rows = gate_report()?;
    let checks = rows
        .iter()
        .filter(|r| r.asserted)
        .map(|r| {
            let n = r.n.map_or("per mode".to_string(), |n| format!("N={n}"));
            Check::new(&format!("{} {n}", r.component), format!("{} (table {})", r.counts, r.expected), r.matches())
        })
        .collect();
    Ok(ExperimentOutput {
        artifacts: vec![Artifact::new("gate_report.csv", gate_report_csv(&rows)?)],
        data_file: "gate_report.csv".into(),
        oracle_file: None,
        checks,
        comparison: None,
    })
}
