//! Acceptance suite. Run with `cargo test -p schwinger-validation --test acceptance`;
//! positional arguments select criteria by number or title substring.
//!
//! Single-run criteria use the fixed seed [`SEED`]; ensemble criteria use the
//! seeds `1..=n`. Tolerances are the constants next to each criterion.

use std::process::ExitCode;
use std::time::Duration;

use anyhow::Result;
use num_complex::Complex64;

use schwinger_circuit::{build_free_evolution, build_trotter_evolution};
use schwinger_cli::experiments::{circuit_state, loschmidt_oracle};
use schwinger_cli::{gate_report, run_experiment, ExperimentConfig, ExperimentKind, Table, TimeGrid};
use schwinger_dqpt::{
    dqpt_time, nu_oracle, nu_trajectory, run_loschmidt, run_necf_grid, LoschmidtConfig, LoschmidtPoint, NecfConfig,
    NecfGrid, PostselectMode,
};
use schwinger_model::ModelParams;
use schwinger_oracle::{necf_analytic, propagator, rate_function};
use schwinger_sim::{DensityMatrix, NoiseKind, NoiseParams, SampleMode};
use schwinger_tomography::{
    bhattacharyya, bw_density, estimate_overlap, estimate_overlap_with, fit_entanglement_hamiltonian,
    fit_with_noise_channel, measure_density, measure_state, overlap_samples, pure_qubit_haar_estimate, renyi2,
    standard_error, AcquisitionConfig, EHAnsatz, FitConfig, HammingSign,
};
use schwinger_validation::{run_all, Criterion, Outcome};

/// Seed of every single-run criterion, fixed before any run.
const SEED: u64 = 1;

fn n4() -> ModelParams {
    ModelParams::new(4, 0.9)
}

fn n8() -> ModelParams {
    ModelParams::new(8, 0.8)
}

/// `points` times with `t|m|` evenly spaced on `[lo, hi]`.
fn scaled_times(p: &ModelParams, lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let m = p.m.abs();
    (0..points).map(|k| (lo + (hi - lo) * k as f64 / (points - 1) as f64) / m).collect()
}

fn loschmidt(p: &ModelParams, times: &[f64], mode: SampleMode, seed: u64) -> Result<Vec<LoschmidtPoint>> {
    Ok(run_loschmidt(&LoschmidtConfig {
        params: *p,
        times: times.to_vec(),
        mode,
        noise: NoiseParams::default(),
        postselect: PostselectMode::for_params(p),
        seed,
    })?)
}

fn necf(p: &ModelParams, times: &[f64], mode: SampleMode, seed: u64) -> Result<NecfGrid> {
    Ok(run_necf_grid(&NecfConfig { params: *p, times: times.to_vec(), mode, noise: NoiseParams::default(), seed })?)
}

fn exact_acq(n_cue: usize, seed: u64) -> AcquisitionConfig {
    AcquisitionConfig { n_cue, mode: SampleMode::ExactProb, noise: NoiseParams::default(), unitary_seed: seed, shot_seed: seed }
}

/// The tomography grid: 8 times on `[0, 2.8]`, half chain `{0, 1}`.
fn tomography_cfg(kind: ExperimentKind, n_cue: usize) -> ExperimentConfig {
    let mut c = ExperimentConfig::new(kind, n4(), TimeGrid::new(0.0, 2.8, 8), "unused");
    c.n_cue = n_cue;
    c.subsystem = Some(vec![0, 1]);
    c.seed = Some(SEED);
    c
}

fn table(out: &schwinger_cli::ExperimentOutput, name: &str) -> Result<Table> {
    let a = out.artifacts.iter().find(|a| a.name == name).ok_or_else(|| anyhow::anyhow!("no {name}"))?;
    Ok(Table::from_csv(&a.bytes)?)
}

fn col(t: &Table, name: &str) -> Result<Vec<f64>> {
    t.column(name).ok_or_else(|| anyhow::anyhow!("no column {name}"))
}

// 1 ───────────────────────────────────────────────────────────────────────────

const C1_PEAK_TM: f64 = 1.051;
const C1_PEAK_VALUE: f64 = 0.311;
const C1_VALUE_TOL: f64 = 0.002;
const C1_STEP_TM: f64 = 0.02;

fn c1() -> Result<Outcome> {
    let p = n4();
    let times = scaled_times(&p, 0.0, 2.0, 101);
    let pts = loschmidt(&p, &times, SampleMode::ExactProb, SEED)?;
    let rates: Vec<f64> = pts.iter().map(|x| x.rate).collect();
    let peak = dqpt_time(&times, &rates)?;
    let tm = peak.t * p.m.abs();
    Ok(Outcome::all([
        Outcome::new((tm - C1_PEAK_TM).abs() <= C1_STEP_TM, format!("peak at t|m| = {tm:.4} (want {C1_PEAK_TM} ± {C1_STEP_TM})")),
        Outcome::new(
            (peak.value - C1_PEAK_VALUE).abs() <= C1_VALUE_TOL,
            format!("peak value {:.4} (want {C1_PEAK_VALUE} ± {C1_VALUE_TOL})", peak.value),
        ),
    ]))
}

// 2 ───────────────────────────────────────────────────────────────────────────

const C2_SEEDS: u64 = 20;
const C2_N_SIGMA: f64 = 3.0;
const C2_COVERAGE: f64 = 0.95;

/// Fraction of Re/Im points inside the binomial band, pooled over seeds.
fn coverage(p: &ModelParams, times: &[f64], shots: u64) -> Result<(usize, usize)> {
    let exact: Vec<Complex64> = times.iter().map(|&t| loschmidt_oracle(p, t)).collect::<Result<_, _>>()?;
    let (mut inside, mut total) = (0, 0);
    for seed in 1..=C2_SEEDS {
        for (pt, l) in loschmidt(p, times, SampleMode::Shots(shots), seed)?.iter().zip(&exact) {
            let e = &pt.estimate;
            for (d, s) in [((e.value.re - l.re).abs(), e.sigma_re), ((e.value.im - l.im).abs(), e.sigma_im)] {
                inside += usize::from(d <= C2_N_SIGMA * s + 1e-12);
                total += 1;
            }
        }
    }
    Ok((inside, total))
}

fn c2() -> Result<Outcome> {
    let (a, b) = (n4(), n8());
    let (i4, t4) = coverage(&a, &scaled_times(&a, 0.0, 3.0, 31), 1000)?;
    // Around the N = 8 rate-function peak.
    let (i8, t8) = coverage(&b, &scaled_times(&b, 0.8, 1.6, 9), 16_000)?;
    let part = |n: usize, i: usize, t: usize, shots: u64| {
        let f = i as f64 / t as f64;
        Outcome::new(f >= C2_COVERAGE, format!("N={n}, {shots} shots: {i}/{t} = {:.1}% within 3σ", 100.0 * f))
    };
    Ok(Outcome::all([part(4, i4, t4, 1000), part(8, i8, t8, 16_000)]))
}

// 3 ───────────────────────────────────────────────────────────────────────────

const C3_TOL: f64 = 1e-10;

fn c3() -> Result<Outcome> {
    let mut parts = Vec::new();
    for p in [n4(), n8()] {
        let times = scaled_times(&p, 0.0, 4.0, 50);
        let circuit_l = loschmidt(&p, &times, SampleMode::ExactProb, SEED)?;
        let circuit_g = necf(&p, &times, SampleMode::ExactProb, SEED)?;
        let prop = propagator(&p)?;
        let (mut circuit_err, mut exact_err) = (0.0f64, 0.0f64);
        for (k, &t) in times.iter().enumerate() {
            let circuit_prod: Complex64 = circuit_g.values.iter().map(|row| row[k]).product();
            circuit_err = circuit_err.max((circuit_l[k].estimate.value - circuit_prod).norm());
            let analytic_prod: Complex64 = p.momenta().map(|q| necf_analytic(&p, q, t)).product::<Result<_, _>>()?;
            exact_err = exact_err.max((prop.loschmidt(t) - analytic_prod).norm());
        }
        parts.push(Outcome::new(
            circuit_err <= C3_TOL && exact_err <= C3_TOL,
            format!("N={}: circuit max|L − ∏g| {circuit_err:.1e}, exact {exact_err:.1e}", p.n),
        ));
    }
    Ok(Outcome::all(parts))
}

// 4 ───────────────────────────────────────────────────────────────────────────

const C4_INTEGER_TOL: f64 = 0.05;
const C4_SHOTS: u64 = 500;
const C4_SEEDS: u64 = 20;
const C4_ROBUST: f64 = 0.95;

/// Times where the oracle `ν` changes on `(0, t_max]`, located by bisection.
fn nu_steps(p: &ModelParams, t_max: f64) -> Result<Vec<(f64, i64, i64)>> {
    let scan: Vec<f64> = (0..=200).map(|k| t_max * k as f64 / 200.0).collect();
    let nu: Vec<i64> = nu_oracle(p, &scan)?.iter().map(|r| r.nu).collect();
    let mut steps = Vec::new();
    for k in 1..scan.len() {
        if nu[k] != nu[k - 1] {
            let (mut lo, mut hi) = (scan[k - 1], scan[k]);
            for _ in 0..40 {
                let mid = 0.5 * (lo + hi);
                if nu_oracle(p, &[mid])?[0].nu == nu[k - 1] {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            steps.push((0.5 * (lo + hi), nu[k - 1], nu[k]));
        }
    }
    Ok(steps)
}

fn c4() -> Result<Outcome> {
    let mut parts = Vec::new();
    for p in [n8(), n4()] {
        let times = scaled_times(&p, 0.0, 3.0, 31);
        let steps = nu_steps(&p, 6.0 / p.m.abs())?;
        let (t_c, t_2) = match steps.as_slice() {
            [(t1, 0, 2), (t2, _, _), ..] => (*t1, *t2),
            [(t1, 0, 2)] => (*t1, f64::INFINITY),
            other => {
                parts.push(Outcome::new(false, format!("N={}: oracle steps {other:?}, want 0 → 2 first", p.n)));
                continue;
            }
        };
        let exact = nu_trajectory(&necf(&p, &times, SampleMode::ExactProb, SEED)?)?;
        let mut wrong = 0;
        let mut worst = 0.0f64;
        for r in exact.iter().filter(|r| r.t < t_2 && (r.t - t_c).abs() > 1e-9) {
            let want = if r.t < t_c { 0 } else { 2 };
            wrong += usize::from(r.nu != want);
            worst = worst.max((r.raw - r.raw.round()).abs());
        }
        parts.push(Outcome::new(
            wrong == 0 && worst < C4_INTEGER_TOL,
            format!(
                "N={}: ν 0 → 2 at t|m| = {:.4} (next step at {:.4}), {wrong} grid points off, max|ν − round ν| {worst:.1e}",
                p.n,
                t_c * p.m.abs(),
                t_2 * p.m.abs()
            ),
        ));

        // Diagnostic only: agreement away from the grid points next to t_c,
        // where |g| is within shot noise of zero.
        let step = times[1] - times[0];
        let (mut identical, mut identical_away) = (0, 0);
        for seed in 1..=C4_SEEDS {
            let Ok(nu) = necf(&p, &times, SampleMode::Shots(C4_SHOTS), seed).and_then(|g| Ok(nu_trajectory(&g)?)) else {
                continue;
            };
            identical += usize::from(nu.iter().zip(&exact).all(|(a, b)| a.nu == b.nu));
            identical_away +=
                usize::from(nu.iter().zip(&exact).all(|(a, b)| a.nu == b.nu || (a.t - t_c).abs() <= step));
        }
        let frac = identical as f64 / C4_SEEDS as f64;
        parts.push(Outcome::new(
            frac >= C4_ROBUST,
            format!(
                "N={}, {C4_SHOTS} shots: rounded ν identical in {identical}/{C4_SEEDS} seeds \
                 ({identical_away}/{C4_SEEDS} away from the points adjacent to t_c)",
                p.n
            ),
        ));
    }
    Ok(Outcome::all(parts))
}

// 5 ───────────────────────────────────────────────────────────────────────────

const C5_REL: f64 = 0.05;

fn c5() -> Result<Outcome> {
    let p = n4().with_coupling(0.9).with_trotter_steps(1);
    let times = scaled_times(&p, 0.0, 3.0, 151);
    let circuit: Vec<f64> = loschmidt(&p, &times, SampleMode::ExactProb, SEED)?.iter().map(|x| x.rate).collect();
    let prop = propagator(&p)?;
    let exact: Vec<f64> = times.iter().map(|&t| rate_function(prop.loschmidt(t), p.n)).collect();
    let (a, b) = (dqpt_time(&times, &circuit)?, dqpt_time(&times, &exact)?);
    let rel = (a.t - b.t).abs() / b.t;
    Ok(Outcome::new(
        rel <= C5_REL,
        format!(
            "one Trotter step peaks at t|m| = {:.4}, exact evolution at {:.4}: offset {:.2}% (limit 5%)",
            a.t * p.m.abs(),
            b.t * p.m.abs(),
            100.0 * rel
        ),
    ))
}

// 6 ───────────────────────────────────────────────────────────────────────────

const C6_TOL: f64 = 1e-10;

fn c6() -> Result<Outcome> {
    let mut worst = 0.0f64;
    let mut cases = 0;
    for base in [n4(), n8()] {
        for steps in [1, 2, 3, 7] {
            let p = base.with_trotter_steps(steps);
            for t in [0.37, 1.9] {
                for controlled in [false, true] {
                    let a = build_trotter_evolution(&p, t, controlled)?.unitary()?;
                    let b = build_free_evolution(&p, t, controlled)?.unitary()?;
                    worst = worst.max((a - b).camax());
                    cases += 1;
                }
            }
        }
    }
    Ok(Outcome::new(worst <= C6_TOL, format!("{cases} operators, max entry deviation {worst:.1e}")))
}

// 7 ───────────────────────────────────────────────────────────────────────────

const C7_SEEDS: u64 = 10;
const C7_COVERAGE: f64 = 0.9;
const C7_T0_ENTROPY: f64 = 0.2495;
const C7_T0_TOL: f64 = 0.02;

fn c7() -> Result<Outcome> {
    let (mut inside, mut total) = (0, 0);
    for seed in 1..=C7_SEEDS {
        let cfg = tomography_cfg(ExperimentKind::Tomography, 25).with_shots(1000, seed);
        let out = run_experiment(&cfg)?;
        let (data, oracle) = (table(&out, "tomography.csv")?, table(&out, "oracle.csv")?);
        let (s, band, exact) = (col(&data, "s_mean")?, col(&data, "sigma_s_mean")?, col(&oracle, "s_mean")?);
        for k in 0..s.len() {
            // NaN (a non-positive purity estimate) counts as a miss.
            inside += usize::from((s[k] - exact[k]).abs() <= band[k]);
            total += 1;
        }
    }
    let frac = inside as f64 / total as f64;
    let p = n4();
    let records = measure_state(&circuit_state(&p, 0.0)?, &exact_acq(200, SEED))?;
    let est = renyi2(&records, &[0, 1])?;
    Ok(Outcome::all([
        Outcome::new(
            frac >= C7_COVERAGE,
            format!("{inside}/{total} = {:.1}% of points within bootstrap + |S_A − S_B| (want ≥ 90%)", 100.0 * frac),
        ),
        Outcome::new(
            (est.mean() - C7_T0_ENTROPY).abs() <= C7_T0_TOL,
            format!("t = 0, n_CUE = 200: S⁽²⁾ = {:.4} (S_A {:.4}, S_B {:.4}; want {C7_T0_ENTROPY} ± {C7_T0_TOL})", est.mean(), est.entropy, est.complement.map_or(f64::NAN, |c| c.1)),
        ),
    ]))
}

// 8 ───────────────────────────────────────────────────────────────────────────

const C8_TOTAL_TOL: f64 = 0.05;
const C8_FIDELITY_TOL: f64 = 0.02;
const C8_MIXED_TOL: f64 = 1e-14;

fn c8() -> Result<Outcome> {
    let out = run_experiment(&tomography_cfg(ExperimentKind::Tomography, 25))?;
    let data = table(&out, "tomography.csv")?;
    let worst = |v: Vec<f64>, centre: f64| v.iter().fold(0.0f64, |m, x| if x.is_nan() { f64::NAN } else { m.max((x - centre).abs()) });
    let total = worst(col(&data, "s_total")?, 0.0);
    let fid = worst(col(&data, "fidelity")?, 1.0);
    let mixed = measure_density(&DensityMatrix::maximally_mixed(1)?, &exact_acq(1000, SEED))?;
    let samples = overlap_samples(&mixed, &mixed, &[0], HammingSign::Negative)?;
    let dev = samples.iter().map(|x| (x - 0.5).abs()).fold(0.0, f64::max);
    Ok(Outcome::all([
        Outcome::new(total <= C8_TOTAL_TOL, format!("max |S_(A+B)| = {total:.4} over 8 times (want ≤ {C8_TOTAL_TOL})")),
        Outcome::new(fid <= C8_FIDELITY_TOL, format!("max |ℱ − 1| = {fid:.4} (want ≤ {C8_FIDELITY_TOL})")),
        Outcome::new(dev <= C8_MIXED_TOL, format!("mixed qubit: max |Tr ρ² − 1/2| = {dev:.1e} over {} unitaries", samples.len())),
    ]))
}

// 9 ───────────────────────────────────────────────────────────────────────────

const C9_QUADRATURE_TOL: f64 = 1e-6;
const C9_UNITARIES: usize = 20_000;

fn c9() -> Result<Outcome> {
    let (neg, pos) = (pure_qubit_haar_estimate(HammingSign::Negative), pure_qubit_haar_estimate(HammingSign::Positive));
    let pure = DensityMatrix::from_state(&schwinger_sim::StateVector::zero(1))?;
    let recs = measure_density(&pure, &exact_acq(C9_UNITARIES, SEED))?;
    let implemented = estimate_overlap(&recs, &recs, &[0])?;
    let with_neg = estimate_overlap_with(&recs, &recs, &[0], HammingSign::Negative)?;
    let se = standard_error(&overlap_samples(&recs, &recs, &[0], HammingSign::Negative)?);
    Ok(Outcome::all([
        Outcome::new((neg - 1.0).abs() <= C9_QUADRATURE_TOL, format!("(−2)^(−D): {neg:.8}")),
        Outcome::new(pos.abs() <= C9_QUADRATURE_TOL, format!("(−2)^(+D): {pos:.8}")),
        Outcome::new(
            implemented == with_neg && (implemented - 1.0).abs() <= 3.0 * se,
            format!("implemented estimator on a pure qubit: {implemented:.4} ± {se:.4} over {C9_UNITARIES} unitaries"),
        ),
    ]))
}

// 10 ──────────────────────────────────────────────────────────────────────────

const C10_DB_2: f64 = 1e-3;
const C10_DB_4: f64 = 1e-2;
const C10_DB_GRID: f64 = 0.02;

fn c10() -> Result<Outcome> {
    let mut parts = Vec::new();
    let cases: [(Vec<usize>, Vec<f64>, f64); 2] = [
        (vec![0, 1], vec![1.1, -0.4, 0.7, -0.3], C10_DB_2),
        (vec![0, 1, 2, 3], vec![0.8, -0.5, 0.3, -0.9, 0.6, -0.4, 0.2, 0.3, -0.2, 0.1, 0.25, -0.15], C10_DB_4),
    ];
    for (sites, weights, limit) in cases {
        let ansatz = EHAnsatz::new(sites.clone())?;
        let rho = bw_density(&ansatz.clone().with_parameters(weights)?)?;
        let fit = fit_entanglement_hamiltonian(&measure_density(&rho, &exact_acq(100, SEED))?, &ansatz, &FitConfig::default())?;
        let db = bhattacharyya(&fit.schmidt, &rho.eigenvalues());
        parts.push(Outcome::new(db < limit, format!("N_A={}: ΔB = {db:.1e} (limit {limit:.0e})", sites.len())));
    }
    let out = run_experiment(&tomography_cfg(ExperimentKind::EhFit, 25))?;
    let db = col(&table(&out, "eh_fit.csv")?, "delta_b")?;
    let worst = db.iter().copied().fold(0.0, f64::max);
    parts.push(Outcome::new(worst < C10_DB_GRID, format!("N=4 grid, exact probabilities: max ΔB = {worst:.1e} (limit {C10_DB_GRID})")));
    Ok(Outcome::all(parts))
}

// 11 ──────────────────────────────────────────────────────────────────────────

const C11_P: f64 = 0.05;
const C11_TOL: f64 = 0.01;

fn c11() -> Result<Outcome> {
    let ansatz = EHAnsatz::new(vec![0, 1])?;
    let truth = bw_density(&ansatz.clone().with_parameters(vec![1.2, -0.7, 0.5, 0.3])?)?;
    let noisy = truth.apply_channel(NoiseKind::Depolarizing, C11_P)?;
    let fit = |rho: &DensityMatrix| -> Result<f64> {
        let recs = measure_density(rho, &exact_acq(100, SEED))?;
        let f = fit_with_noise_channel(&recs, &ansatz, NoiseKind::Depolarizing, &FitConfig::default())?;
        Ok(f.noise_p.unwrap_or(f64::NAN))
    };
    let (p_noisy, p_clean) = (fit(&noisy)?, fit(&truth)?);
    Ok(Outcome::all([
        Outcome::new((p_noisy - C11_P).abs() <= C11_TOL, format!("injected p = {C11_P}: recovered {p_noisy:.4}")),
        Outcome::new(p_clean < C11_TOL, format!("noiseless: recovered {p_clean:.4}")),
    ]))
}

// 12 ──────────────────────────────────────────────────────────────────────────

const C12_TOL: f64 = 0.03;

fn c12() -> Result<Outcome> {
    let out = run_experiment(&tomography_cfg(ExperimentKind::OverlapLoschmidt, 200))?;
    let (data, oracle) = (table(&out, "overlap_loschmidt.csv")?, table(&out, "oracle.csv")?);
    let (l2, exact) = (col(&data, "l2")?, col(&oracle, "l2")?);
    let errs: Vec<f64> = l2.iter().zip(&exact).map(|(a, b)| (a - b).abs()).collect();
    let worst = errs.iter().fold(0.0f64, |m, x| if x.is_nan() { f64::NAN } else { m.max(*x) });
    let within = errs.iter().filter(|e| **e <= C12_TOL).count();
    Ok(Outcome::new(
        worst <= C12_TOL,
        format!("max ||L|² − exact| = {worst:.4} ({within}/{} times within {C12_TOL})", errs.len()),
    ))
}

// 13 ──────────────────────────────────────────────────────────────────────────

fn c13() -> Result<Outcome> {
    let rows = gate_report()?;
    let describe = |r: &schwinger_cli::GateRow| {
        let n = r.n.map_or("per mode".to_string(), |n| format!("N={n}"));
        format!("{} {n} {} (table {})", r.component, r.counts, r.expected)
    };
    let asserted: Vec<_> = rows.iter().filter(|r| r.asserted).collect();
    let bad: Vec<String> = asserted.iter().filter(|r| !r.matches()).map(|r| describe(r)).collect();
    let reported = rows.iter().filter(|r| !r.asserted && !r.matches()).count();
    let detail = if bad.is_empty() {
        format!("{} asserted rows match; {reported} other rows differ (reported)", asserted.len())
    } else {
        format!("{}/{} asserted rows match; mismatch: {}", asserted.len() - bad.len(), asserted.len(), bad.join(", "))
    };
    Ok(Outcome::new(bad.is_empty(), detail))
}

// 14 ──────────────────────────────────────────────────────────────────────────

fn c14() -> Result<Outcome> {
    let p = n8();
    let times = scaled_times(&p, 0.0, 3.0, 50);
    let pts = loschmidt(&p, &times, SampleMode::Shots(16_000), SEED)?;
    let shots: u64 = pts.iter().map(|x| x.estimate.n_total).sum();
    Ok(Outcome::new(pts.len() == 50, format!("N=8: {} times × 2 bases, {shots} shots in total", pts.len())))
}

fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

fn main() -> ExitCode {
    let criteria = [
        Criterion { id: 1, title: "DQPT location, free theory", budget: secs(10), run: c1 },
        Criterion { id: 2, title: "shot-noise consistency", budget: secs(120), run: c2 },
        Criterion { id: 3, title: "product identity", budget: None, run: c3 },
        Criterion { id: 4, title: "topological index", budget: None, run: c4 },
        Criterion { id: 5, title: "Trotter fidelity of the transition", budget: secs(60), run: c5 },
        Criterion { id: 6, title: "Trotter gate-equivalence at e=0", budget: None, run: c6 },
        Criterion { id: 7, title: "tomography entropy", budget: secs(300), run: c7 },
        Criterion { id: 8, title: "purity/fidelity sanity", budget: None, run: c8 },
        Criterion { id: 9, title: "estimator sign check", budget: None, run: c9 },
        Criterion { id: 10, title: "BW round trip", budget: secs(600), run: c10 },
        Criterion { id: 11, title: "noise-channel recovery", budget: None, run: c11 },
        Criterion { id: 12, title: "|L|² from random measurements", budget: None, run: c12 },
        Criterion { id: 13, title: "gate counts", budget: None, run: c13 },
        Criterion { id: 14, title: "performance, N=8 sweep", budget: secs(60), run: c14 },
    ];
    // libtest flags passed through by cargo are ignored; the rest filter.
    let filters: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let reports = run_all(&criteria, &filters);
    if reports.iter().all(|r| r.pass) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
