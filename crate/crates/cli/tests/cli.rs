use std::path::{Path, PathBuf};
use std::process::Command;
use std::sync::atomic::{AtomicUsize, Ordering};

use proptest::prelude::*;
use schwinger_cli::export::{build_named, render, CircuitFormat, CircuitKind, CircuitSpec};
use schwinger_cli::*;
use schwinger_circuit::ReadoutBasis;
use schwinger_model::ModelParams;
use schwinger_oracle::loschmidt_analytic;

fn scratch(tag: &str) -> PathBuf {
    static COUNTER: AtomicUsize = AtomicUsize::new(0);
    let dir = std::env::temp_dir().join(format!("schwinger-cli-{}-{tag}-{}", std::process::id(), COUNTER.fetch_add(1, Ordering::SeqCst)));
    let _ = std::fs::remove_dir_all(&dir);
    dir
}

fn loschmidt_cfg(out: &Path) -> ExperimentConfig {
    ExperimentConfig::new(ExperimentKind::Loschmidt, ModelParams::new(4, 0.9), TimeGrid::new(0.0, 3.0, 31), out)
}

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_schwinger"))
}

#[test]
fn config_json_round_trip_and_defaults() {
    let json = r#"{"kind":"tomography","params":{"N":4,"m":0.9},"grid":{"start":0,"stop":2.8,"points":8},
                   "mode":"shots","n_shots":1000,"seed":3,"output":"out/x"}"#;
    let cfg = ExperimentConfig::from_json(json).unwrap();
    assert_eq!(cfg.n_cue, 25);
    assert!(cfg.postselect);
    assert_eq!(cfg.subsystem_or_default(), vec![0, 1]);
    cfg.validate().unwrap();
    let back = ExperimentConfig::from_json(&serde_json::to_string(&cfg).unwrap()).unwrap();
    assert_eq!(back, cfg);
    assert!(ExperimentConfig::from_json(&json.replace("\"seed\":3", "\"sed\":3")).is_err());
}

#[test]
fn invalid_config_lists_every_violation() {
    let mut cfg = loschmidt_cfg(Path::new("x"));
    cfg.params.n = 6;
    cfg.grid = TimeGrid::new(2.0, 1.0, 10);
    cfg.mode = ReadMode::Shots;
    let v = cfg.violations();
    assert!(v.iter().any(|s| s.contains("multiple of 4")), "{v:?}");
    assert!(v.iter().any(|s| s.contains("must increase")));
    assert!(v.iter().any(|s| s.contains("n_shots")));
    assert!(v.iter().any(|s| s.contains("seed")));
    let msg = cfg.validate().unwrap_err().to_string();
    assert_eq!(msg.matches("\n  - ").count(), v.len());

    let mut cfg = ExperimentConfig::new(ExperimentKind::Necf, ModelParams::new(4, 0.9).with_coupling(1.0), TimeGrid::new(0.0, 1.0, 3), "x");
    assert!(cfg.violations().iter().any(|s| s.contains("e = 0")));
    cfg.kind = ExperimentKind::Tomography;
    cfg.params.e = 0.0;
    cfg.subsystem = Some(vec![0, 0, 7]);
    let v = cfg.violations();
    assert!(v.iter().any(|s| s.contains("needs a seed")));
    assert!(v.iter().any(|s| s.contains("repeated")));
    assert!(v.iter().any(|s| s.contains("outside")));
}

#[test]
fn overrides_replace_fields() {
    let mut cfg = preset("fig2").unwrap();
    let o = Overrides {
        n: Some(8),
        m: Some(-0.8),
        shots: Some(500),
        seed: Some(9),
        points: Some(5),
        subsystem: Some(vec![1, 2]),
        out: Some("elsewhere".into()),
        no_postselect: true,
        ..Default::default()
    };
    o.apply(&mut cfg);
    assert_eq!((cfg.params.n, cfg.params.m, cfg.n_shots, cfg.seed, cfg.grid.points), (8, -0.8, Some(500), Some(9), 5));
    assert!(!cfg.postselect);
    assert_eq!(cfg.output, PathBuf::from("elsewhere"));
    Overrides { exact: true, ..Default::default() }.apply(&mut cfg);
    assert_eq!((cfg.mode, cfg.n_shots), (ReadMode::ExactProb, None));
}

#[test]
fn presets_are_valid() {
    for name in PRESETS {
        preset(name).unwrap().validate().unwrap();
    }
    assert!(matches!(preset("fig1"), Err(CliError::UnknownPreset(_))));
}

#[test]
fn time_grid_points() {
    assert_eq!(TimeGrid::new(0.0, 1.0, 5).times(), vec![0.0, 0.25, 0.5, 0.75, 1.0]);
    assert_eq!(TimeGrid::new(0.3, 0.3, 1).times(), vec![0.3]);
}

#[test]
fn exact_loschmidt_run_matches_oracle() {
    let dir = scratch("exact");
    let summary = run(&loschmidt_cfg(&dir)).unwrap();
    assert!(summary.report.pass);
    let table = Table::read(&dir.join("loschmidt.csv")).unwrap();
    assert_eq!(table.columns, ["t", "re", "im", "sigma_re", "sigma_im", "rate", "n_kept", "n_total"]);
    let p = ModelParams::new(4, 0.9);
    for row in &table.rows {
        let l = loschmidt_analytic(&p, row[0]).unwrap();
        assert!((row[1] - l.re).abs() < 1e-8 && (row[2] - l.im).abs() < 1e-8, "t = {}", row[0]);
    }
    for f in ["oracle.csv", "report.json", "plot.gp", "manifest.json"] {
        assert!(dir.join(f).exists(), "{f}");
    }
}

#[test]
fn shot_runs_are_byte_identical_and_checksummed() {
    let (a, b) = (scratch("rerun-a"), scratch("rerun-b"));
    let cfg = loschmidt_cfg(&a).with_shots(1000, 5);
    let sa = run(&cfg).unwrap();
    let sb = run(&ExperimentConfig { output: b.clone(), ..cfg }).unwrap();
    assert_eq!(sa.manifest.outputs, sb.manifest.outputs);
    for (name, digest) in &sa.manifest.outputs {
        let bytes_a = std::fs::read(a.join(name)).unwrap();
        assert_eq!(bytes_a, std::fs::read(b.join(name)).unwrap(), "{name}");
        assert_eq!(&sha256_hex(&bytes_a), digest);
    }
    assert!(!sa.manifest.outputs.contains_key("manifest.json"));
    let m: RunManifest = serde_json::from_slice(&std::fs::read(a.join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m.config.seed, Some(5));
    assert_eq!(m.version, env!("CARGO_PKG_VERSION"));
}

#[test]
fn other_seed_changes_shot_data() {
    let (a, b) = (scratch("seed-a"), scratch("seed-b"));
    run(&loschmidt_cfg(&a).with_shots(1000, 1)).unwrap();
    run(&loschmidt_cfg(&b).with_shots(1000, 2)).unwrap();
    assert_ne!(std::fs::read(a.join("loschmidt.csv")).unwrap(), std::fs::read(b.join("loschmidt.csv")).unwrap());
}

#[test]
fn shot_loschmidt_covers_oracle() {
    // Binomial 3σ bands hold for more than 99% of Re/Im points over seeds.
    let (mut inside, mut total) = (0, 0);
    for seed in 1..=20 {
        let cfg = loschmidt_cfg(Path::new("unused")).with_shots(1000, seed);
        let out = run_experiment(&cfg).unwrap();
        let r = out.comparison.unwrap();
        for c in &r.columns {
            inside += c.within;
            total += c.points;
        }
    }
    assert!(inside as f64 > 0.99 * total as f64, "{inside}/{total}");
}

#[test]
fn compare_identical_tables() {
    let mut t = Table::new(["t", "re", "sigma_re", "nu"]);
    for k in 0..5 {
        t.push(vec![k as f64 * 0.1, (k as f64).sin(), 0.01, if k > 2 { 2.0 } else { 0.0 }]);
    }
    let r = compare(&t, &t, &CompareOptions::default()).unwrap();
    assert!(r.pass);
    assert!(r.residuals.rows.iter().all(|row| row[1..].iter().all(|x| *x == 0.0)));
    assert_eq!(r.columns.iter().map(|c| c.column.as_str()).collect::<Vec<_>>(), ["re", "nu"]);

    let mut shifted = t.clone();
    shifted.rows[4][0] = 0.5;
    assert!(matches!(compare(&t, &shifted, &CompareOptions::default()), Err(CliError::GridMismatch(_))));
    let mut short = t.clone();
    short.rows.pop();
    assert!(matches!(compare(&t, &short, &CompareOptions::default()), Err(CliError::GridMismatch(_))));
}

#[test]
fn compare_nu_sequences_exactly() {
    let mut a = Table::new(["t", "nu_raw", "nu"]);
    for (t, nu) in [(0.0, 0.0), (1.0, 0.0), (2.0, 2.0)] {
        a.push(vec![t, nu, nu]);
    }
    let mut b = a.clone();
    b.rows[1][2] = 2.0;
    let opts = CompareOptions { columns: Some(vec!["nu".into()]), tolerance: 10.0, ..Default::default() };
    let r = compare(&a, &b, &opts).unwrap();
    assert!(!r.pass);
    assert_eq!(r.columns[0].within, 2);
}

#[test]
fn compare_sigma_bands() {
    let mut run = Table::new(["t", "re", "sigma_re"]);
    let mut oracle = Table::new(["t", "re", "sigma_re"]);
    for k in 0..20 {
        let off = if k == 0 { 0.5 } else { 0.01 };
        run.push(vec![k as f64, off, 0.1]);
        oracle.push(vec![k as f64, 0.0, 0.0]);
    }
    let r = compare(&run, &oracle, &CompareOptions::default()).unwrap();
    assert_eq!(r.columns[0].within, 19);
    assert!(r.pass);
    assert!((r.columns[0].chi2.unwrap() - (25.0 + 19.0 * 0.01)).abs() < 1e-9);
    let strict = CompareOptions { coverage: 1.0, ..Default::default() };
    assert!(!compare(&run, &oracle, &strict).unwrap().pass);
}

#[test]
fn table_csv_round_trip() {
    let mut t = Table::new(["t", "n_kept", "x"]);
    t.push(vec![0.1, 1000.0, f64::INFINITY]);
    let bytes = t.to_csv().unwrap();
    assert_eq!(String::from_utf8(bytes.clone()).unwrap(), "t,n_kept,x\n0.1,1000,inf\n");
    assert_eq!(Table::from_csv(&bytes).unwrap(), t);
    assert!(Table::from_csv(b"t,x\n0.1,abc\n").is_err());
}

#[test]
fn gate_report_rows() {
    let rows = gate_report().unwrap();
    let find = |c: &str, n: Option<usize>| rows.iter().find(|r| r.component == c && r.n == n).unwrap();
    for (c, n) in [("bogoliubov", None), ("quench", None), ("fourier", Some(4)), ("loschmidt-pipeline", Some(4))] {
        assert!(find(c, n).asserted && find(c, n).matches(), "{c}");
    }
    assert_eq!(find("necf-pipeline", Some(8)).counts, find("necf-pipeline", Some(4)).counts);
    assert_eq!(find("fourier", Some(8)).counts.two_qubit, 68);
}

#[test]
fn circuit_export_formats() {
    let p = ModelParams::new(4, 0.9);
    let spec = CircuitSpec { kind: CircuitKind::Loschmidt, t: 0.7, basis: ReadoutBasis::Y, q: 0, component: 0 };
    let c = build_named(&p, &spec).unwrap();
    let json = render(&c, CircuitFormat::Json).unwrap();
    assert_eq!(schwinger_circuit::export::from_json(&json).unwrap(), c);
    assert!(render(&c, CircuitFormat::Qasm).unwrap().starts_with("OPENQASM 2.0;"));
    let bad = CircuitSpec { kind: CircuitKind::Necf, component: 8, ..spec };
    assert!(build_named(&p, &bad).is_err());
}

#[test]
fn every_kind_runs_on_a_small_grid() {
    let p = ModelParams::new(4, 0.9);
    for kind in [ExperimentKind::Necf, ExperimentKind::TopoIndex, ExperimentKind::Tomography, ExperimentKind::EhFit, ExperimentKind::OverlapLoschmidt, ExperimentKind::GateReport] {
        let dir = scratch(kind.name());
        let mut cfg = ExperimentConfig::new(kind, p, TimeGrid::new(0.0, 1.5, 16), &dir);
        cfg.seed = Some(1);
        cfg.n_cue = 10;
        let s = run(&cfg).unwrap();
        assert_eq!(s.manifest.outputs.len() + 1, std::fs::read_dir(&dir).unwrap().count(), "{}", kind.name());
    }
}

#[test]
fn binary_run_and_compare() {
    let dir = scratch("bin");
    let st = bin().args(["run", "--preset", "fig2", "--exact", "--out"]).arg(&dir).env(WORKERS_ENV, "2").status().unwrap();
    assert!(st.success());
    let st = bin().arg("compare").arg(dir.join("loschmidt.csv")).arg(dir.join("oracle.csv")).args(["--columns", "re,im"]).status().unwrap();
    assert!(st.success());
    let st = bin().arg("compare").arg(dir.join("loschmidt.csv")).arg(dir.join("oracle.csv")).args(["--columns", "nope"]).status().unwrap();
    assert_eq!(st.code(), Some(2));
}

#[test]
fn binary_reports_config_errors() {
    let dir = scratch("badcfg");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("cfg.json");
    std::fs::write(&path, r#"{"kind":"loschmidt","params":{"N":5,"m":0.9},"grid":{"start":1,"stop":0,"points":3},"mode":"shots","output":"o"}"#).unwrap();
    let out = bin().args(["run", "--config"]).arg(&path).output().unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    for needle in ["multiple of 4", "must increase", "n_shots", "seed"] {
        assert!(err.contains(needle), "{err}");
    }
    let out = bin().args(["gate-report"]).env(WORKERS_ENV, "many").output().unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn binary_exports_circuits() {
    let out = bin().args(["export-circuit", "necf", "--q", "-1", "--component", "3", "--format", "qasm"]).output().unwrap();
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stdout).contains("qreg q[3];"));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn grid_is_monotone(start in 0.0f64..5.0, len in 0.01f64..5.0, points in 2usize..200) {
        let t = TimeGrid::new(start, start + len, points).times();
        prop_assert_eq!(t.len(), points);
        prop_assert_eq!(t[0], start);
        prop_assert!((t[points - 1] - (start + len)).abs() < 1e-12);
        prop_assert!(t.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn self_comparison_passes(values in prop::collection::vec(-1e3f64..1e3, 1..40)) {
        let mut t = Table::new(["t", "x"]);
        for (k, v) in values.iter().enumerate() {
            t.push(vec![k as f64, *v]);
        }
        let r = compare(&t, &t, &CompareOptions::default()).unwrap();
        prop_assert!(r.pass);
        prop_assert_eq!(r.columns[0].max_abs, 0.0);
    }
}
