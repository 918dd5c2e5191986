//! Batch runner for the quench experiments: JSON-configured runs of every
//! pipeline, oracle tables on the same grids, pass/fail comparisons, gate
//! reports, circuit export and reproducibility manifests.
//!
//! A run writes into its output directory
//! - the data table (`<kind>.csv`) and `oracle.csv`,
//! - `report.json` with the comparison and named checks,
//! - `plot.gp`, a gnuplot script over the CSVs,
//! - `manifest.json`, last, with the config echo and SHA-256 of every file.

pub mod compare;
pub mod config;
pub mod experiments;
pub mod export;
pub mod gates;
pub mod manifest;
pub mod plot;
pub mod presets;
pub mod table;

use std::path::PathBuf;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

pub use compare::{compare, ColumnReport, CompareOptions, CompareReport};
pub use config::{ExperimentConfig, ExperimentKind, Overrides, ReadMode, TimeGrid};
pub use experiments::{run_experiment, Check, ExperimentOutput};
pub use gates::{gate_report, GateRow};
pub use manifest::{sha256_hex, RunManifest};
pub use presets::{preset, PRESETS};
pub use table::Table;

/// Environment variable holding the worker-thread count.
pub const WORKERS_ENV: &str = "SCHWINGER_WORKERS";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid config:\n  - {}", .0.join("\n  - "))]
    InvalidConfig(Vec<String>),
    #[error("unknown preset {0:?} (known: {list})", list = PRESETS.join(", "))]
    UnknownPreset(String),
    #[error("grid mismatch: {0}")]
    GridMismatch(String),
    #[error("bad table: {0}")]
    BadTable(String),
    #[error(transparent)]
    Model(#[from] schwinger_model::ModelError),
    #[error(transparent)]
    Oracle(#[from] schwinger_oracle::OracleError),
    #[error(transparent)]
    Circuit(#[from] schwinger_circuit::CircuitError),
    #[error(transparent)]
    Sim(#[from] schwinger_sim::SimError),
    #[error(transparent)]
    Dqpt(#[from] schwinger_dqpt::DqptError),
    #[error(transparent)]
    Tomography(#[from] schwinger_tomography::TomographyError),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, CliError>;

/// `report.json`.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub kind: ExperimentKind,
    pub checks: Vec<Check>,
    pub comparison: Option<CompareReport>,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct RunSummary {
    pub output: PathBuf,
    pub report: RunReport,
    pub manifest: RunManifest,
}

/// Runs one experiment and writes its files. Outputs other than the manifest
/// are byte-identical across reruns of the same config.
pub fn run(cfg: &ExperimentConfig) -> Result<RunSummary> {
    let started = Instant::now();
    let out = run_experiment(cfg)?;
    let pass = out.checks.iter().all(|c| c.pass);
    let report = RunReport { kind: cfg.kind, checks: out.checks.clone(), comparison: out.comparison.clone(), pass };

    std::fs::create_dir_all(&cfg.output)?;
    let mut files = out.artifacts.clone();
    files.push(experiments_artifact("report.json", serde_json::to_vec_pretty(&report)?));
    let script = plot::gnuplot_script(cfg.kind, &out.data_file, out.oracle_file.as_deref());
    files.push(experiments_artifact("plot.gp", script.into_bytes()));

    let mut manifest = RunManifest::new(cfg.clone(), 0.0, pass);
    for f in &files {
        std::fs::write(cfg.output.join(&f.name), &f.bytes)?;
        manifest.record(&f.name, &f.bytes);
    }
    manifest.wall_time_s = started.elapsed().as_secs_f64();
    std::fs::write(cfg.output.join("manifest.json"), serde_json::to_vec_pretty(&manifest)?)?;
    Ok(RunSummary { output: cfg.output.clone(), report, manifest })
}

fn experiments_artifact(name: &str, bytes: Vec<u8>) -> experiments::Artifact {
    experiments::Artifact { name: name.into(), bytes }
}

/// Sizes the global thread pool from [`WORKERS_ENV`] when it is set.
pub fn init_workers() -> Result<()> {
    if let Ok(v) = std::env::var(WORKERS_ENV) {
        let n: usize = v
            .parse()
            .map_err(|_| CliError::InvalidConfig(vec![format!("{WORKERS_ENV} = {v:?} is not a thread count")]))?;
        // Fails only if the pool already exists, which keeps its size.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}
