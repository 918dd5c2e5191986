//! Experiment configuration: one JSON document per run, with field-level
//! overrides from the command line.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use schwinger_model::ModelParams;
use schwinger_sim::{NoiseKind, NoiseParams, SampleMode};
use schwinger_tomography::MAX_SUBSYSTEM;

use crate::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ExperimentKind {
    /// Ramsey Loschmidt echo and rate function.
    Loschmidt,
    /// Per-mode non-equal-time correlators `g_q(t)`.
    Necf,
    /// Topological index `ν(t)` from a correlator grid.
    TopoIndex,
    /// Rényi entropies and fidelity from randomized measurements.
    Tomography,
    /// Entanglement-Hamiltonian fits to randomized measurements.
    EhFit,
    /// `|L(t)|²` from overlaps of randomized measurements.
    OverlapLoschmidt,
    /// Gate counts of the circuit components.
    GateReport,
}

impl ExperimentKind {
    pub fn name(self) -> &'static str {
        match self {
            ExperimentKind::Loschmidt => "loschmidt",
            ExperimentKind::Necf => "necf",
            ExperimentKind::TopoIndex => "topo-index",
            ExperimentKind::Tomography => "tomography",
            ExperimentKind::EhFit => "eh-fit",
            ExperimentKind::OverlapLoschmidt => "overlap-loschmidt",
            ExperimentKind::GateReport => "gate-report",
        }
    }

    fn uses_random_unitaries(self) -> bool {
        matches!(self, ExperimentKind::Tomography | ExperimentKind::EhFit | ExperimentKind::OverlapLoschmidt)
    }
}

/// How circuit outputs are read.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum ReadMode {
    ExactProb,
    Shots,
}

/// `points` equally spaced times from `start` to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TimeGrid {
    pub start: f64,
    pub stop: f64,
    pub points: usize,
}

impl TimeGrid {
    pub fn new(start: f64, stop: f64, points: usize) -> Self {
        Self { start, stop, points }
    }

    pub fn times(&self) -> Vec<f64> {
        match self.points {
            0 => Vec::new(),
            1 => vec![self.start],
            p => (0..p).map(|k| self.start + (self.stop - self.start) * k as f64 / (p - 1) as f64).collect(),
        }
    }

    fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if !(self.start.is_finite() && self.stop.is_finite()) {
            v.push("t-grid bounds must be finite".into());
        }
        if self.points == 0 {
            v.push("t-grid needs at least one point".into());
        }
        if self.points > 1 && !(self.stop > self.start) {
            v.push(format!("t-grid must increase (start {} ≥ stop {})", self.start, self.stop));
        }
        if self.start < 0.0 {
            v.push(format!("t-grid start {} must be ≥ 0", self.start));
        }
        v
    }
}

fn default_n_cue() -> usize {
    25
}

fn default_bootstrap() -> usize {
    100
}

fn default_true() -> bool {
    true
}

/// Everything a run needs; serialized verbatim into the run manifest.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub kind: ExperimentKind,
    pub params: ModelParams,
    pub grid: TimeGrid,
    pub mode: ReadMode,
    /// Shots per circuit (per unitary for randomized measurements).
    #[serde(default)]
    pub n_shots: Option<u64>,
    /// Random unitaries per time point.
    #[serde(default = "default_n_cue")]
    pub n_cue: usize,
    #[serde(default)]
    pub noise: NoiseParams,
    /// Symmetry postselection of Ramsey shots.
    #[serde(default = "default_true")]
    pub postselect: bool,
    /// Master seed; mandatory whenever anything is sampled.
    #[serde(default)]
    pub seed: Option<u64>,
    pub output: PathBuf,
    /// Sites of subsystem `A` (tomography and fits). Defaults to the left half.
    #[serde(default)]
    pub subsystem: Option<Vec<usize>>,
    /// Bootstrap copies for shot-mode entropy errors.
    #[serde(default = "default_bootstrap")]
    pub bootstrap: usize,
    /// Fit an additional noise channel of this kind.
    #[serde(default)]
    pub noise_fit: Option<NoiseKind>,
    /// Chain entanglement-Hamiltonian fits through the time grid.
    #[serde(default = "default_true")]
    pub warm_start: bool,
}

impl ExperimentConfig {
    pub fn new(kind: ExperimentKind, params: ModelParams, grid: TimeGrid, output: impl Into<PathBuf>) -> Self {
        Self {
            kind,
            params,
            grid,
            mode: ReadMode::ExactProb,
            n_shots: None,
            n_cue: default_n_cue(),
            noise: NoiseParams::default(),
            postselect: true,
            seed: None,
            output: output.into(),
            subsystem: None,
            bootstrap: default_bootstrap(),
            noise_fit: None,
            warm_start: true,
        }
    }

    pub fn with_shots(mut self, n_shots: u64, seed: u64) -> Self {
        self.mode = ReadMode::Shots;
        self.n_shots = Some(n_shots);
        self.seed = Some(seed);
        self
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn sample_mode(&self) -> SampleMode {
        match (self.mode, self.n_shots) {
            (ReadMode::Shots, Some(n)) => SampleMode::Shots(n),
            _ => SampleMode::ExactProb,
        }
    }

    /// Master seed, 0 when nothing is sampled.
    pub fn seed_or_default(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn subsystem_or_default(&self) -> Vec<usize> {
        self.subsystem.clone().unwrap_or_else(|| (0..self.params.n / 2).collect())
    }

    /// Every violated invariant, in a stable order. Empty when valid.
    pub fn violations(&self) -> Vec<String> {
        let mut v = self.params.violations();
        if self.kind != ExperimentKind::GateReport {
            v.extend(self.grid.violations());
        }
        match self.mode {
            ReadMode::Shots => {
                if self.n_shots.is_none_or(|n| n == 0) {
                    v.push("shot mode needs n_shots ≥ 1".into());
                }
                if self.seed.is_none() {
                    v.push("shot mode needs a seed".into());
                }
            }
            ReadMode::ExactProb => {
                if self.n_shots.is_some() {
                    v.push("n_shots given in exact-prob mode".into());
                }
            }
        }
        if self.kind.uses_random_unitaries() {
            if self.seed.is_none() {
                v.push(format!("{} draws random unitaries and needs a seed", self.kind.name()));
            }
            if self.n_cue == 0 {
                v.push("n_cue must be ≥ 1".into());
            }
            let n = self.params.n;
            let sub = self.subsystem_or_default();
            if sub.is_empty() || sub.len() > MAX_SUBSYSTEM.min(n) {
                v.push(format!("subsystem {sub:?} must hold 1..={} sites", MAX_SUBSYSTEM.min(n)));
            }
            for (k, &s) in sub.iter().enumerate() {
                if s >= n {
                    v.push(format!("subsystem site {s} outside 0..{n}"));
                }
                if sub[..k].contains(&s) {
                    v.push(format!("subsystem site {s} repeated"));
                }
            }
            if self.mode == ReadMode::Shots && self.bootstrap < 2 && self.kind == ExperimentKind::Tomography {
                v.push("bootstrap needs at least 2 copies".into());
            }
        }
        if self.noise_fit.is_some() && self.kind != ExperimentKind::EhFit {
            v.push("noise_fit applies to eh-fit only".into());
        }
        if matches!(self.kind, ExperimentKind::Necf | ExperimentKind::TopoIndex) && self.params.e != 0.0 {
            v.push(format!("{} uses the per-mode circuits and needs e = 0", self.kind.name()));
        }
        let width = if self.kind == ExperimentKind::Loschmidt { self.params.n + 1 } else { self.params.n };
        if let Err(e) = self.noise.validate(width) {
            v.push(e.to_string());
        }
        v.dedup();
        v
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(CliError::InvalidConfig(v))
        }
    }
}

/// Command-line replacements for individual config fields.
#[derive(Debug, Clone, Default, PartialEq, clap::Args)]
pub struct Overrides {
    /// Lattice sites.
    #[arg(long = "sites")]
    pub n: Option<usize>,
    /// Fermion mass.
    #[arg(long, allow_hyphen_values = true)]
    pub m: Option<f64>,
    /// Electric coupling.
    #[arg(long)]
    pub e: Option<f64>,
    /// Trotter steps.
    #[arg(long)]
    pub trotter_steps: Option<usize>,
    #[arg(long)]
    pub t_start: Option<f64>,
    #[arg(long)]
    pub t_stop: Option<f64>,
    #[arg(long)]
    pub points: Option<usize>,
    /// Switches to shot mode with this many shots.
    #[arg(long)]
    pub shots: Option<u64>,
    /// Switches to exact Born probabilities.
    #[arg(long, conflicts_with = "shots")]
    pub exact: bool,
    #[arg(long)]
    pub n_cue: Option<usize>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Depolarizing weight.
    #[arg(long)]
    pub p1: Option<f64>,
    /// Bit-flip weight.
    #[arg(long)]
    pub p2: Option<f64>,
    /// Phase-flip weight.
    #[arg(long)]
    pub p3: Option<f64>,
    /// Disables symmetry postselection.
    #[arg(long)]
    pub no_postselect: bool,
    /// Comma-separated sites of subsystem A.
    #[arg(long, value_delimiter = ',')]
    pub subsystem: Option<Vec<usize>>,
    /// Output directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl Overrides {
    pub fn apply(&self, cfg: &mut ExperimentConfig) {
        if let Some(n) = self.n {
            cfg.params.n = n;
        }
        if let Some(m) = self.m {
            cfg.params.m = m;
        }
        if let Some(e) = self.e {
            cfg.params.e = e;
        }
        if let Some(s) = self.trotter_steps {
            cfg.params.n_trotter = s;
        }
        if let Some(t) = self.t_start {
            cfg.grid.start = t;
        }
        if let Some(t) = self.t_stop {
            cfg.grid.stop = t;
        }
        if let Some(p) = self.points {
            cfg.grid.points = p;
        }
        if let Some(n) = self.shots {
            cfg.mode = ReadMode::Shots;
            cfg.n_shots = Some(n);
        }
        if self.exact {
            cfg.mode = ReadMode::ExactProb;
            cfg.n_shots = None;
        }
        if let Some(n) = self.n_cue {
            cfg.n_cue = n;
        }
        if let Some(s) = self.seed {
            cfg.seed = Some(s);
        }
        if let Some(p) = self.p1 {
            cfg.noise.p1 = p;
        }
        if let Some(p) = self.p2 {
            cfg.noise.p2 = p;
        }
        if let Some(p) = self.p3 {
            cfg.noise.p3 = p;
        }
        if self.no_postselect {
            cfg.postselect = false;
        }
        if let Some(s) = &self.subsystem {
            cfg.subsystem = Some(s.clone());
        }
        if let Some(o) = &self.out {
            cfg.output = o.clone();
        }
    }
}
