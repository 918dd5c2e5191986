//! Ready-made configurations for the figure pipelines.

use schwinger_model::ModelParams;

use crate::config::{ExperimentConfig, ExperimentKind, TimeGrid};
use crate::{CliError, Result};

pub const PRESETS: [&str; 8] = ["fig2", "fig3", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9"];

/// Times with `t|m|` from 0 to `stop`.
fn scaled(m: f64, stop: f64, points: usize) -> TimeGrid {
    TimeGrid::new(0.0, stop / m.abs(), points)
}

/// Preset by name; output goes to `out/<name>`.
pub fn preset(name: &str) -> Result<ExperimentConfig> {
    use ExperimentKind::*;
    let n4 = ModelParams::new(4, 0.9);
    let n8 = ModelParams::new(8, 0.8);
    let out = format!("out/{name}");
    let cfg = match name {
        // Free-theory echo, N = 4.
        "fig2" => ExperimentConfig::new(Loschmidt, n4, scaled(0.9, 3.0, 31), out).with_shots(1000, 1),
        // Free-theory echo, N = 8, with the largest shot budget.
        "fig3" => ExperimentConfig::new(Loschmidt, n8, scaled(0.8, 3.0, 31), out).with_shots(16_000, 1),
        // One Trotter step at e = |m|, exact probabilities: the transition time.
        "fig4" => ExperimentConfig::new(Loschmidt, n4.with_coupling(0.9), scaled(0.9, 3.0, 151), out),
        // Interacting echo sampled with 1000 shots.
        "fig5" => ExperimentConfig::new(Loschmidt, n4.with_coupling(0.9), scaled(0.9, 3.0, 31), out).with_shots(1000, 1),
        "fig6" => ExperimentConfig::new(Necf, n4, scaled(0.9, 3.0, 31), out).with_shots(1000, 1),
        "fig7" => ExperimentConfig::new(TopoIndex, n8, scaled(0.8, 3.0, 31), out).with_shots(1000, 1),
        "fig8" => {
            let mut c = ExperimentConfig::new(Tomography, n4, TimeGrid::new(0.0, 2.8, 8), out).with_shots(1000, 1);
            c.n_cue = 25;
            c.subsystem = Some(vec![0, 1]);
            c
        }
        "fig9" => {
            let mut c = ExperimentConfig::new(EhFit, n4, TimeGrid::new(0.0, 2.8, 8), out).with_shots(1000, 1);
            c.n_cue = 25;
            c.subsystem = Some(vec![0, 1]);
            c
        }
        _ => return Err(CliError::UnknownPreset(name.into())),
    };
    Ok(cfg)
}
