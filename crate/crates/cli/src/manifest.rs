//! Reproducibility record written once at the end of every run.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::config::ExperimentConfig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub config: ExperimentConfig,
    /// Version of the producing tool.
    pub version: String,
    pub wall_time_s: f64,
    /// SHA-256 of every other output file, by file name.
    pub outputs: BTreeMap<String, String>,
    pub pass: bool,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

impl RunManifest {
    pub fn new(config: ExperimentConfig, wall_time_s: f64, pass: bool) -> Self {
        Self { config, version: env!("CARGO_PKG_VERSION").into(), wall_time_s, outputs: BTreeMap::new(), pass }
    }

    pub fn record(&mut self, name: &str, bytes: &[u8]) {
        self.outputs.insert(name.into(), sha256_hex(bytes));
    }
}
