//! Numeric CSV tables with a header row.

use std::path::Path;

use crate::{CliError, Result};

/// Column-named rows of floats. Integers print without a decimal point, so
/// counts and indices round-trip unchanged.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: impl IntoIterator<Item = S>) -> Self {
        Self { columns: columns.into_iter().map(Into::into).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn index(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let k = self.index(name)?;
        Some(self.rows.iter().map(|r| r[k]).collect())
    }

    pub fn to_csv(&self) -> Result<Vec<u8>> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r.iter().map(f64::to_string))?;
        }
        w.into_inner().map_err(|e| CliError::Io(e.into_error()))
    }

    pub fn from_csv(bytes: &[u8]) -> Result<Self> {
        let mut r = csv::Reader::from_reader(bytes);
        let columns: Vec<String> = r.headers()?.iter().map(str::to_string).collect();
        let mut table = Table::new(columns);
        for (line, rec) in r.records().enumerate() {
            let rec = rec?;
            let row = rec
                .iter()
                .map(|s| s.trim().parse::<f64>().map_err(|_| CliError::BadTable(format!("row {}: {s:?} is not a number", line + 1))))
                .collect::<Result<Vec<_>>>()?;
            table.push(row);
        }
        Ok(table)
    }

    pub fn read(path: &Path) -> Result<Self> {
        Self::from_csv(&std::fs::read(path)?)
    }
}
