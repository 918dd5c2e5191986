//! Point-by-point comparison of a run table against an oracle table.

use serde::Serialize;

use crate::table::Table;
use crate::{CliError, Result};

/// Columns that label a point rather than measure it.
const KEY_COLUMNS: [&str; 2] = ["q", "t"];
/// Bookkeeping columns never compared by default.
const SKIPPED: [&str; 4] = ["n_kept", "n_total", "n_cue", "n_shots"];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareOptions {
    /// Columns to compare; `None` compares every shared value column.
    pub columns: Option<Vec<String>>,
    /// Columns that must agree exactly (integer sequences).
    pub exact_columns: Vec<String>,
    /// Absolute tolerance for columns without an error column.
    pub tolerance: f64,
    /// Band half-width in units of the run's `sigma_<column>`.
    pub n_sigma: f64,
    /// Fraction of points that must fall inside the band.
    pub coverage: f64,
}

impl Default for CompareOptions {
    fn default() -> Self {
        Self { columns: None, exact_columns: vec!["nu".into()], tolerance: 1e-8, n_sigma: 3.0, coverage: 0.95 }
    }
}

/// Outcome for one compared column.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ColumnReport {
    pub column: String,
    pub max_abs: f64,
    /// `Σ (Δ/σ)²` over points with `σ > 0`, when the run has an error column.
    pub chi2: Option<f64>,
    /// Points inside the band (or tolerance, or exactly equal).
    pub within: usize,
    pub points: usize,
    pub criterion: String,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CompareReport {
    pub points: usize,
    pub columns: Vec<ColumnReport>,
    /// Key columns followed by `run − oracle` for each compared column.
    pub residuals: Table,
    pub pass: bool,
}

fn residual(a: f64, b: f64) -> f64 {
    if a == b {
        0.0
    } else {
        a - b
    }
}

fn keys_match(a: f64, b: f64) -> bool {
    (a - b).abs() <= 1e-9 * a.abs().max(b.abs()).max(1.0)
}

/// Compares `run` to `oracle` on matching key columns (`t`, and `q` if present).
pub fn compare(run: &Table, oracle: &Table, opts: &CompareOptions) -> Result<CompareReport> {
    let keys: Vec<&str> = KEY_COLUMNS.iter().copied().filter(|k| run.index(k).is_some()).collect();
    if keys.is_empty() {
        return Err(CliError::GridMismatch("run table has no t column".into()));
    }
    if run.rows.len() != oracle.rows.len() {
        return Err(CliError::GridMismatch(format!("{} run points vs {} oracle points", run.rows.len(), oracle.rows.len())));
    }
    let mut key_values = Vec::new();
    for k in &keys {
        let a = run.column(k).expect("key present");
        let b = oracle.column(k).ok_or_else(|| CliError::GridMismatch(format!("oracle table has no {k} column")))?;
        if let Some(i) = (0..a.len()).find(|&i| !keys_match(a[i], b[i])) {
            return Err(CliError::GridMismatch(format!("{k} differs at row {}: {} vs {}", i + 1, a[i], b[i])));
        }
        key_values.push(a);
    }

    let columns: Vec<String> = match &opts.columns {
        Some(c) => c.clone(),
        None => run
            .columns
            .iter()
            .filter(|c| {
                !KEY_COLUMNS.contains(&c.as_str())
                    && !SKIPPED.contains(&c.as_str())
                    && !c.starts_with("sigma")
                    && oracle.index(c).is_some()
            })
            .cloned()
            .collect(),
    };
    if columns.is_empty() {
        return Err(CliError::GridMismatch("no shared value columns".into()));
    }

    let mut residuals = Table::new(keys.iter().map(|k| k.to_string()).chain(columns.iter().cloned()));
    let mut deltas = Vec::new();
    let mut reports = Vec::new();
    for c in &columns {
        let a = run.column(c).ok_or_else(|| CliError::GridMismatch(format!("run table has no {c} column")))?;
        let b = oracle.column(c).ok_or_else(|| CliError::GridMismatch(format!("oracle table has no {c} column")))?;
        let d: Vec<f64> = a.iter().zip(&b).map(|(x, y)| residual(*x, *y)).collect();
        let max_abs = d.iter().fold(0.0f64, |m, x| if x.is_nan() { f64::NAN } else { m.max(x.abs()) });
        let sigma = run.column(&format!("sigma_{c}"));
        let points = d.len();
        let (within, chi2, criterion, pass) = if opts.exact_columns.contains(c) {
            let w = d.iter().filter(|x| **x == 0.0).count();
            (w, None, "exact equality".to_string(), w == points)
        } else if let Some(s) = sigma.filter(|s| s.iter().any(|v| *v > 0.0)) {
            let w = d.iter().zip(&s).filter(|(x, s)| x.abs() <= opts.n_sigma * **s + opts.tolerance).count();
            let chi2 = d.iter().zip(&s).filter(|(_, s)| **s > 0.0).map(|(x, s)| (x / s).powi(2)).sum();
            let ok = w as f64 >= opts.coverage * points as f64;
            (w, Some(chi2), format!("≥ {:.0}% within {}σ", 100.0 * opts.coverage, opts.n_sigma), ok)
        } else {
            let w = d.iter().filter(|x| x.abs() <= opts.tolerance).count();
            (w, None, format!("|Δ| ≤ {:e}", opts.tolerance), w == points)
        };
        reports.push(ColumnReport { column: c.clone(), max_abs, chi2, within, points, criterion, pass });
        deltas.push(d);
    }
    for i in 0..run.rows.len() {
        let row = key_values.iter().map(|k| k[i]).chain(deltas.iter().map(|d| d[i])).collect();
        residuals.push(row);
    }
    let pass = reports.iter().all(|r| r.pass);
    Ok(CompareReport { points: run.rows.len(), columns: reports, residuals, pass })
}

impl std::fmt::Display for CompareReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{} points", self.points)?;
        for c in &self.columns {
            write!(f, "{:<12} max|Δ| = {:<12.4e} {}/{} ({})", c.column, c.max_abs, c.within, c.points, c.criterion)?;
            if let Some(x) = c.chi2 {
                write!(f, " χ² = {x:.3}")?;
            }
            writeln!(f, " {}", if c.pass { "PASS" } else { "FAIL" })?;
        }
        write!(f, "{}", if self.pass { "PASS" } else { "FAIL" })
    }
}
