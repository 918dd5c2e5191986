//! Nonparametric bootstrap over the shots of each unitary.

use rayon::prelude::*;

use schwinger_sim::{sample_shots, task_rng, Outcomes};

use crate::record::MeasurementRecord;
use crate::{Result, TomographyError};

/// Standard deviation of `estimator` over `n_b` copies of `records`, each
/// copy redrawing every unitary's shots from its observed frequencies.
/// Copies on which the estimator fails (e.g. a non-positive purity) are
/// skipped; at least two must succeed.
pub fn bootstrap<F>(records: &[MeasurementRecord], n_b: usize, seed: u64, estimator: F) -> Result<f64>
where
    F: Fn(&[MeasurementRecord]) -> Result<f64> + Sync,
{
    if records.iter().any(|r| r.outcomes.n_shots().is_none()) {
        return Err(TomographyError::BootstrapNeedsCounts);
    }
    let values: Vec<f64> = (0..n_b as u64)
        .into_par_iter()
        .filter_map(|b| {
            let mut rng = task_rng(seed, &[b]);
            let copy = records
                .iter()
                .map(|r| {
                    let n = r.outcomes.n_shots().expect("checked above");
                    let counts = sample_shots(&r.outcomes.probabilities(), n, &mut rng)?;
                    Ok(MeasurementRecord {
                        unitary_id: r.unitary_id,
                        angles: r.angles.clone(),
                        outcomes: Outcomes::Counts { width: r.width(), counts },
                    })
                })
                .collect::<Result<Vec<_>>>()
                .ok()?;
            estimator(&copy).ok()
        })
        .collect();
    if values.len() < 2 {
        return Err(TomographyError::TooFewCopies(values.len()));
    }
    let mean = values.iter().sum::<f64>() / values.len() as f64;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (values.len() - 1) as f64;
    Ok(var.sqrt())
}
