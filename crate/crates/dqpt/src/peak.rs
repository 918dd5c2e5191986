//! Critical-time estimate from sampled rate functions.

use serde::{Deserialize, Serialize};

use crate::{DqptError, Result};

/// Location and height of a rate-function peak.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PeakEstimate {
    pub t: f64,
    pub value: f64,
    /// Grid resolution around the peak.
    pub uncertainty: f64,
}

/// Refines the largest interior sample with the vertex of the parabola
/// through it and its two neighbours.
pub fn dqpt_time(times: &[f64], values: &[f64]) -> Result<PeakEstimate> {
    let n = times.len().min(values.len());
    if n < 5 {
        return Err(DqptError::TooFewSamples { need: 5, got: n });
    }
    let k = (1..n - 1)
        .filter(|&i| values[i].is_finite())
        .max_by(|&a, &b| values[a].total_cmp(&values[b]))
        .ok_or(DqptError::NoInteriorMaximum)?;
    let local = values[k] >= values[k - 1] && values[k] >= values[k + 1];
    if !local || values[k] <= values[0] || values[k] < values[n - 1] {
        return Err(DqptError::NoInteriorMaximum);
    }
    let (x0, x1, x2) = (times[k - 1], times[k], times[k + 1]);
    let (y0, y1, y2) = (values[k - 1], values[k], values[k + 1]);
    let d01 = (y1 - y0) / (x1 - x0);
    let d12 = (y2 - y1) / (x2 - x1);
    let a = (d12 - d01) / (x2 - x0);
    let uncertainty = 0.5 * (x2 - x0);
    if a >= 0.0 || !a.is_finite() {
        return Ok(PeakEstimate { t: x1, value: y1, uncertainty });
    }
    let b = d01 - a * (x0 + x1);
    let t = (-b / (2.0 * a)).clamp(x0, x2);
    let value = y0 + d01 * (t - x0) + a * (t - x0) * (t - x1);
    Ok(PeakEstimate { t, value, uncertainty })
}
