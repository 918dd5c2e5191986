//! Correlator values over the momentum × time plane.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use schwinger_model::ModelParams;
use schwinger_oracle::necf_analytic;

use crate::{DqptError, Result};

/// `g_q(t)` for every momentum of a lattice on a common time grid.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NecfGrid {
    pub params: ModelParams,
    /// Ascending momenta `−N/4 … N/4−1`.
    pub momenta: Vec<i64>,
    /// Ascending times.
    pub times: Vec<f64>,
    /// `values[i][k] = g_{momenta[i]}(times[k])`.
    pub values: Vec<Vec<Complex64>>,
}

impl NecfGrid {
    /// Builds a grid from a per-point function.
    pub fn from_fn(params: &ModelParams, times: &[f64], mut f: impl FnMut(i64, f64) -> Result<Complex64>) -> Result<Self> {
        params.validate()?;
        let momenta: Vec<i64> = params.momenta().collect();
        let values = momenta.iter().map(|&q| times.iter().map(|&t| f(q, t)).collect::<Result<Vec<_>>>()).collect::<Result<_>>()?;
        Ok(Self { params: params.clone(), momenta, times: times.to_vec(), values })
    }

    /// Closed-form grid (free theory).
    pub fn analytic(params: &ModelParams, times: &[f64]) -> Result<Self> {
        Self::from_fn(params, times, |q, t| Ok(necf_analytic(params, q, t)?))
    }

    /// Row of `g_q` over the time grid.
    pub fn row(&self, q: i64) -> Result<&[Complex64]> {
        let i = self.params.mode_index(q)?;
        Ok(&self.values[i])
    }

    /// `g_q(t)` linearly interpolated between grid times.
    pub fn at(&self, q: i64, t: f64) -> Result<Complex64> {
        let row = self.row(q)?;
        let k = self.bracket(t)?;
        if k + 1 == self.times.len() {
            return Ok(row[k]);
        }
        let (t0, t1) = (self.times[k], self.times[k + 1]);
        let w = if t1 > t0 { (t - t0) / (t1 - t0) } else { 0.0 };
        Ok(row[k] * (1.0 - w) + row[k + 1] * w)
    }

    /// Index `k` with `times[k] ≤ t < times[k+1]` (or the last index at the end).
    pub fn bracket(&self, t: f64) -> Result<usize> {
        let (start, stop) = (self.times[0], *self.times.last().expect("non-empty grid"));
        if t < start - 1e-12 || t > stop + 1e-12 {
            return Err(DqptError::TimeOutOfGrid { t, start, stop });
        }
        Ok(self.times.partition_point(|&s| s <= t + 1e-12).saturating_sub(1))
    }
}
