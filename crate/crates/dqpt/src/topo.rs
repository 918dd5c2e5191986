//! Topological index `ν(t)` from phase windings of `g̃ = g/|g|` around two
//! rectangular contours in the `(q, t′)` plane, `t′ ∈ [0, t]`.
//!
//! The positive contour spans the columns `q = 0, 1, …, N/4` with `N/4`
//! identified with `−N/4` (periodic Brillouin zone), so that it has two
//! distinct columns even at `N = 4`; the negative contour spans
//! `q = 0, −1, …, −N/4`. Each is traversed along `t′ = 0` away from `q = 0`,
//! up the outer column, back along `t′ = t` and down `q = 0`. With `n₊` the
//! winding of the positive loop and `n₋` minus the winding of the negative
//! loop, `ν = n₋ − n₊`.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::grid::NecfGrid;
use crate::{DqptError, Result};

const VORTEX_FLOOR: f64 = 1e-9;

/// Raw winding difference and its nearest integer.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TopoIndex {
    pub t: f64,
    pub raw: f64,
    pub nu: i64,
}

impl TopoIndex {
    /// `|ν − round(ν)| < 0.05`.
    pub fn is_integer(&self) -> bool {
        (self.raw - self.nu as f64).abs() < 0.05
    }
}

fn wrap(d: f64) -> f64 {
    let r = (d + PI).rem_euclid(2.0 * PI) - PI;
    if r <= -PI {
        r + 2.0 * PI
    } else {
        r
    }
}

fn checked(z: Complex64, q: i64, t: f64) -> Result<Complex64> {
    if z.norm() < VORTEX_FLOOR {
        return Err(DqptError::VortexOnContour { q, t });
    }
    Ok(z)
}

/// Accumulated phase of `g_q` from `t′ = 0` to `t′ = t` along the grid, with
/// the endpoint linearly interpolated.
fn time_edge(grid: &NecfGrid, q: i64, t: f64) -> Result<f64> {
    let row = grid.row(q)?;
    let k = grid.bracket(t)?;
    let mut samples: Vec<(f64, Complex64)> = (0..=k).map(|j| (grid.times[j], row[j])).collect();
    if t > grid.times[k] + 1e-12 {
        samples.push((t, grid.at(q, t)?));
    }
    let mut total = 0.0;
    for w in samples.windows(2) {
        let a = checked(w[0].1, q, w[0].0)?;
        let b = checked(w[1].1, q, w[1].0)?;
        let step = wrap(b.arg() - a.arg());
        if step.abs() >= FRAC_PI_2 {
            return Err(DqptError::GridTooCoarse { q, t: w[1].0, step });
        }
        total += step;
    }
    Ok(total)
}

/// Winding number (in units of 2π) of the loop through `columns`.
fn loop_winding(grid: &NecfGrid, columns: &[i64], t: f64) -> Result<f64> {
    let start = grid.times[0];
    let mut total = 0.0;
    for w in columns.windows(2) {
        let a = checked(grid.at(w[0], start)?, w[0], start)?;
        let b = checked(grid.at(w[1], start)?, w[1], start)?;
        total += wrap(b.arg() - a.arg());
    }
    let outer = *columns.last().expect("at least two columns");
    total += time_edge(grid, outer, t)?;
    for w in columns.windows(2).rev() {
        let a = checked(grid.at(w[1], t)?, w[1], t)?;
        let b = checked(grid.at(w[0], t)?, w[0], t)?;
        total += wrap(b.arg() - a.arg());
    }
    total -= time_edge(grid, columns[0], t)?;
    Ok(total / (2.0 * PI))
}

/// `ν(t)` from a grid that starts at `t′ = 0` and covers `t`.
pub fn topological_index(grid: &NecfGrid, t: f64) -> Result<TopoIndex> {
    if grid.times.len() < 2 {
        return Err(DqptError::TooFewSamples { need: 2, got: grid.times.len() });
    }
    let quarter = grid.params.n as i64 / 4;
    // q = N/4 is the periodic image of −N/4.
    let positive: Vec<i64> = (0..=quarter).map(|q| if q == quarter { -quarter } else { q }).collect();
    let negative: Vec<i64> = (0..=quarter).map(|q| -q).collect();
    let n_plus = loop_winding(grid, &positive, t)?;
    let n_minus = -loop_winding(grid, &negative, t)?;
    let raw = n_minus - n_plus;
    Ok(TopoIndex { t, raw, nu: raw.round() as i64 })
}

/// `ν` at every grid time.
pub fn nu_trajectory(grid: &NecfGrid) -> Result<Vec<TopoIndex>> {
    grid.times.iter().map(|&t| topological_index(grid, t)).collect()
}

/// `ν(t)` from closed-form correlators, refining the time sampling of each
/// contour until every phase step is below π/2.
pub fn nu_oracle(params: &schwinger_model::ModelParams, times: &[f64]) -> Result<Vec<TopoIndex>> {
    times
        .iter()
        .map(|&t| {
            let mut segments = ((t / 0.05).ceil() as usize).max(2);
            loop {
                let fine: Vec<f64> = (0..=segments).map(|j| t * j as f64 / segments as f64).collect();
                match topological_index(&NecfGrid::analytic(params, &fine)?, t) {
                    Err(DqptError::GridTooCoarse { .. }) if segments < 1 << 16 => segments *= 2,
                    other => return other,
                }
            }
        })
        .collect()
}
