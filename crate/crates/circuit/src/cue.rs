//! Haar-random single-qubit unitaries and their `RZ·RY·RZ` compilation.

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::circuit::Circuit;
use crate::gate::{mul, rz, ry, Mat2};
use crate::gate::GateKind::{Ry, Rz};
use crate::{CircuitError, Result};

/// Euler angles of one qubit's random rotation, applied as
/// `RZ(γ1)`, then `RY(γ2)`, then `RZ(γ3)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CueAngles {
    pub gamma1: f64,
    pub gamma2: f64,
    pub gamma3: f64,
}

impl CueAngles {
    /// `RZ(γ3)·RY(γ2)·RZ(γ1)`.
    pub fn matrix(&self) -> Mat2 {
        mul(&rz(self.gamma3), &mul(&ry(self.gamma2), &rz(self.gamma1)))
    }
}

/// Haar-distributed 2×2 unitary from the QR decomposition of a complex
/// Ginibre matrix with the phases of `R`'s diagonal absorbed.
pub fn sample_cue<R: Rng + ?Sized>(rng: &mut R) -> Mat2 {
    let mut g = || {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im)
    };
    let (a0, a1, b0, b1) = (g(), g(), g(), g());
    // Gram-Schmidt on columns (a0, a1) and (b0, b1); R's diagonal is then real
    // positive, which is exactly the phase fix that makes Q Haar distributed.
    let na = (a0.norm_sqr() + a1.norm_sqr()).sqrt();
    let (u0, u1) = (a0 / na, a1 / na);
    let proj = u0.conj() * b0 + u1.conj() * b1;
    let (c0, c1) = (b0 - proj * u0, b1 - proj * u1);
    let nc = (c0.norm_sqr() + c1.norm_sqr()).sqrt();
    [[u0, c0 / nc], [u1, c1 / nc]]
}

/// Largest deviation of `u†u` from the identity.
pub fn unitarity_error(u: &Mat2) -> f64 {
    let mut err: f64 = 0.0;
    for i in 0..2 {
        for j in 0..2 {
            let v = u[0][i].conj() * u[0][j] + u[1][i].conj() * u[1][j];
            let want = if i == j { 1.0 } else { 0.0 };
            err = err.max((v - want).norm());
        }
    }
    err
}

/// Euler angles reproducing `u` up to a global phase.
pub fn zyz_angles(u: &Mat2) -> Result<CueAngles> {
    if unitarity_error(u) > 1e-10 {
        return Err(CircuitError::NotUnitary);
    }
    let det = u[0][0] * u[1][1] - u[0][1] * u[1][0];
    let strip = Complex64::from_polar(1.0, -det.arg() / 2.0);
    let x = u[0][0] * strip;
    let y = u[0][1] * strip;
    let gamma2 = 2.0 * y.norm().atan2(x.norm());
    let (px, py) = (x.arg(), (-y).arg());
    let px = if x.norm() < 1e-300 { 0.0 } else { px };
    let py = if y.norm() < 1e-300 { 0.0 } else { py };
    Ok(CueAngles { gamma1: -px + py, gamma2, gamma3: -px - py })
}

/// Random-measurement layer: qubit `k` gets `RZ(γ1)·RY(γ2)·RZ(γ3)` for `unitaries[k]`.
pub fn build_cue_layer(unitaries: &[Mat2]) -> Result<(Circuit, Vec<CueAngles>)> {
    let angles = unitaries.iter().map(zyz_angles).collect::<Result<Vec<_>>>()?;
    Ok((cue_layer_from_angles(&angles), angles))
}

/// Random-measurement layer from precomputed Euler angles.
pub fn cue_layer_from_angles(angles: &[CueAngles]) -> Circuit {
    let mut c = Circuit::new(angles.len());
    for (k, a) in angles.iter().enumerate() {
        c.r1(Rz, k, a.gamma1).r1(Ry, k, a.gamma2).r1(Rz, k, a.gamma3);
    }
    c
}
