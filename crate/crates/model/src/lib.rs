//! Lattice Schwinger model with staggered fermions, with the gauge field
//! integrated out into a long-range density-density interaction.
//!
//! Everything downstream (circuits, oracles, estimators) reads its physics
//! from [`ModelParams`] and the momentum-space helpers defined here.
//!
//! Conventions shared across the workspace:
//! - site `n` ↔ qubit `n`; the Jordan-Wigner string starts at qubit 0;
//! - a qubit in `|0⟩` is an *occupied* mode, `|1⟩` an empty one, so the
//!   occupation operator is `n = (1 + Z)/2`;
//! - the momentum register stores mode `q_i = −N/4 + i` on qubits
//!   `2i` (particle `a_q`) and `2i + 1` (antiparticle `b_{−q}`).

use std::f64::consts::PI;

use nalgebra::Matrix2;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ModelError {
    #[error("invalid model parameters: {}", .0.join("; "))]
    InvalidParams(Vec<String>),
    #[error("momentum q = {q} outside [{lo}, {hi}]")]
    MomentumOutOfRange { q: i64, lo: i64, hi: i64 },
    #[error("distance d = {d} exceeds N/2 = {half}")]
    DistanceOutOfRange { d: usize, half: usize },
    #[error("degenerate mode q = {q}: ω_q = 0")]
    DegenerateMode { q: i64 },
}

pub type Result<T> = std::result::Result<T, ModelError>;

/// Physical parameters of one lattice Schwinger model instance.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    /// Number of lattice sites (multiple of 4).
    #[serde(rename = "N")]
    pub n: usize,
    /// Lattice spacing.
    #[serde(default = "default_spacing")]
    pub a: f64,
    /// Fermion mass before the θ rotation.
    pub m: f64,
    /// Electric coupling.
    #[serde(default)]
    pub e: f64,
    /// Topological angle; enters only through `m cos θ`.
    #[serde(default)]
    pub theta: f64,
    /// Trotter step count.
    #[serde(rename = "N_T", default = "default_trotter")]
    pub n_trotter: usize,
}

fn default_spacing() -> f64 {
    1.0
}

fn default_trotter() -> usize {
    1
}

impl ModelParams {
    /// Free theory with `a = 1`, `θ = 0`, one Trotter step.
    pub fn new(n: usize, m: f64) -> Self {
        Self { n, a: 1.0, m, e: 0.0, theta: 0.0, n_trotter: 1 }
    }

    pub fn with_coupling(mut self, e: f64) -> Self {
        self.e = e;
        self
    }

    pub fn with_spacing(mut self, a: f64) -> Self {
        self.a = a;
        self
    }

    pub fn with_theta(mut self, theta: f64) -> Self {
        self.theta = theta;
        self
    }

    pub fn with_trotter_steps(mut self, n_trotter: usize) -> Self {
        self.n_trotter = n_trotter;
        self
    }

    /// Every violated invariant, in a stable order. Empty when valid.
    pub fn violations(&self) -> Vec<String> {
        let mut v = Vec::new();
        if self.n < 4 || self.n % 4 != 0 {
            v.push(format!("N = {} must be a positive multiple of 4", self.n));
        }
        if !(self.a.is_finite() && self.a > 0.0) {
            v.push(format!("a = {} must be finite and > 0", self.a));
        }
        if !self.m.is_finite() {
            v.push(format!("m = {} must be finite", self.m));
        }
        if !(self.e.is_finite() && self.e >= 0.0) {
            v.push(format!("e = {} must be finite and ≥ 0", self.e));
        }
        if !self.theta.is_finite() {
            v.push(format!("theta = {} must be finite", self.theta));
        }
        if self.n_trotter < 1 {
            v.push("N_T must be ≥ 1".to_string());
        }
        v
    }

    pub fn validate(&self) -> Result<()> {
        let v = self.violations();
        if v.is_empty() {
            Ok(())
        } else {
            Err(ModelError::InvalidParams(v))
        }
    }

    /// Mass entering every momentum-space quantity.
    pub fn effective_mass(&self) -> f64 {
        self.m * self.theta.cos()
    }

    /// Number of momentum modes `N/2`.
    pub fn n_modes(&self) -> usize {
        self.n / 2
    }

    pub fn q_min(&self) -> i64 {
        -((self.n / 4) as i64)
    }

    pub fn q_max(&self) -> i64 {
        (self.n / 4) as i64 - 1
    }

    /// Wavenumbers in register order, `−N/4 … N/4 − 1`.
    pub fn momenta(&self) -> impl Iterator<Item = i64> {
        self.q_min()..=self.q_max()
    }

    pub fn check_momentum(&self, q: i64) -> Result<()> {
        if q < self.q_min() || q > self.q_max() {
            Err(ModelError::MomentumOutOfRange { q, lo: self.q_min(), hi: self.q_max() })
        } else {
            Ok(())
        }
    }

    /// Register slot of wavenumber `q`.
    pub fn mode_index(&self, q: i64) -> Result<usize> {
        self.check_momentum(q)?;
        Ok((q - self.q_min()) as usize)
    }

    /// Wavenumber stored in register slot `i`.
    pub fn momentum_of(&self, i: usize) -> i64 {
        self.q_min() + i as i64
    }

    /// Same model with the mass sign flipped (θ → θ + π).
    pub fn quenched(&self) -> Self {
        Self { m: -self.m, ..*self }
    }
}

/// Qubits `(a_q, b_{−q})` of register slot `i`.
pub fn mode_qubits(i: usize) -> (usize, usize) {
    (2 * i, 2 * i + 1)
}

/// Which mass the momentum-space eigenbasis refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum MassSign {
    Plus,
    Minus,
}

impl MassSign {
    pub fn factor(self) -> f64 {
        match self {
            MassSign::Plus => 1.0,
            MassSign::Minus => -1.0,
        }
    }
}

/// All momentum-space data of one mode.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MomentumMode {
    pub q: i64,
    pub alpha: f64,
    pub omega: f64,
    /// Bogoliubov angle for mass `+|m cos θ|`.
    pub beta_plus: f64,
    /// Bogoliubov angle for mass `−|m cos θ|`.
    pub beta_minus: f64,
}

pub fn mode(params: &ModelParams, q: i64) -> Result<MomentumMode> {
    let mu = params.effective_mass().abs();
    let (alpha, beta_plus) = angles_for_mass(params, q, mu)?;
    let (_, beta_minus) = angles_for_mass(params, q, -mu)?;
    Ok(MomentumMode { q, alpha, omega: dispersion(params, q)?, beta_plus, beta_minus })
}

/// `p̃(q) = a⁻¹ e^{iα} cos α` with `α = 2πq/N`.
pub fn hopping_symbol(params: &ModelParams, q: i64) -> Complex64 {
    let alpha = 2.0 * PI * q as f64 / params.n as f64;
    Complex64::from_polar(alpha.cos() / params.a, alpha)
}

/// Single-particle energy `ω_q = sqrt((m cos θ)² + a⁻² cos²(2πq/N))`.
pub fn dispersion(params: &ModelParams, q: i64) -> Result<f64> {
    params.validate()?;
    params.check_momentum(q)?;
    let mu = params.effective_mass();
    Ok((mu * mu + hopping_symbol(params, q).norm_sqr()).sqrt())
}

fn angles_for_mass(params: &ModelParams, q: i64, mass: f64) -> Result<(f64, f64)> {
    let omega = dispersion(params, q)?;
    if omega == 0.0 {
        return Err(ModelError::DegenerateMode { q });
    }
    let alpha = 2.0 * PI * q as f64 / params.n as f64;
    let beta = ((omega - mass) / (omega + mass)).max(0.0).sqrt().atan();
    Ok((alpha, beta))
}

/// `(α, β)` of mode `q` in the eigenbasis of mass `sign · m cos θ`.
pub fn bogoliubov_angles(params: &ModelParams, q: i64, sign: MassSign) -> Result<(f64, f64)> {
    angles_for_mass(params, q, sign.factor() * params.effective_mass())
}

/// 2×2 block `H_q` of the free Hamiltonian at mass `sign · m cos θ`.
pub fn mode_hamiltonian(params: &ModelParams, q: i64, sign: MassSign) -> Result<Matrix2<Complex64>> {
    params.validate()?;
    params.check_momentum(q)?;
    let mass = Complex64::from(sign.factor() * params.effective_mass());
    let p = hopping_symbol(params, q);
    Ok(Matrix2::new(mass, p, p.conj(), -mass))
}

/// `U_q = (u_q, v_{−q})`, the columns being the `±ω_q` eigenspinors of `H_q`.
pub fn bogoliubov_matrix(params: &ModelParams, q: i64, sign: MassSign) -> Result<Matrix2<Complex64>> {
    let (alpha, beta) = bogoliubov_angles(params, q, sign)?;
    let (s, c) = beta.sin_cos();
    Ok(Matrix2::new(
        Complex64::from(c),
        -Complex64::from_polar(s, alpha),
        Complex64::from_polar(s, -alpha),
        Complex64::from(c),
    ))
}

/// Periodic lattice distance `min(|i − j|, N − |i − j|)`.
pub fn site_distance(n: usize, i: usize, j: usize) -> usize {
    let d = i.abs_diff(j) % n;
    d.min(n - d)
}

/// Long-range kernel `ν(d)` of the density-density interaction.
pub fn interaction_coefficient(n: usize, d: usize) -> Result<f64> {
    if d > n / 2 {
        return Err(ModelError::DistanceOutOfRange { d, half: n / 2 });
    }
    let nf = n as f64;
    let df = d as f64;
    let prefactor = (3.0 - nf) / (4.0 * (nf - 2.0));
    let body = if d == n / 2 {
        (nf * nf - 8.0) / (4.0 * (nf - 3.0))
    } else if d <= 1 {
        df
    } else {
        df + (df * df - 3.0 * df + 2.0) / (3.0 - nf)
    };
    Ok(prefactor * body)
}

/// Background offset of the staggered charge: `𝒬_n = n_n − [n odd]`.
pub fn charge_background(site: usize) -> f64 {
    if site % 2 == 1 {
        1.0
    } else {
        0.0
    }
}

/// Staggered charge of a site with given occupation.
pub fn staggered_charge(site: usize, occupied: bool) -> f64 {
    f64::from(u8::from(occupied)) - charge_background(site)
}

/// Whether site `n` is occupied in computational basis state `index`.
pub fn is_occupied(index: usize, site: usize) -> bool {
    (index >> site) & 1 == 0
}

/// Total staggered charge `Σ_n 𝒬_n` of a computational basis state.
pub fn total_charge(n: usize, index: usize) -> f64 {
    (0..n).map(|s| staggered_charge(s, is_occupied(index, s))).sum()
}

/// `H_I` written in Pauli-Z form. Diagonal in the computational basis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InteractionTerms {
    /// Identity coefficient; dropped by circuits and carried as a phase.
    pub constant: f64,
    /// `(site, h)` for `h Z_site`, one entry per site.
    pub z: Vec<(usize, f64)>,
    /// `(i, j, J)` for `J Z_i Z_j`, one entry per pair `i < j`.
    pub zz: Vec<(usize, usize, f64)>,
}

impl InteractionTerms {
    pub fn is_empty(&self) -> bool {
        self.z.is_empty() && self.zz.is_empty()
    }

    /// Energy of computational basis state `index` (bit 0 ↔ `Z = +1`).
    pub fn diagonal_energy(&self, index: usize) -> f64 {
        let z = |k: usize| if (index >> k) & 1 == 0 { 1.0 } else { -1.0 };
        self.constant
            + self.z.iter().map(|&(k, h)| h * z(k)).sum::<f64>()
            + self.zz.iter().map(|&(i, j, c)| c * z(i) * z(j)).sum::<f64>()
    }
}

/// Expands `H_I = a e² Σ_{n,m} ν(d_nm) 𝒬_n 𝒬_m` with `𝒬_n = Z_n/2 + c_n`.
///
/// The term list is structural: at `e > 0` every site gets a Z term and every
/// pair a ZZ term even when the coefficient vanishes by symmetry, so emitted
/// circuits have a parameter-independent shape. At `e = 0` the list is empty.
pub fn interaction_hamiltonian_terms(params: &ModelParams) -> Result<InteractionTerms> {
    params.validate()?;
    let n = params.n;
    if params.e == 0.0 {
        return Ok(InteractionTerms { constant: 0.0, z: Vec::new(), zz: Vec::new() });
    }
    let g = params.a * params.e * params.e;
    let c = |s: usize| 0.5 - charge_background(s);
    let nu = |i: usize, j: usize| interaction_coefficient(n, site_distance(n, i, j));
    let mut constant = 0.0;
    let mut z = Vec::with_capacity(n);
    let mut zz = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        let mut h = 0.0;
        for j in 0..n {
            if j != i {
                let v = nu(i, j)?;
                h += v * c(j);
                constant += v * c(i) * c(j);
            }
        }
        z.push((i, g * h));
        for j in (i + 1)..n {
            zz.push((i, j, g * nu(i, j)? / 2.0));
        }
    }
    Ok(InteractionTerms { constant: g * constant, z, zz })
}
