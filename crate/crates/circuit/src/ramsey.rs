//! Ramsey-interferometry assemblies: an ancilla in superposition controls the
//! evolution (Loschmidt echo) or a Pauli insertion (non-equal-time
//! correlators), and its `⟨σx⟩ + i⟨σy⟩` reads out `⟨ψ₀|ψ₁⟩` of the two branches.

use num_complex::Complex64;
use schwinger_model::{dispersion, mode_qubits, ModelParams};
use serde::{Deserialize, Serialize};

use crate::builders::{build_prepare, build_quench, build_quench_mode, build_trotter_evolution, build_trotter_evolution_open};
use crate::circuit::Circuit;
use crate::gate::GateKind::{self, *};
use crate::Result;

/// Ancilla measurement basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ReadoutBasis {
    X,
    Y,
}

impl ReadoutBasis {
    pub const BOTH: [ReadoutBasis; 2] = [ReadoutBasis::X, ReadoutBasis::Y];
}

fn readout(c: &mut Circuit, anc: usize, basis: ReadoutBasis) {
    if basis == ReadoutBasis::Y {
        c.g1(Sdg, anc);
    }
    c.g1(H, anc);
}

/// Loschmidt echo `L(t) = ⟨ψ₀|e^{−iH(−m)t}|ψ₀⟩`: ancilla Hadamard, vacuum
/// preparation, quench, ancilla-controlled evolution, ancilla readout.
/// The system qubits `0..N` are measured alongside for postselection: they end
/// in the momentum register at `e = 0` (0 or 2 quasiparticles per mode) and in
/// the position register at `e ≠ 0` (half filling).
pub fn build_ramsey_loschmidt(params: &ModelParams, t: f64, basis: ReadoutBasis) -> Result<Circuit> {
    let n = params.n;
    let mut c = Circuit::with_ancilla(n + 1, n);
    c.g1(H, n);
    c.append(&build_prepare(n, n));
    c.append(&build_quench(params)?);
    c.append(&build_trotter_evolution_open(params, t, true)?);
    readout(&mut c, n, basis);
    Ok(c)
}

/// Which fermion of a momentum mode a correlator refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NecfChannel {
    A,
    B,
}

/// Pauli operator inserted on the mode qubit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pauli {
    X,
    Y,
}

impl Pauli {
    fn controlled_kind(self) -> GateKind {
        match self {
            Pauli::X => Cnot,
            Pauli::Y => Cy,
        }
    }
}

/// One of the eight correlators `⟨P(t) P′(0)⟩` entering `g_q(t)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct NecfComponent {
    pub channel: NecfChannel,
    /// Operator at time `t`.
    pub later: Pauli,
    /// Operator at time `0`.
    pub first: Pauli,
}

impl NecfComponent {
    pub fn all() -> [NecfComponent; 8] {
        let mut out = [NecfComponent { channel: NecfChannel::A, later: Pauli::X, first: Pauli::X }; 8];
        let mut k = 0;
        for channel in [NecfChannel::A, NecfChannel::B] {
            for later in [Pauli::X, Pauli::Y] {
                for first in [Pauli::X, Pauli::Y] {
                    out[k] = NecfComponent { channel, later, first };
                    k += 1;
                }
            }
        }
        out
    }

    /// Recombination weight: with `C = ⟨P(t)P′⟩`, the correlator
    /// `conj(g_q) = Σ w·C` where
    /// `a: ¼[XX − iXY + iYX + YY]` and `b: ¼[XX + iXY − iYX + YY]`.
    pub fn weight(&self) -> Complex64 {
        let s = match self.channel {
            NecfChannel::A => 1.0,
            NecfChannel::B => -1.0,
        };
        match (self.later, self.first) {
            (Pauli::X, Pauli::X) | (Pauli::Y, Pauli::Y) => Complex64::new(0.25, 0.0),
            (Pauli::X, Pauli::Y) => Complex64::new(0.0, -0.25 * s),
            (Pauli::Y, Pauli::X) => Complex64::new(0.0, 0.25 * s),
        }
    }

    pub fn label(&self) -> String {
        let ch = match self.channel {
            NecfChannel::A => "a",
            NecfChannel::B => "b",
        };
        format!("{ch}{:?}{:?}", self.later, self.first)
    }
}

/// Per-mode NECF circuit on three qubits (`a_q` = 0, `b_{−q}` = 1, ancilla = 2).
///
/// At `e = 0` the modes evolve independently and every other mode sits in an
/// even-parity state, so the Jordan-Wigner strings cancel and two system
/// qubits suffice for every `N`.
pub fn build_ramsey_necf(
    params: &ModelParams,
    q: i64,
    t: f64,
    component: NecfComponent,
    basis: ReadoutBasis,
) -> Result<Circuit> {
    let w = dispersion(params, q)?;
    let (anc, target) = (2, component_qubit(component, 0));
    let mut c = Circuit::with_ancilla(3, anc);
    c.g1(H, anc);
    c.g1(X, 0).g1(X, 1);
    c.append(&build_quench_mode(params, q, (0, 1))?);
    c.g2(component.first.controlled_kind(), anc, target);
    c.r1(Rz, 0, w * t).r1(Rz, 1, w * t);
    c.g2(component.later.controlled_kind(), anc, target);
    c.r1(Rz, 0, -w * t).r1(Rz, 1, -w * t);
    readout(&mut c, anc, basis);
    Ok(c)
}

fn component_qubit(component: NecfComponent, base: usize) -> usize {
    match component.channel {
        NecfChannel::A => base,
        NecfChannel::B => base + 1,
    }
}

/// Full-register NECF circuit for arbitrary coupling: controlled Pauli
/// insertions carry their Jordan-Wigner Z strings and the evolution is the
/// Trotterized `U(t)` followed by `U(t)†`. Expensive; the default analysis
/// path uses [`build_ramsey_necf`] at `e = 0`.
pub fn build_ramsey_necf_full(
    params: &ModelParams,
    q: i64,
    t: f64,
    component: NecfComponent,
    basis: ReadoutBasis,
) -> Result<Circuit> {
    let n = params.n;
    let (a, _) = mode_qubits(params.mode_index(q)?);
    let target = component_qubit(component, a);
    let u = build_trotter_evolution(params, t, false)?;
    let mut c = Circuit::with_ancilla(n + 1, n);
    let insert = |c: &mut Circuit, p: Pauli| {
        for k in 0..target {
            c.g2(Cz, n, k);
        }
        c.g2(p.controlled_kind(), n, target);
    };
    c.g1(H, n);
    c.append(&build_prepare(n, n));
    c.append(&build_quench(params)?);
    insert(&mut c, component.first);
    c.append(&u);
    insert(&mut c, component.later);
    c.append(&u.inverse());
    readout(&mut c, n, basis);
    c.phase = 0.0;
    Ok(c)
}
