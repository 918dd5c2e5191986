//! Two-qubit blocks and register-wide builders for preparation, quench,
//! Bogoliubov and fermionic Fourier transforms, and time evolution.
//!
//! Every two-qubit block acts on an ordered pair `(i, j)`; for momentum modes
//! `i` holds `a_q` and `j` holds `b_{−q}`.

use std::f64::consts::{FRAC_PI_2, PI};

use schwinger_model::{
    bogoliubov_angles, dispersion, interaction_hamiltonian_terms, mode_qubits, MassSign, ModelParams,
};

use crate::circuit::Circuit;
use crate::gate::GateKind::*;
use crate::{CircuitError, Result};

/// Which way the fermionic Fourier transform maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum FourierDirection {
    MomentumToPosition,
    PositionToMomentum,
}

/// Bogoliubov block: maps `(a_q, b†_{−q})` occupations to `(ψ_even, ψ_odd)`.
pub fn bogoliubov_block(c: &mut Circuit, alpha: f64, beta: f64, i: usize, j: usize) {
    c.r1(Rz, j, -alpha).g1(X, j);
    c.g2(Cnot, j, i);
    c.r2(Cry, i, j, -2.0 * beta);
    c.g2(Cnot, j, i);
    c.g1(X, j).r1(Rz, j, alpha).g1(X, j);
}

/// Fermionic swap: exchanges two modes, `−1` on double occupation.
pub fn fswap_block(c: &mut Circuit, i: usize, j: usize) {
    c.g1(X, i).g1(X, j);
    c.r1(Rx, i, FRAC_PI_2).r1(Rx, j, FRAC_PI_2);
    c.g2(Cnot, i, j);
    c.r1(Rx, i, FRAC_PI_2).r1(Rz, j, FRAC_PI_2);
    c.g2(Cnot, i, j);
    c.r1(Rx, i, -FRAC_PI_2).r1(Rx, j, -FRAC_PI_2);
    c.r1(Rz, i, FRAC_PI_2).r1(Rz, j, FRAC_PI_2);
    c.g1(X, i).g1(X, j);
}

/// Two-point Fourier butterfly with twiddle `e^{−2πik/M}`.
pub fn fourier_block(c: &mut Circuit, k: usize, m: usize, i: usize, j: usize) {
    c.g1(X, i).g1(X, j);
    c.r1(Phase, j, -2.0 * PI * k as f64 / m as f64);
    c.g2(Cnot, j, i);
    c.g2(Ch, i, j);
    c.g2(Cnot, j, i);
    c.g2(Cz, j, i);
    c.g1(X, i).g1(X, j);
}

/// Quench block `Q_q = B_q† B̄_q`, mixing the empty and doubly occupied states.
pub fn quench_block(c: &mut Circuit, alpha: f64, beta: f64, i: usize, j: usize) {
    let g1 = 2.0 * beta - FRAC_PI_2;
    let g2 = -alpha - FRAC_PI_2;
    c.g1(X, i).r1(Rz, j, g2);
    c.g2(Cnot, i, j);
    c.r1(Rx, i, g1).g1(H, i);
    c.g2(Cnot, i, j);
    c.g1(S, i).g1(H, i).r1(Rz, j, -g1);
    c.g2(Cnot, i, j);
    c.r1(Rx, i, -FRAC_PI_2).r1(Rx, j, FRAC_PI_2);
    c.g1(X, i).r1(Rz, j, -g2);
}

/// Pairs swapped by the ladder sorting interleaved wires `(e₀, o₀, e₁, o₁, …)`
/// into `(e₀, e₁, …, o₀, o₁, …)`, in application order.
fn parity_sort_pairs(wires: &[usize]) -> Vec<(usize, usize)> {
    let half = wires.len() / 2;
    let mut pairs = Vec::new();
    for layer in 0..half.saturating_sub(1) {
        for k in 0..(half - 1 - layer) {
            let i = layer + 1 + 2 * k;
            pairs.push((wires[i], wires[i + 1]));
        }
    }
    pairs
}

/// fSWAP ladder grouping even-offset wires before odd-offset wires.
pub fn parity_sort_network(c: &mut Circuit, wires: &[usize]) {
    for (i, j) in parity_sort_pairs(wires) {
        fswap_block(c, i, j);
    }
}

/// Inverse of [`parity_sort_network`]: the same swaps in reverse order.
pub fn parity_unsort_network(c: &mut Circuit, wires: &[usize]) {
    for (i, j) in parity_sort_pairs(wires).into_iter().rev() {
        fswap_block(c, i, j);
    }
}

/// Radix-2 position-to-momentum transform on `wires` (length a power of 2),
/// momenta `0 … M−1`.
pub fn fourier_p2m_into(c: &mut Circuit, wires: &[usize]) {
    let m = wires.len();
    match m {
        0 | 1 => {}
        2 => fourier_block(c, 0, 2, wires[0], wires[1]),
        _ => {
            parity_sort_network(c, wires);
            fourier_p2m_into(c, &wires[..m / 2]);
            fourier_p2m_into(c, &wires[m / 2..]);
            parity_unsort_network(c, wires);
            for k in 0..m / 2 {
                fourier_block(c, k, m, wires[2 * k], wires[2 * k + 1]);
            }
            parity_sort_network(c, wires);
        }
    }
}

/// Staggered fermionic Fourier transform on the full `N`-qubit register.
///
/// Momentum → position: sort the mode register into its `a` and `b` halves,
/// apply the inverse radix-2 transform on each half, shift the momentum window
/// to `[−N/4, N/4−1]` with a Z layer, and undo the sort.
pub fn build_fourier(params: &ModelParams, direction: FourierDirection) -> Result<Circuit> {
    params.validate()?;
    let n = params.n;
    let half = n / 2;
    if !half.is_power_of_two() {
        return Err(CircuitError::UnsupportedSize { n });
    }
    let wires: Vec<usize> = (0..n).collect();
    let mut c = Circuit::new(n);
    parity_sort_network(&mut c, &wires);
    for part in [&wires[..half], &wires[half..]] {
        let mut f = Circuit::new(n);
        fourier_p2m_into(&mut f, part);
        c.append(&f.inverse());
        for &w in part.iter().skip(1).step_by(2) {
            c.g1(Z, w);
        }
    }
    parity_unsort_network(&mut c, &wires);
    Ok(match direction {
        FourierDirection::MomentumToPosition => c,
        FourierDirection::PositionToMomentum => c.inverse(),
    })
}

/// Bogoliubov block for mode `q` on an explicit qubit pair.
pub fn build_bogoliubov(params: &ModelParams, q: i64, sign: MassSign, pair: (usize, usize)) -> Result<Circuit> {
    let (alpha, beta) = bogoliubov_angles(params, q, sign)?;
    let mut c = Circuit::new(pair.0.max(pair.1) + 1);
    bogoliubov_block(&mut c, alpha, beta, pair.0, pair.1);
    Ok(c)
}

/// Bogoliubov transform of every mode in the momentum register.
pub fn build_bogoliubov_register(params: &ModelParams, sign: MassSign) -> Result<Circuit> {
    let mut c = Circuit::new(params.n);
    for (i, q) in params.momenta().enumerate() {
        let (alpha, beta) = bogoliubov_angles(params, q, sign)?;
        let (a, b) = mode_qubits(i);
        bogoliubov_block(&mut c, alpha, beta, a, b);
    }
    Ok(c)
}

/// Basis change `V = F·B(−m)` from the post-quench momentum register to sites.
pub fn build_basis_change(params: &ModelParams) -> Result<Circuit> {
    let mut c = build_bogoliubov_register(params, MassSign::Minus)?;
    c.append(&build_fourier(params, FourierDirection::MomentumToPosition)?);
    Ok(c)
}

/// fSWAP on an explicit pair.
pub fn build_fswap(pair: (usize, usize)) -> Circuit {
    let mut c = Circuit::new(pair.0.max(pair.1) + 1);
    fswap_block(&mut c, pair.0, pair.1);
    c
}

/// Quench block of mode `q` on an explicit pair.
pub fn build_quench_mode(params: &ModelParams, q: i64, pair: (usize, usize)) -> Result<Circuit> {
    let (alpha, beta) = bogoliubov_angles(params, q, MassSign::Plus)?;
    let mut c = Circuit::new(pair.0.max(pair.1) + 1);
    quench_block(&mut c, alpha, beta, pair.0, pair.1);
    Ok(c)
}

/// `Q = ⊗_q Q_q`: re-expresses the `+m` vacuum in the `−m` eigenbasis.
pub fn build_quench(params: &ModelParams) -> Result<Circuit> {
    let mut c = Circuit::new(params.n);
    for (i, q) in params.momenta().enumerate() {
        let (alpha, beta) = bogoliubov_angles(params, q, MassSign::Plus)?;
        let (a, b) = mode_qubits(i);
        quench_block(&mut c, alpha, beta, a, b);
    }
    Ok(c)
}

/// Vacuum of the momentum register: every mode empty, i.e. X on `0..n`.
pub fn build_prepare(n: usize, width: usize) -> Circuit {
    let mut c = Circuit::new(width);
    for k in 0..n {
        c.g1(X, k);
    }
    c
}

fn control_width(params: &ModelParams, controlled: bool) -> Circuit {
    if controlled {
        Circuit::with_ancilla(params.n + 1, params.n)
    } else {
        Circuit::new(params.n)
    }
}

/// `e^{−iH₀(−m)t}` in the momentum register: `RZ(ω_q t)` on both mode qubits.
/// With `controlled`, every rotation is conditioned on the ancilla (qubit `N`).
pub fn build_free_evolution(params: &ModelParams, t: f64, controlled: bool) -> Result<Circuit> {
    let mut c = control_width(params, controlled);
    for (i, q) in params.momenta().enumerate() {
        let w = dispersion(params, q)?;
        let (a, b) = mode_qubits(i);
        for k in [a, b] {
            if controlled {
                c.r2(Crz, params.n, k, w * t);
            } else {
                c.r1(Rz, k, w * t);
            }
        }
    }
    Ok(c)
}

/// `e^{−iH_I dt}` in the position register from the Pauli-Z expansion; the
/// identity part is carried in the phase tag.
pub fn build_interaction_evolution(params: &ModelParams, dt: f64, controlled: bool) -> Result<Circuit> {
    let terms = interaction_hamiltonian_terms(params)?;
    let mut c = control_width(params, controlled);
    let anc = params.n;
    for &(k, h) in &terms.z {
        if controlled {
            c.r2(Crz, anc, k, 2.0 * h * dt);
        } else {
            c.r1(Rz, k, 2.0 * h * dt);
        }
    }
    for &(i, j, coupling) in &terms.zz {
        if controlled {
            c.push(Crzz, &[anc, i, j], 2.0 * coupling * dt);
        } else {
            c.r2(Rzz, i, j, 2.0 * coupling * dt);
        }
    }
    c.phase = -terms.constant * dt;
    Ok(c)
}

/// `N_T` Trotter steps of `e^{−iH(−m)t}` in the momentum register. Each step
/// is free evolution followed by `V† e^{−iH_I δt} V`; only the diagonal
/// evolutions are controlled. At `e = 0` this is exactly the free evolution.
pub fn build_trotter_evolution(params: &ModelParams, t: f64, controlled: bool) -> Result<Circuit> {
    trotter_steps(params, t, controlled, true)
}

/// As [`build_trotter_evolution`] but without the final uncontrolled `V†`, so
/// the register ends in the position basis (`e ≠ 0`). Overlaps between the
/// controlled and idle branches are unchanged since `V†` acts on both.
pub fn build_trotter_evolution_open(params: &ModelParams, t: f64, controlled: bool) -> Result<Circuit> {
    trotter_steps(params, t, controlled, false)
}

fn trotter_steps(params: &ModelParams, t: f64, controlled: bool, close: bool) -> Result<Circuit> {
    params.validate()?;
    if params.e == 0.0 {
        return build_free_evolution(params, t, controlled);
    }
    let steps = params.n_trotter;
    let dt = t / steps as f64;
    let free = build_free_evolution(params, dt, controlled)?;
    let inter = build_interaction_evolution(params, dt, controlled)?;
    let v = build_basis_change(params)?;
    let v_inv = v.inverse();
    let mut c = control_width(params, controlled);
    for step in 0..steps {
        c.append(&free);
        c.append(&v);
        c.append(&inter);
        if close || step + 1 < steps {
            c.append(&v_inv);
        }
    }
    Ok(c)
}

/// Quenched state `e^{−iH(−m)t}|ψ₀(+m)⟩` in the position register: vacuum,
/// quench, (Trotterized) evolution and the basis change to sites.
pub fn build_quenched_state(params: &ModelParams, t: f64) -> Result<Circuit> {
    let n = params.n;
    let mut c = build_prepare(n, n);
    c.append(&build_quench(params)?);
    c.append(&build_trotter_evolution_open(params, t, false)?);
    if params.e == 0.0 {
        c.append(&build_basis_change(params)?);
    }
    Ok(c)
}
