mod common;

use std::f64::consts::PI;

use common::*;
use num_complex::Complex64;
use proptest::prelude::*;
use schwinger_circuit::*;
use schwinger_model::{bogoliubov_angles, MassSign, ModelParams};

fn block(f: impl FnOnce(&mut Circuit)) -> Circuit {
    let mut c = Circuit::new(2);
    f(&mut c);
    c
}

fn bogoliubov_reference(alpha: f64, beta: f64) -> [[Complex64; 4]; 4] {
    let (s, co) = beta.sin_cos();
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    [
        [z, one, z, z],
        [c(co, 0.0), z, z, -Complex64::from_polar(s, -alpha)],
        [Complex64::from_polar(s, alpha), z, z, c(co, 0.0)],
        [z, z, one, z],
    ]
}

#[test]
fn bogoliubov_block_matrix() {
    for (alpha, beta) in [(0.0, 0.0), (0.3, 0.7), (-1.2, 0.418990612504195), (2.5, -0.9)] {
        let u = block(|c| bogoliubov_block(c, alpha, beta, 0, 1)).unitary().unwrap();
        let want = reorder4(bogoliubov_reference(alpha, beta));
        assert!(phase_distance(&u, &want) < 1e-12, "α={alpha} β={beta}\n{u}");
    }
}

#[test]
fn fswap_block_matrix() {
    let u = block(|c| fswap_block(c, 0, 1)).unitary().unwrap();
    let z = c(0.0, 0.0);
    let one = c(1.0, 0.0);
    let want = reorder4([[-one, z, z, z], [z, z, one, z], [z, one, z, z], [z, z, z, one]]);
    assert!(phase_distance(&u, &want) < 1e-12, "{u}");
}

#[test]
fn fourier_block_matrix() {
    let r = std::f64::consts::FRAC_1_SQRT_2;
    for (k, m) in [(0, 2), (1, 4), (3, 8), (0, 8)] {
        let w = Complex64::from_polar(1.0, -2.0 * PI * k as f64 / m as f64);
        let u = block(|c| fourier_block(c, k, m, 0, 1)).unitary().unwrap();
        let z = c(0.0, 0.0);
        let want = reorder4([
            [-w, z, z, z],
            [z, c(r, 0.0), w * r, z],
            [z, c(r, 0.0), -w * r, z],
            [z, z, z, c(1.0, 0.0)],
        ]);
        assert!(phase_distance(&u, &want) < 1e-12, "k={k} M={m}\n{u}");
    }
}

#[test]
fn quench_block_matrix() {
    for (alpha, beta) in [(0.0, 0.2), (0.9, 0.418990612504195), (-2.0, 1.1)] {
        let u = block(|c| quench_block(c, alpha, beta, 0, 1)).unitary().unwrap();
        let (s2, c2) = (2.0 * beta).sin_cos();
        let z = c(0.0, 0.0);
        let one = c(1.0, 0.0);
        let want = reorder4([
            [c(s2, 0.0), z, z, Complex64::from_polar(c2, -alpha)],
            [z, one, z, z],
            [z, z, one, z],
            [-Complex64::from_polar(c2, alpha), z, z, c(s2, 0.0)],
        ]);
        assert!(phase_distance(&u, &want) < 1e-12, "α={alpha} β={beta}\n{u}");
    }
}

#[test]
fn quench_block_is_product_of_bogoliubov_blocks() {
    // Q = B(−m)† B(+m) on the pair, with β₋ = π/2 − β₊.
    let p = ModelParams::new(8, 0.8);
    for q in p.momenta() {
        let (ap, bp) = bogoliubov_angles(&p, q, MassSign::Plus).unwrap();
        let (am, bm) = bogoliubov_angles(&p, q, MassSign::Minus).unwrap();
        assert!((am - ap).abs() < 1e-15);
        let bplus = block(|c| bogoliubov_block(c, ap, bp, 0, 1)).unitary().unwrap();
        let bminus = block(|c| bogoliubov_block(c, am, bm, 0, 1)).unitary().unwrap();
        let q_u = block(|c| quench_block(c, ap, bp, 0, 1)).unitary().unwrap();
        assert!(phase_distance(&q_u, &(bminus.adjoint() * bplus)) < 1e-12, "q={q}");
    }
}

#[test]
fn block_gate_counts() {
    assert_eq!(block(|c| bogoliubov_block(c, 0.3, 0.4, 0, 1)).gate_counts(), GateCounts { one_qubit: 7, two_qubit: 4 });
    assert_eq!(block(|c| quench_block(c, 0.3, 0.4, 0, 1)).gate_counts(), GateCounts { one_qubit: 11, two_qubit: 3 });
    assert_eq!(block(|c| fswap_block(c, 0, 1)).gate_counts(), GateCounts { one_qubit: 12, two_qubit: 2 });
    assert_eq!(block(|c| fourier_block(c, 1, 4, 0, 1)).gate_counts(), GateCounts { one_qubit: 9, two_qubit: 4 });
}

#[test]
fn gate_decomposition_costs() {
    use GateKind::*;
    for (k, want) in [
        (X, (1, 0)),
        (Rz, (1, 0)),
        (Cnot, (0, 1)),
        (Cz, (2, 1)),
        (Cy, (2, 1)),
        (Ch, (2, 1)),
        (Cry, (2, 2)),
        (Crz, (2, 2)),
        (Rzz, (1, 2)),
        (Crzz, (2, 4)),
    ] {
        assert_eq!(k.decomposed_cost(), want, "{k:?}");
    }
}

#[test]
fn invalid_gates_are_rejected() {
    let mut c = Circuit::new(2);
    assert!(matches!(c.try_push(Gate::new(GateKind::Cnot, &[0, 0], 0.0)), Err(CircuitError::RepeatedQubit { .. })));
    assert!(matches!(c.try_push(Gate::new(GateKind::X, &[2], 0.0)), Err(CircuitError::QubitOutOfRange { .. })));
    assert!(matches!(c.try_push(Gate::new(GateKind::X, &[0, 1], 0.0)), Err(CircuitError::Arity { .. })));
    assert!(matches!(c.try_push(Gate::new(GateKind::Rz, &[0], f64::NAN)), Err(CircuitError::NonFiniteAngle { .. })));
    assert!(c.is_empty());
    assert!(matches!(Circuit::new(13).unitary(), Err(CircuitError::TooWide { .. })));
}

#[test]
fn controlled_zz_matches_its_definition() {
    // CRZZ(θ)[c, i, j] = |0⟩⟨0| ⊗ 1 + |1⟩⟨1| ⊗ RZZ(θ).
    let theta = 0.77;
    let mut c = Circuit::new(3);
    c.push(GateKind::Crzz, &[2, 0, 1], theta);
    let u = c.unitary().unwrap();
    for idx in 0..8usize {
        let ctrl = idx >> 2 & 1;
        let odd = ((idx & 1) ^ (idx >> 1 & 1)) == 1;
        let want = if ctrl == 0 {
            c_one()
        } else {
            Complex64::from_polar(1.0, if odd { theta / 2.0 } else { -theta / 2.0 })
        };
        assert!((u[(idx, idx)] - want).norm() < 1e-14, "{idx}");
    }
}

fn c_one() -> Complex64 {
    c(1.0, 0.0)
}

fn arb_gate(width: usize) -> impl Strategy<Value = Gate> {
    let kinds = prop::sample::select(vec![
        GateKind::X,
        GateKind::Y,
        GateKind::Z,
        GateKind::H,
        GateKind::S,
        GateKind::Sdg,
        GateKind::Rx,
        GateKind::Ry,
        GateKind::Rz,
        GateKind::Phase,
        GateKind::Cnot,
        GateKind::Cy,
        GateKind::Cz,
        GateKind::Ch,
        GateKind::Cry,
        GateKind::Crz,
        GateKind::Rzz,
        GateKind::Crzz,
    ]);
    (kinds, Just((0..width).collect::<Vec<_>>()).prop_shuffle(), -7.0f64..7.0).prop_map(|(k, qs, a)| {
        let angle = if k.has_angle() { a } else { 0.0 };
        Gate::new(k, &qs[..k.arity()], angle)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn circuits_are_unitary_and_invertible(gates in prop::collection::vec(arb_gate(4), 1..30), phase in -3.0f64..3.0) {
        let mut c = Circuit::new(4);
        for g in gates {
            c.try_push(g).unwrap();
        }
        c.phase = phase;
        let u = c.unitary().unwrap();
        prop_assert!(is_unitary(&u, 1e-12));
        let mut both = c.clone();
        both.append(&c.inverse());
        prop_assert!(both.phase.abs() < 1e-12);
        let id = both.unitary().unwrap();
        prop_assert!((id - nalgebra::DMatrix::<Complex64>::identity(16, 16)).camax() < 1e-11);
    }

    #[test]
    fn bogoliubov_and_quench_blocks_are_unitary(alpha in -PI..PI, beta in -PI..PI) {
        prop_assert!(is_unitary(&block(|c| bogoliubov_block(c, alpha, beta, 0, 1)).unitary().unwrap(), 1e-12));
        prop_assert!(is_unitary(&block(|c| quench_block(c, alpha, beta, 1, 0)).unitary().unwrap(), 1e-12));
    }
}
