use std::f64::consts::PI;

use nalgebra::DMatrix;
use num_complex::Complex64;
use proptest::prelude::*;
use schwinger_model::{dispersion, ModelParams};
use schwinger_oracle::*;

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn grid(stop: f64, points: usize) -> Vec<f64> {
    (0..points).map(|k| stop * k as f64 / (points - 1) as f64).collect()
}

#[test]
fn loschmidt_is_one_at_zero_time() {
    for p in [ModelParams::new(4, 0.9), ModelParams::new(8, 0.8), ModelParams::new(8, -0.3)] {
        assert!((loschmidt_analytic(&p, 0.0).unwrap() - 1.0).norm() < 1e-15);
    }
}

#[test]
fn zone_edge_mode_is_a_pure_phase() {
    let p = ModelParams::new(4, 0.9);
    for t in grid(5.0, 11) {
        let g = necf_analytic(&p, -1, t).unwrap();
        assert!((g - Complex64::from_polar(1.0, -0.9 * t)).norm() < 1e-14);
    }
}

#[test]
fn loschmidt_at_first_minimum() {
    let p = ModelParams::new(4, 0.9);
    let t = PI / (2.0 * dispersion(&p, 0).unwrap());
    assert!((t - 1.16756).abs() < 1e-4);
    let l = loschmidt_analytic(&p, t).unwrap();
    assert!((l.norm() - 0.1049724).abs() < 1e-7, "{}", l.norm());
    assert!((rate_function(l, 4) - 0.5635145).abs() < 1e-7);
}

#[test]
fn rate_function_examples() {
    assert_eq!(rate_function(c(1.0, 0.0), 4), 0.0);
    assert!((rate_function(c(0.0, (-8.0f64).exp()), 8) - 1.0).abs() < 1e-14);
    assert!((rate_function(c(0.28825, 0.0), 4) - 0.31105).abs() < 1e-4);
    assert_eq!(rate_function(c(0.0, 0.0), 4), f64::INFINITY);
}

#[test]
fn closed_forms_reject_interacting_models() {
    let p = ModelParams::new(4, 0.9).with_coupling(0.5);
    assert!(matches!(loschmidt_analytic(&p, 1.0), Err(OracleError::Interacting { .. })));
    assert!(necf_analytic(&p, 0, 1.0).is_err());
    assert!(correlation_matrix(&p, 1.0).is_err());
}

#[test]
fn product_of_mode_factors_is_the_echo() {
    let p = ModelParams::new(8, 0.8);
    for t in grid(6.0, 50) {
        let prod: Complex64 = p.momenta().map(|q| necf_analytic(&p, q, t).unwrap()).product();
        assert!((prod - loschmidt_analytic(&p, t).unwrap()).norm() < 1e-12);
    }
}

#[test]
fn exact_evolution_matches_closed_form() {
    for p in [ModelParams::new(4, 0.9), ModelParams::new(8, 0.8), ModelParams::new(8, -0.6).with_spacing(1.4)] {
        let prop = propagator(&p).unwrap();
        let g0 = prop.ground_state();
        for t in grid(4.0 / p.m.abs(), 50) {
            let psi = exact_evolve(&p, t).unwrap();
            let overlap = inner(&g0, &psi);
            let want = loschmidt_analytic(&p, t).unwrap();
            assert!((overlap - want).norm() < 1e-8, "N={} t={t}: {overlap} vs {want}", p.n);
            assert!((prop.loschmidt(t) - want).norm() < 1e-8);
        }
    }
}

#[test]
fn ground_energy_is_filled_lower_band() {
    for p in [ModelParams::new(4, 0.9), ModelParams::new(8, 0.8)] {
        let e: f64 = p.momenta().map(|q| -dispersion(&p, q).unwrap()).sum();
        assert!((propagator(&p).unwrap().ground_energy() - e).abs() < 1e-10);
    }
}

#[test]
fn evolution_conserves_norm_and_energy() {
    let p = ModelParams::new(8, 0.8).with_coupling(0.8);
    let prop = propagator(&p).unwrap();
    let h = position_hamiltonian(&p, -p.m, true).unwrap().map(Complex64::from);
    let energy = |psi: &[Complex64]| {
        let v = nalgebra::DVector::from_column_slice(psi);
        (v.adjoint() * &h * &v)[(0, 0)].re
    };
    let e0 = energy(&prop.ground_state());
    assert!((e0 - prop.quench_energy()).abs() < 1e-10);
    for t in [0.0, 0.3, 1.7, 5.0] {
        let psi = exact_evolve(&p, t).unwrap();
        let norm: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-10);
        assert!((energy(&psi) - e0).abs() < 1e-8);
    }
}

#[test]
fn dense_limit_is_enforced() {
    let p = ModelParams::new(16, 0.5);
    assert!(matches!(ExactPropagator::new(&p), Err(OracleError::DenseLimit { n: 16, limit: 12 })));
    assert!(ExactPropagator::with_limit(&ModelParams::new(8, 0.5), 4).is_err());
}

#[test]
fn correlation_matrix_matches_exact_diagonalization() {
    for p in [ModelParams::new(4, 0.9), ModelParams::new(8, 0.8)] {
        for t in [0.0, 0.4, 1.3, 3.1] {
            let psi = exact_evolve(&p, t).unwrap();
            let ed = fermion_correlation(&psi, p.n);
            let g = correlation_matrix(&p, t).unwrap();
            assert!((ed - &g.entries).camax() < 1e-10, "N={} t={t}", p.n);
        }
    }
}

#[test]
fn correlation_matrix_reference_values() {
    let g = correlation_matrix(&ModelParams::new(4, 0.9), 0.0).unwrap();
    assert!((g.entries[(0, 0)] - c(0.082759, 0.0)).norm() < 1e-6);
    assert!((g.entries[(0, 1)] - c(-0.185824, 0.0)).norm() < 1e-6);
    let g8 = correlation_matrix(&ModelParams::new(8, 0.8), 0.0).unwrap();
    assert!((g8.entries[(0, 0)].re - 0.109596).abs() < 1e-6);
}

#[test]
fn heavy_mass_gives_staggered_vacuum() {
    let g = correlation_matrix(&ModelParams::new(8, 1e6), 0.0).unwrap();
    for n in 0..8 {
        let want = if n % 2 == 0 { 0.0 } else { 1.0 };
        assert!((g.entries[(n, n)].re - want).abs() < 1e-9);
    }
}

#[test]
fn entanglement_spectrum_examples() {
    let pure = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![c(1.0, 0.0), c(0.0, 0.0)]));
    let s = free_entanglement_spectrum(&pure, DEFAULT_CLIP).unwrap();
    assert_eq!(s.schmidt.probabilities, vec![1.0, 0.0, 0.0, 0.0]);
    assert!(s.levels.is_empty());
    assert!(s.schmidt.renyi2().abs() < 1e-15);

    let half = DMatrix::from_diagonal_element(2, 2, c(0.5, 0.0));
    let s = free_entanglement_spectrum(&half, DEFAULT_CLIP).unwrap();
    assert!(s.schmidt.probabilities.iter().all(|&p| (p - 0.25).abs() < 1e-15));
    assert!((s.schmidt.renyi2() - 2.0).abs() < 1e-14);
    assert_eq!(s.levels, vec![0.0, 0.0]);

    let g = correlation_matrix(&ModelParams::new(4, 0.9), 0.0).unwrap();
    let s = free_entanglement_spectrum(&g.restrict(&[0, 1]), DEFAULT_CLIP).unwrap();
    for (a, b) in s.occupations.iter().zip([0.95675, 0.04325]) {
        assert!((a - b).abs() < 1e-5);
    }
    for (a, b) in s.schmidt.probabilities.iter().zip([0.91537, 0.04138, 0.04138, 0.00187]) {
        assert!((a - b).abs() < 1e-5);
    }
    assert!((s.schmidt.renyi2() - 0.24925).abs() < 1e-5);
}

#[test]
fn entanglement_spectrum_rejects_unphysical_input() {
    let bad = DMatrix::from_diagonal_element(2, 2, c(1.5, 0.0));
    assert!(free_entanglement_spectrum(&bad, DEFAULT_CLIP).is_err());
    let nonherm = DMatrix::from_row_slice(2, 2, &[c(0.5, 0.0), c(0.3, 0.0), c(0.0, 0.0), c(0.5, 0.0)]);
    assert!(free_entanglement_spectrum(&nonherm, DEFAULT_CLIP).is_err());
}

#[test]
fn gaussian_schmidt_spectrum_matches_partial_trace() {
    for (p, sites) in [
        (ModelParams::new(4, 0.9), vec![0usize, 1]),
        (ModelParams::new(8, 0.8), vec![0, 1, 2, 3]),
        (ModelParams::new(8, 0.8), vec![2, 3]),
    ] {
        for t in [0.0, 0.7, 1.9] {
            let psi = exact_evolve(&p, t).unwrap();
            let brute = schmidt_spectrum(&psi, &sites);
            let g = correlation_matrix(&p, t).unwrap();
            let gauss = free_entanglement_spectrum(&g.restrict(&sites), DEFAULT_CLIP).unwrap();
            for (a, b) in brute.probabilities.iter().zip(&gauss.schmidt.probabilities) {
                assert!((a - b).abs() < 1e-8, "N={} t={t}", p.n);
            }
        }
    }
}

#[test]
fn complementary_subsystems_share_entropy() {
    let p = ModelParams::new(8, 0.8).with_coupling(0.5);
    let psi = exact_evolve(&p, 1.1).unwrap();
    let a = schmidt_spectrum(&psi, &[0, 1, 2, 3]).renyi2();
    let b = schmidt_spectrum(&psi, &[4, 5, 6, 7]).renyi2();
    assert!((a - b).abs() < 1e-10);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn correlation_matrix_invariants(t in 0.0f64..20.0, m in 0.05f64..3.0, big in prop::bool::ANY) {
        let p = ModelParams::new(if big { 8 } else { 4 }, m);
        let g = correlation_matrix(&p, t).unwrap();
        prop_assert!(g.hermiticity_error() < 1e-10);
        prop_assert!((g.trace() - p.n as f64 / 2.0).abs() < 1e-10);
        for e in g.eigenvalues() {
            prop_assert!(e > -1e-10 && e < 1.0 + 1e-10);
        }
    }

    #[test]
    fn schmidt_probabilities_are_normalized(t in 0.0f64..10.0, m in 0.1f64..2.0) {
        let p = ModelParams::new(8, m);
        let g = correlation_matrix(&p, t).unwrap();
        let s = free_entanglement_spectrum(&g.restrict(&[0, 1, 2]), DEFAULT_CLIP).unwrap();
        let total: f64 = s.schmidt.probabilities.iter().sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
        prop_assert!(s.schmidt.probabilities.windows(2).all(|w| w[0] >= w[1]));
    }
}
