#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use schwinger_circuit::{apply_reference, Circuit};

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `min_φ max|a − e^{iφ} b|` with φ fixed by the largest entry of `b`.
pub fn phase_distance(a: &DMatrix<Complex64>, b: &DMatrix<Complex64>) -> f64 {
    let (mut k, mut best) = (0, 0.0);
    for (i, z) in b.iter().enumerate() {
        if z.norm() > best {
            best = z.norm();
            k = i;
        }
    }
    let ph = a.as_slice()[k] / b.as_slice()[k];
    (a - b * ph).camax()
}

/// Little-endian index of row `r` in the ordering
/// (both occupied, first only, second only, empty).
pub const OCC_ORDER: [usize; 4] = [0, 2, 1, 3];

pub fn reorder4(m: [[Complex64; 4]; 4]) -> DMatrix<Complex64> {
    let mut out = DMatrix::zeros(4, 4);
    for r in 0..4 {
        for s in 0..4 {
            out[(OCC_ORDER[r], OCC_ORDER[s])] = m[r][s];
        }
    }
    out
}

pub fn run(c: &Circuit, input: &[Complex64]) -> Vec<Complex64> {
    let mut v = input.to_vec();
    for g in &c.gates {
        apply_reference(g, &mut v);
    }
    v
}

pub fn basis(width: usize, index: usize) -> Vec<Complex64> {
    let mut v = vec![c(0.0, 0.0); 1 << width];
    v[index] = c(1.0, 0.0);
    v
}

/// `⟨σ⟩` of `qubit` read as `P(0) − P(1)`.
pub fn z_expectation(state: &[Complex64], qubit: usize) -> f64 {
    state.iter().enumerate().map(|(i, a)| if i >> qubit & 1 == 0 { a.norm_sqr() } else { -a.norm_sqr() }).sum()
}

pub fn is_unitary(u: &DMatrix<Complex64>, tol: f64) -> bool {
    let n = u.nrows();
    (u.adjoint() * u - DMatrix::<Complex64>::identity(n, n)).camax() < tol
}
