//! Gate set and the 2×2 / diagonal matrices behind each gate.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

type C = Complex64;

/// 2×2 complex matrix in row-major order.
pub type Mat2 = [[C; 2]; 2];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GateKind {
    X,
    Y,
    Z,
    H,
    S,
    Sdg,
    Rx,
    Ry,
    Rz,
    /// `diag(1, e^{iθ})`.
    Phase,
    /// Qubits `[control, target]`.
    Cnot,
    Cy,
    Cz,
    Ch,
    Cry,
    Crz,
    /// `exp(−iθ Z⊗Z / 2)` on `[a, b]`.
    Rzz,
    /// Controlled `Rzz`: qubits `[control, a, b]`.
    Crzz,
}

impl GateKind {
    pub fn arity(self) -> usize {
        use GateKind::*;
        match self {
            X | Y | Z | H | S | Sdg | Rx | Ry | Rz | Phase => 1,
            Cnot | Cy | Cz | Ch | Cry | Crz | Rzz => 2,
            Crzz => 3,
        }
    }

    pub fn has_angle(self) -> bool {
        use GateKind::*;
        matches!(self, Rx | Ry | Rz | Phase | Cry | Crz | Rzz | Crzz)
    }

    /// Whether the first qubit is a control and the rest see [`Gate::target_matrix`].
    pub fn is_controlled(self) -> bool {
        use GateKind::*;
        matches!(self, Cnot | Cy | Cz | Ch | Cry | Crz | Crzz)
    }

    /// One-/two-qubit cost after lowering to CNOT plus single-qubit rotations.
    pub fn decomposed_cost(self) -> (usize, usize) {
        use GateKind::*;
        match self {
            X | Y | Z | H | S | Sdg | Rx | Ry | Rz | Phase => (1, 0),
            Cnot => (0, 1),
            Cy | Cz | Ch => (2, 1),
            Cry | Crz => (2, 2),
            Rzz => (1, 2),
            Crzz => (2, 4),
        }
    }

    pub fn name(self) -> &'static str {
        use GateKind::*;
        match self {
            X => "X",
            Y => "Y",
            Z => "Z",
            H => "H",
            S => "S",
            Sdg => "SDG",
            Rx => "RX",
            Ry => "RY",
            Rz => "RZ",
            Phase => "PHASE",
            Cnot => "CNOT",
            Cy => "CY",
            Cz => "CZ",
            Ch => "CH",
            Cry => "CRY",
            Crz => "CRZ",
            Rzz => "RZZ",
            Crzz => "CRZZ",
        }
    }
}

/// One gate application.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Gate {
    pub kind: GateKind,
    pub qubits: Vec<usize>,
    #[serde(default, skip_serializing_if = "is_zero")]
    pub angle: f64,
}

fn is_zero(x: &f64) -> bool {
    *x == 0.0
}

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn rx(theta: f64) -> Mat2 {
    let (s, co) = (theta / 2.0).sin_cos();
    [[c(co, 0.0), c(0.0, -s)], [c(0.0, -s), c(co, 0.0)]]
}

pub fn ry(theta: f64) -> Mat2 {
    let (s, co) = (theta / 2.0).sin_cos();
    [[c(co, 0.0), c(-s, 0.0)], [c(s, 0.0), c(co, 0.0)]]
}

pub fn rz(theta: f64) -> Mat2 {
    [[C::from_polar(1.0, -theta / 2.0), C::new(0.0, 0.0)], [C::new(0.0, 0.0), C::from_polar(1.0, theta / 2.0)]]
}

impl Gate {
    pub fn new(kind: GateKind, qubits: &[usize], angle: f64) -> Self {
        Self { kind, qubits: qubits.to_vec(), angle }
    }

    /// Matrix seen by the (last) target qubit, or by the single qubit of a
    /// one-qubit gate. `None` for the diagonal two-qubit rotations.
    pub fn target_matrix(&self) -> Option<Mat2> {
        use GateKind::*;
        let z = c(0.0, 0.0);
        let o = c(1.0, 0.0);
        let h = c(FRAC_1_SQRT_2, 0.0);
        Some(match self.kind {
            X | Cnot => [[z, o], [o, z]],
            Y | Cy => [[z, c(0.0, -1.0)], [c(0.0, 1.0), z]],
            Z | Cz => [[o, z], [z, -o]],
            H | Ch => [[h, h], [h, -h]],
            S => [[o, z], [z, c(0.0, 1.0)]],
            Sdg => [[o, z], [z, c(0.0, -1.0)]],
            Rx => rx(self.angle),
            Ry | Cry => ry(self.angle),
            Rz | Crz => rz(self.angle),
            Phase => [[o, z], [z, C::from_polar(1.0, self.angle)]],
            Rzz | Crzz => return None,
        })
    }

    /// Phase `e^{−iθ z_a z_b / 2}` of a `Rzz`-type gate for `z = ±1` eigenvalues.
    pub fn zz_phase(&self, parity_odd: bool) -> C {
        let s = if parity_odd { 1.0 } else { -1.0 };
        C::from_polar(1.0, s * self.angle / 2.0)
    }

    /// Inverse gate.
    pub fn inverse(&self) -> Gate {
        use GateKind::*;
        let kind = match self.kind {
            S => Sdg,
            Sdg => S,
            k => k,
        };
        let angle = if self.kind.has_angle() { -self.angle } else { 0.0 };
        Gate { kind, qubits: self.qubits.clone(), angle }
    }

    /// Controls and targets.
    pub fn split(&self) -> (&[usize], &[usize]) {
        if self.kind.is_controlled() {
            self.qubits.split_at(1)
        } else {
            self.qubits.split_at(0)
        }
    }
}

/// Conjugate transpose of a 2×2 matrix.
pub fn dagger(m: &Mat2) -> Mat2 {
    [[m[0][0].conj(), m[1][0].conj()], [m[0][1].conj(), m[1][1].conj()]]
}

/// Product `a · b` of 2×2 matrices.
pub fn mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let mut r = [[C::new(0.0, 0.0); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    r
}
