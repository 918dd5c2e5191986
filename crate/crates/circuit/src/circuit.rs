//! The circuit record: an ordered gate list plus bookkeeping.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::gate::{Gate, GateKind};
use crate::{CircuitError, Result};

/// Ordered gate sequence over `width` qubits.
///
/// `phase` is the classical phase dropped by the builders: the operator the
/// circuit stands for equals `e^{i·phase}` times the gate product. For Ramsey
/// circuits it is the phase of the ancilla-controlled branch relative to the
/// idle branch and must be reapplied to the measured overlap.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Circuit {
    pub width: usize,
    pub gates: Vec<Gate>,
    #[serde(default)]
    pub ancilla: Option<usize>,
    #[serde(default)]
    pub phase: f64,
}

/// One- and two-qubit gate totals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct GateCounts {
    pub one_qubit: usize,
    pub two_qubit: usize,
}

impl std::ops::Add for GateCounts {
    type Output = GateCounts;
    fn add(self, o: GateCounts) -> GateCounts {
        GateCounts { one_qubit: self.one_qubit + o.one_qubit, two_qubit: self.two_qubit + o.two_qubit }
    }
}

impl std::fmt::Display for GateCounts {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} / {}", self.one_qubit, self.two_qubit)
    }
}

/// Gates counted as emitted, before any lowering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RawCounts {
    pub one_qubit: usize,
    pub two_qubit: usize,
    pub three_qubit: usize,
}

impl Circuit {
    pub fn new(width: usize) -> Self {
        Self { width, gates: Vec::new(), ancilla: None, phase: 0.0 }
    }

    pub fn with_ancilla(width: usize, ancilla: usize) -> Self {
        Self { ancilla: Some(ancilla), ..Self::new(width) }
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    fn check(&self, gate: &Gate) -> Result<()> {
        if gate.qubits.len() != gate.kind.arity() {
            return Err(CircuitError::Arity { gate: gate.kind.name(), got: gate.qubits.len() });
        }
        for (i, &q) in gate.qubits.iter().enumerate() {
            if q >= self.width {
                return Err(CircuitError::QubitOutOfRange { qubit: q, width: self.width });
            }
            if gate.qubits[..i].contains(&q) {
                return Err(CircuitError::RepeatedQubit { qubit: q });
            }
        }
        if !gate.angle.is_finite() {
            return Err(CircuitError::NonFiniteAngle { gate: gate.kind.name() });
        }
        Ok(())
    }

    pub fn try_push(&mut self, gate: Gate) -> Result<&mut Self> {
        self.check(&gate)?;
        self.gates.push(gate);
        Ok(self)
    }

    /// Appends a gate; panics on an invalid gate, which is a builder bug.
    pub fn push(&mut self, kind: GateKind, qubits: &[usize], angle: f64) -> &mut Self {
        let gate = Gate::new(kind, qubits, angle);
        if let Err(e) = self.check(&gate) {
            panic!("invalid gate: {e}");
        }
        self.gates.push(gate);
        self
    }

    pub fn g1(&mut self, kind: GateKind, q: usize) -> &mut Self {
        self.push(kind, &[q], 0.0)
    }

    pub fn r1(&mut self, kind: GateKind, q: usize, angle: f64) -> &mut Self {
        self.push(kind, &[q], angle)
    }

    pub fn g2(&mut self, kind: GateKind, a: usize, b: usize) -> &mut Self {
        self.push(kind, &[a, b], 0.0)
    }

    pub fn r2(&mut self, kind: GateKind, a: usize, b: usize, angle: f64) -> &mut Self {
        self.push(kind, &[a, b], angle)
    }

    /// Appends every gate of `other` (same or narrower width) and adds its phase.
    pub fn append(&mut self, other: &Circuit) -> &mut Self {
        assert!(other.width <= self.width, "appending width {} onto {}", other.width, self.width);
        self.gates.extend(other.gates.iter().cloned());
        self.phase += other.phase;
        self
    }

    /// Inverse circuit: reversed order, each gate inverted, phase negated.
    pub fn inverse(&self) -> Circuit {
        Circuit {
            width: self.width,
            gates: self.gates.iter().rev().map(Gate::inverse).collect(),
            ancilla: self.ancilla,
            phase: -self.phase,
        }
    }

    /// Same gates on a wider register.
    pub fn widened(&self, width: usize) -> Circuit {
        assert!(width >= self.width);
        Circuit { width, ..self.clone() }
    }

    /// Re-checks the ancilla and every gate against the circuit width.
    pub fn validate(&self) -> Result<()> {
        if let Some(a) = self.ancilla.filter(|&a| a >= self.width) {
            return Err(CircuitError::QubitOutOfRange { qubit: a, width: self.width });
        }
        self.gates.iter().try_for_each(|g| self.check(g))
    }

    /// Counts after lowering every controlled or two-qubit rotation to CNOTs
    /// plus single-qubit gates.
    pub fn gate_counts(&self) -> GateCounts {
        self.gates.iter().fold(GateCounts::default(), |acc, g| {
            let (a, b) = g.kind.decomposed_cost();
            acc + GateCounts { one_qubit: a, two_qubit: b }
        })
    }

    /// Counts by arity as emitted.
    pub fn raw_counts(&self) -> RawCounts {
        let mut r = RawCounts::default();
        for g in &self.gates {
            match g.kind.arity() {
                1 => r.one_qubit += 1,
                2 => r.two_qubit += 1,
                _ => r.three_qubit += 1,
            }
        }
        r
    }

    /// Dense `2^width × 2^width` matrix of the gate product (phase tag not
    /// included). Reference implementation for small widths.
    pub fn unitary(&self) -> Result<DMatrix<Complex64>> {
        if self.width > 12 {
            return Err(CircuitError::TooWide { width: self.width, max: 12 });
        }
        let dim = 1usize << self.width;
        let mut u = DMatrix::<Complex64>::identity(dim, dim);
        for g in &self.gates {
            for col in 0..dim {
                let mut column: Vec<Complex64> = u.column(col).iter().copied().collect();
                apply_reference(g, &mut column);
                u.set_column(col, &nalgebra::DVector::from_vec(column));
            }
        }
        Ok(u)
    }
}

/// Straightforward gate application on an amplitude slice (qubit `k` ↔ bit `k`).
pub fn apply_reference(g: &Gate, amps: &mut [Complex64]) {
    let (controls, targets) = g.split();
    let ctrl_mask: usize = controls.iter().map(|&c| 1usize << c).sum();
    match g.target_matrix() {
        Some(m) => {
            let t = 1usize << targets[0];
            for i in 0..amps.len() {
                if i & t != 0 || i & ctrl_mask != ctrl_mask {
                    continue;
                }
                let (a0, a1) = (amps[i], amps[i | t]);
                amps[i] = m[0][0] * a0 + m[0][1] * a1;
                amps[i | t] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
        None => {
            let (a, b) = (targets[0], targets[1]);
            for (i, amp) in amps.iter_mut().enumerate() {
                if i & ctrl_mask != ctrl_mask {
                    continue;
                }
                let odd = ((i >> a) ^ (i >> b)) & 1 == 1;
                *amp *= g.zz_phase(odd);
            }
        }
    }
}
