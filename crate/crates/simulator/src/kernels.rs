//! In-place gate kernels over amplitude slices (qubit `k` ↔ bit `k`).
//!
//! Single-target gates walk the index space in blocks of `2·stride`, touching
//! only pairs whose control bits are set; diagonal gates multiply in one pass.

use num_complex::Complex64;
use schwinger_circuit::{Gate, GateKind, Mat2};

fn is_diagonal(m: &Mat2) -> bool {
    m[0][1] == Complex64::new(0.0, 0.0) && m[1][0] == Complex64::new(0.0, 0.0)
}

/// Applies `gate` to `amps` in place.
pub fn apply_gate(gate: &Gate, amps: &mut [Complex64]) {
    let (controls, targets) = gate.split();
    let ctrl: usize = controls.iter().map(|&c| 1usize << c).sum();
    match gate.target_matrix() {
        Some(m) if is_diagonal(&m) => diagonal(amps, 1 << targets[0], ctrl, m[0][0], m[1][1]),
        Some(m) => pair_update(amps, 1 << targets[0], ctrl, &m),
        None => {
            debug_assert!(matches!(gate.kind, GateKind::Rzz | GateKind::Crzz));
            let (a, b) = (targets[0], targets[1]);
            let (even, odd) = (gate.zz_phase(false), gate.zz_phase(true));
            for (i, amp) in amps.iter_mut().enumerate() {
                if i & ctrl == ctrl {
                    *amp *= if ((i >> a) ^ (i >> b)) & 1 == 1 { odd } else { even };
                }
            }
        }
    }
}

fn diagonal(amps: &mut [Complex64], t: usize, ctrl: usize, d0: Complex64, d1: Complex64) {
    let one = Complex64::new(1.0, 0.0);
    for (i, amp) in amps.iter_mut().enumerate() {
        if i & ctrl != ctrl {
            continue;
        }
        let d = if i & t == 0 { d0 } else { d1 };
        if d != one {
            *amp *= d;
        }
    }
}

fn pair_update(amps: &mut [Complex64], t: usize, ctrl: usize, m: &Mat2) {
    let len = amps.len();
    let mut base = 0;
    while base < len {
        for i in base..base + t {
            if i & ctrl != ctrl {
                continue;
            }
            let (a0, a1) = (amps[i], amps[i + t]);
            amps[i] = m[0][0] * a0 + m[0][1] * a1;
            amps[i + t] = m[1][0] * a0 + m[1][1] * a1;
        }
        base += 2 * t;
    }
}
