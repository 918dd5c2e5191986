//! Circuit interchange: JSON (lossless, see `docs/circuit-schema.md`) and
//! OpenQASM 2.0 text.

use std::fmt::Write;

use crate::circuit::Circuit;
use crate::gate::GateKind::*;
use crate::Result;

pub fn to_json(c: &Circuit) -> Result<String> {
    Ok(serde_json::to_string_pretty(c)?)
}

pub fn from_json(s: &str) -> Result<Circuit> {
    let c: Circuit = serde_json::from_str(s)?;
    c.validate()?;
    Ok(c)
}

/// OpenQASM 2.0 using `qelib1.inc` gates; `CRZZ` is expanded to `cx·crz·cx`.
/// The classical phase tag is recorded as a comment. Measurements of every
/// qubit are appended.
pub fn to_qasm(c: &Circuit) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "OPENQASM 2.0;");
    let _ = writeln!(s, "include \"qelib1.inc\";");
    let _ = writeln!(s, "// phase {:.17e}", c.phase);
    if let Some(a) = c.ancilla {
        let _ = writeln!(s, "// ancilla {a}");
    }
    let _ = writeln!(s, "qreg q[{}];", c.width);
    let _ = writeln!(s, "creg m[{}];", c.width);
    for g in &c.gates {
        let q = &g.qubits;
        let th = g.angle;
        let line = match g.kind {
            X => format!("x q[{}];", q[0]),
            Y => format!("y q[{}];", q[0]),
            Z => format!("z q[{}];", q[0]),
            H => format!("h q[{}];", q[0]),
            S => format!("s q[{}];", q[0]),
            Sdg => format!("sdg q[{}];", q[0]),
            Rx => format!("rx({th:.17e}) q[{}];", q[0]),
            Ry => format!("ry({th:.17e}) q[{}];", q[0]),
            Rz => format!("rz({th:.17e}) q[{}];", q[0]),
            Phase => format!("u1({th:.17e}) q[{}];", q[0]),
            Cnot => format!("cx q[{}],q[{}];", q[0], q[1]),
            Cy => format!("cy q[{}],q[{}];", q[0], q[1]),
            Cz => format!("cz q[{}],q[{}];", q[0], q[1]),
            Ch => format!("ch q[{}],q[{}];", q[0], q[1]),
            Cry => format!("cry({th:.17e}) q[{}],q[{}];", q[0], q[1]),
            Crz => format!("crz({th:.17e}) q[{}],q[{}];", q[0], q[1]),
            Rzz => format!("rzz({th:.17e}) q[{}],q[{}];", q[0], q[1]),
            Crzz => format!(
                "cx q[{a}],q[{b}];\ncrz({th:.17e}) q[{c}],q[{b}];\ncx q[{a}],q[{b}];",
                a = q[1],
                b = q[2],
                c = q[0]
            ),
        };
        let _ = writeln!(s, "{line}");
    }
    let _ = writeln!(s, "measure q -> m;");
    s
}
