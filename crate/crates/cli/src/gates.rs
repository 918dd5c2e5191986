//! Gate counts of every circuit component next to the reference table
//! values. Rows marked `asserted` are expected to match exactly; the others
//! are reported as they come out of the builders.

use serde::Serialize;

use schwinger_circuit::{
    bogoliubov_block, build_basis_change, build_bogoliubov_register, build_fourier, build_free_evolution,
    build_interaction_evolution, build_prepare, build_quench, build_ramsey_loschmidt, build_ramsey_necf, quench_block,
    Circuit, FourierDirection, GateCounts, NecfChannel, NecfComponent, Pauli, ReadoutBasis,
};
use schwinger_model::ModelParams;

use crate::Result;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GateRow {
    pub component: String,
    /// Lattice size, or `None` for a single-mode block.
    pub n: Option<usize>,
    pub counts: GateCounts,
    pub expected: GateCounts,
    pub asserted: bool,
}

impl GateRow {
    pub fn matches(&self) -> bool {
        self.counts == self.expected
    }
}

fn gc(one_qubit: usize, two_qubit: usize) -> GateCounts {
    GateCounts { one_qubit, two_qubit }
}

fn row(component: &str, n: Option<usize>, counts: GateCounts, expected: GateCounts, asserted: bool) -> GateRow {
    GateRow { component: component.into(), n, counts, expected, asserted }
}

/// Component rows for `N = 4` (`|m| = 0.9`) and `N = 8` (`|m| = 0.8`), with
/// interacting rows at `e = |m|` and one Trotter step. Counts do not depend
/// on angles.
pub fn gate_report() -> Result<Vec<GateRow>> {
    let mut rows = Vec::new();
    let block = |f: &dyn Fn(&mut Circuit)| {
        let mut c = Circuit::new(2);
        f(&mut c);
        c.gate_counts()
    };
    rows.push(row("bogoliubov", None, block(&|c| bogoliubov_block(c, 0.3, 0.4, 0, 1)), gc(7, 4), true));
    rows.push(row("quench", None, block(&|c| quench_block(c, 0.3, 0.4, 0, 1)), gc(11, 3), true));

    let reference = [
        // (N, m, quench, free, free ctrl, inter, inter ctrl, bogoliubov, fourier, Γ, Γ interacting, tomography)
        (4usize, 0.9, gc(22, 6), gc(4, 0), gc(4, 8), gc(10, 12), gc(128, 92), gc(14, 8), gc(44, 12), gc(36, 14), Some(gc(206, 126)), gc(84, 26)),
        (8, 0.8, gc(44, 12), gc(8, 0), gc(8, 16), gc(36, 56), gc(576, 408), gc(28, 16), gc(236, 68), gc(70, 28), None, gc(284, 96)),
    ];
    for (n, m, quench, free, free_c, inter, inter_c, bog, fourier, gamma, gamma_int, tomo) in reference {
        let p = ModelParams::new(n, m);
        let pi = p.with_coupling(m.abs());
        let nn = Some(n);
        rows.push(row("quench", nn, build_quench(&p)?.gate_counts(), quench, false));
        rows.push(row("free-evolution", nn, build_free_evolution(&p, 0.5, false)?.gate_counts(), free, false));
        rows.push(row("free-evolution-controlled", nn, build_free_evolution(&p, 0.5, true)?.gate_counts(), free_c, false));
        rows.push(row("interacting-evolution", nn, build_interaction_evolution(&pi, 0.5, false)?.gate_counts(), inter, false));
        rows.push(row(
            "interacting-evolution-controlled",
            nn,
            build_interaction_evolution(&pi, 0.5, true)?.gate_counts(),
            inter_c,
            false,
        ));
        rows.push(row("bogoliubov", nn, build_bogoliubov_register(&p, schwinger_model::MassSign::Plus)?.gate_counts(), bog, false));
        rows.push(row("fourier", nn, build_fourier(&p, FourierDirection::PositionToMomentum)?.gate_counts(), fourier, true));
        rows.push(row(
            "loschmidt-pipeline",
            nn,
            build_ramsey_loschmidt(&p, 0.5, ReadoutBasis::X)?.gate_counts(),
            gamma,
            n == 4,
        ));
        if let Some(expected) = gamma_int {
            rows.push(row(
                "loschmidt-pipeline-interacting",
                nn,
                build_ramsey_loschmidt(&pi, 0.5, ReadoutBasis::X)?.gate_counts(),
                expected,
                false,
            ));
        }
        let comp = NecfComponent { channel: NecfChannel::A, later: Pauli::X, first: Pauli::X };
        rows.push(row("necf-pipeline", nn, build_ramsey_necf(&p, 0, 0.5, comp, ReadoutBasis::X)?.gate_counts(), gc(19, 5), false));
        // State preparation and basis change; the random-unitary layer and the
        // free evolution are left out.
        let mut prep = build_prepare(n, n);
        prep.append(&build_quench(&p)?).append(&build_basis_change(&p)?);
        rows.push(row("tomography-pipeline", nn, prep.gate_counts(), tomo, false));
    }
    Ok(rows)
}

/// CSV with columns `component,n,one_qubit,two_qubit,expected_one,expected_two,asserted,match`.
pub fn gate_report_csv(rows: &[GateRow]) -> Result<Vec<u8>> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["component", "n", "one_qubit", "two_qubit", "expected_one", "expected_two", "asserted", "match"])?;
    for r in rows {
        w.write_record([
            r.component.clone(),
            r.n.map_or("mode".into(), |n| n.to_string()),
            r.counts.one_qubit.to_string(),
            r.counts.two_qubit.to_string(),
            r.expected.one_qubit.to_string(),
            r.expected.two_qubit.to_string(),
            r.asserted.to_string(),
            r.matches().to_string(),
        ])?;
    }
    w.into_inner().map_err(|e| crate::CliError::Io(e.into_error()))
}
