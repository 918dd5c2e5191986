//! Named circuits for `export-circuit`.

use schwinger_circuit::{
    build_basis_change, build_fourier, build_free_evolution, build_quench, build_quenched_state, build_ramsey_loschmidt,
    build_ramsey_necf, build_trotter_evolution, Circuit, FourierDirection, NecfComponent, ReadoutBasis,
};
use schwinger_model::ModelParams;

use crate::{CliError, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CircuitKind {
    /// Ramsey Loschmidt-echo circuit (system + ancilla).
    Loschmidt,
    /// Per-mode correlator circuit (`--q`, `--component`).
    Necf,
    /// Quenched state in the position register.
    QuenchedState,
    Quench,
    Fourier,
    BasisChange,
    FreeEvolution,
    Trotter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum CircuitFormat {
    Json,
    Qasm,
}

/// Options for circuits that need more than the model parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CircuitSpec {
    pub kind: CircuitKind,
    pub t: f64,
    pub basis: ReadoutBasis,
    pub q: i64,
    /// Index into [`NecfComponent::all`].
    pub component: usize,
}

pub fn build_named(params: &ModelParams, spec: &CircuitSpec) -> Result<Circuit> {
    let c = match spec.kind {
        CircuitKind::Loschmidt => build_ramsey_loschmidt(params, spec.t, spec.basis)?,
        CircuitKind::Necf => {
            let comp = *NecfComponent::all()
                .get(spec.component)
                .ok_or_else(|| CliError::InvalidConfig(vec![format!("component {} outside 0..8", spec.component)]))?;
            build_ramsey_necf(params, spec.q, spec.t, comp, spec.basis)?
        }
        CircuitKind::QuenchedState => build_quenched_state(params, spec.t)?,
        CircuitKind::Quench => build_quench(params)?,
        CircuitKind::Fourier => build_fourier(params, FourierDirection::PositionToMomentum)?,
        CircuitKind::BasisChange => build_basis_change(params)?,
        CircuitKind::FreeEvolution => build_free_evolution(params, spec.t, false)?,
        CircuitKind::Trotter => build_trotter_evolution(params, spec.t, false)?,
    };
    Ok(c)
}

pub fn render(c: &Circuit, format: CircuitFormat) -> Result<String> {
    Ok(match format {
        CircuitFormat::Json => schwinger_circuit::export::to_json(c)?,
        CircuitFormat::Qasm => schwinger_circuit::export::to_qasm(c),
    })
}
