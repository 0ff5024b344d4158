//! Experiment drivers behind the command-line tool: sweeps, verification
//! suites and single-circuit estimates.

mod sweep;
mod verify;

pub use sweep::*;
pub use verify::*;

use serde::Serialize;

use crate::circuit::{CircuitSpec, PhaseSpec, Topology};
use crate::entanglement::{
    entanglement_grid_oracle, entanglement_of_qubit, entanglement_schmidt_oracle, mean_spin,
};
use crate::error::{Error, Result};
use crate::graphs::Graph;
use crate::measurement::{estimate_entanglement_of_state, EntanglementEstimate};

/// Exact and sampled entanglement of one qubit of one circuit.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EstimateReport {
    pub n_qubits: usize,
    pub depth: usize,
    pub qubit: usize,
    pub shots_per_axis: u64,
    pub seed: u64,
    /// Schmidt-oracle value.
    pub e_exact: f64,
    /// Mean-spin value from the exact Bloch vector.
    pub e_spin_exact: f64,
    /// Bloch-sphere grid minimum, when a resolution was requested.
    pub e_grid: Option<f64>,
    pub grid_resolution: Option<usize>,
    pub exact_spin: [f64; 3],
    pub e_sampled: f64,
    pub std_error: f64,
    pub sampled: EntanglementEstimate,
}

impl EstimateReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

pub fn run_estimate(
    spec: &CircuitSpec,
    qubit: usize,
    shots: u64,
    seed: u64,
    grid_resolution: Option<usize>,
) -> Result<EstimateReport> {
    let circuit = spec.build()?;
    if qubit >= circuit.n_qubits() {
        return Err(Error::Index(format!(
            "qubit {qubit} out of range for {} qubits",
            circuit.n_qubits()
        )));
    }
    let state = circuit.run()?;
    let spin = mean_spin(&state, qubit)?;
    let sampled = estimate_entanglement_of_state(&state, qubit, shots, seed)?;
    let e_grid = grid_resolution
        .map(|res| entanglement_grid_oracle(&state, qubit, res).map(|e| e.value()))
        .transpose()?;
    Ok(EstimateReport {
        n_qubits: circuit.n_qubits(),
        depth: circuit.depth(),
        qubit,
        shots_per_axis: shots,
        seed,
        e_exact: entanglement_schmidt_oracle(&state, qubit)?.value(),
        e_spin_exact: entanglement_of_qubit(&state, qubit)?.value(),
        e_grid,
        grid_resolution,
        exact_spin: [spin.sx, spin.sy, spin.sz],
        e_sampled: sampled.value,
        std_error: sampled.std_error,
        sampled,
    })
}

/// JSON circuit description of the one-layer graph-state circuit.
pub fn graph_circuit_spec(graph: &Graph, theta: f64, phi: f64) -> CircuitSpec {
    CircuitSpec {
        n_qubits: graph.n_vertices(),
        depth: 1,
        topology: Topology::Explicit {
            edges: graph.edges().to_vec(),
        },
        thetas: vec![vec![theta]; graph.n_vertices()],
        phis: PhaseSpec::Uniform(phi),
    }
}
