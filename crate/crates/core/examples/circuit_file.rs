//! Circuits as JSON: build, serialize, reload and inspect.
//!
//! cargo run --example circuit_file

use varent::circuit::{CircuitSpec, PhaseSpec};
use varent::experiments::run_estimate;
use varent::Topology;

const STAR: &str = r#"{
  "n_qubits": 4,
  "depth": 2,
  "topology": { "kind": "star", "center": 0 },
  "thetas": [[1.0, 0.5], [1.5, 0.2], [0.3, 2.0], [2.2, 1.1]],
  "phis": { "0-1": [3.14, 1.0], "0-2": [2.0, 0.5], "0-3": [1.0, 1.0] }
}"#;

fn main() -> varent::Result<()> {
    let spec = CircuitSpec::from_json(STAR, "inline")?;
    let circuit = spec.build()?;
    println!(
        "{} qubits, depth {}, {} edges per layer",
        circuit.n_qubits(),
        circuit.depth(),
        circuit.layers()[0].edges().len()
    );

    let report = run_estimate(&spec, 0, 2000, 1, Some(64))?;
    println!(
        "center qubit: exact {:.6}, grid {:.6}, sampled {:.4} +- {:.4}",
        report.e_exact,
        report.e_grid.unwrap(),
        report.e_sampled,
        report.std_error
    );

    let chain = CircuitSpec {
        n_qubits: 3,
        depth: 1,
        topology: Topology::Chain,
        thetas: vec![vec![0.7]; 3],
        phis: PhaseSpec::Uniform(std::f64::consts::PI),
    };
    println!("{}", chain.to_json());

    match CircuitSpec::from_json(
        r#"{"n_qubits": 3, "depth": 1, "thetas": [[0.1], [0.2]], "phis": 1.0}"#,
        "short.json",
    )
    .and_then(|s| s.build())
    {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
