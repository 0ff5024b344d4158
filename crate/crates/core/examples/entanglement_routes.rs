//! Three routes to the same number: mean spin, Schmidt coefficients and a
//! brute-force search over product states.
//!
//! cargo run --example entanglement_routes

use varent::circuit::{build_variational_circuit, Phases, Topology};
use varent::entanglement::{
    entanglement_grid_oracle, entanglement_of_qubit, entanglement_schmidt_oracle, mean_spin,
};

fn main() -> varent::Result<()> {
    let thetas = vec![
        vec![0.4, 1.9],
        vec![2.3, 0.7],
        vec![1.1, 2.8],
        vec![0.2, 1.5],
    ];
    let phases = Phases::PerLayer(vec![2.1, 0.9]);
    let state = build_variational_circuit(4, 2, &thetas, &phases, &Topology::Chain)?.run()?;

    println!("qubit  |<sigma>|   spin-mean        schmidt          grid(128)");
    for q in 0..state.n_qubits() {
        let spin = mean_spin(&state, q)?;
        println!(
            "{q:>5}  {:.6}   {:.12}   {:.12}   {:.12}",
            spin.norm(),
            entanglement_of_qubit(&state, q)?.value(),
            entanglement_schmidt_oracle(&state, q)?.value(),
            entanglement_grid_oracle(&state, q, 128)?.value(),
        );
    }
    Ok(())
}
