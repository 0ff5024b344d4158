//! The 3-qubit chain ansatz with controlled-Z entanglers, against its closed forms.
//!
//! cargo run --example qgan_circuits

use std::f64::consts::FRAC_PI_2;

use varent::circuit::build_qgan_circuit;
use varent::entanglement::{closed_form, entanglement_of_qubit};

fn main() -> varent::Result<()> {
    println!("one layer, angles (t0, t1, t2)");
    for angles in [[0.3, 1.2, 2.0], [FRAC_PI_2; 3], [1.0, 0.0, 1.0]] {
        let thetas: Vec<Vec<f64>> = angles.iter().map(|t| vec![*t]).collect();
        let state = build_qgan_circuit(3, 1, &thetas)?.run()?;
        let e = entanglement_of_qubit(&state, 1)?.value();
        let closed = closed_form::qgan_k1(angles[0], angles[1], angles[2]).value();
        println!("  {angles:?}: simulated {e:.12}, closed form {closed:.12}");
    }

    println!("two layers, first layer pi/2, second (a, b, c)");
    for second in [[0.5, 1.0, 1.5], [2.0, 2.0, 2.0], [0.1, 3.0, 4.4]] {
        let thetas: Vec<Vec<f64>> = second.iter().map(|t| vec![FRAC_PI_2, *t]).collect();
        let state = build_qgan_circuit(3, 2, &thetas)?.run()?;
        let e = entanglement_of_qubit(&state, 1)?.value();
        let closed = closed_form::qgan_k2(second[0], second[1], second[2]).value();
        println!("  {second:?}: simulated {e:.12}, closed form {closed:.12}");
    }
    Ok(())
}
