//! Estimating entanglement from measurement counts, as hardware would.
//! Each axis is rotated onto Z, sampled with a seeded generator, and the
//! three spin components are combined with a propagated error bar.
//!
//! cargo run --example measurement_protocol

use std::f64::consts::FRAC_PI_4;

use varent::circuit::{build_qgan_circuit, uniform_thetas};
use varent::entanglement::entanglement_of_qubit;
use varent::measurement::{basis_rotation, estimate_entanglement, MeasurementAxis};

fn main() -> varent::Result<()> {
    for axis in MeasurementAxis::ALL {
        println!("{axis:?} basis rotation: {:?}", basis_rotation(axis));
    }

    let circuit = build_qgan_circuit(3, 1, &uniform_thetas(3, &[FRAC_PI_4]))?;
    let exact = entanglement_of_qubit(&circuit.run()?, 1)?.value();
    println!("exact E = {exact:.6}");
    for shots in [100, 1_000, 10_000, 100_000, 1_000_000] {
        let est = estimate_entanglement(&circuit, 1, shots, 7)?;
        println!(
            "{shots:>8} shots/axis: E = {:.6} +- {:.6}  (<sx>, <sy>, <sz>) = ({:+.4}, {:+.4}, {:+.4})",
            est.value, est.std_error, est.sx.mean, est.sy.mean, est.sz.mean
        );
    }
    Ok(())
}
