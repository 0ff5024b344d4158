use std::f64::consts::PI;

use proptest::prelude::*;
use varent::circuit::{
    build_variational_circuit, uniform_thetas, Circuit, CircuitSpec, EntanglingEdge, Layer,
    PhaseSpec, Phases, Topology,
};
use varent::entanglement::{
    closed_form, entanglement_grid_oracle, entanglement_of_qubit, entanglement_schmidt_oracle,
    mean_spin,
};
use varent::measurement::{estimate_spin_component, sample_counts, MeasurementAxis};
use varent::StateVector;

fn angle() -> impl Strategy<Value = f64> {
    -4.0 * PI..4.0 * PI
}

/// Random circuit with per-gate angles on a random topology.
fn circuit_strategy(max_qubits: usize, max_depth: usize) -> impl Strategy<Value = Circuit> {
    (1..=max_qubits, 0..=max_depth, 0..3usize)
        .prop_flat_map(|(n, depth, topo)| {
            let topology = match topo {
                0 => Topology::Chain,
                1 => Topology::Star { center: n / 2 },
                _ => Topology::Complete,
            };
            let n_edges = topology.edges(n).unwrap().len();
            (
                Just((n, depth, topology)),
                prop::collection::vec(prop::collection::vec(angle(), depth), n),
                prop::collection::vec(prop::collection::vec(angle(), n_edges), depth),
            )
        })
        .prop_map(|((n, depth, topology), thetas, phis)| {
            build_variational_circuit(n, depth, &thetas, &Phases::PerEdge(phis), &topology).unwrap()
        })
}

fn assert_close(a: &StateVector, b: &StateVector, tol: f64) {
    for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
        assert!((x - y).norm() < tol, "{x} vs {y}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn norm_is_preserved(circuit in circuit_strategy(7, 3), extra in angle(), q in 0usize..7) {
        let mut state = circuit.run().unwrap();
        let q = q % state.n_qubits();
        state.apply_rx(q, extra).unwrap();
        prop_assert!((state.norm_sqr() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn controlled_phases_commute(circuit in circuit_strategy(6, 2), phis in prop::collection::vec(angle(), 6)) {
        let base = circuit.run().unwrap();
        let n = base.n_qubits();
        prop_assume!(n >= 2);
        let edges: Vec<(usize, usize)> = Topology::Complete.edges(n).unwrap();
        let mut forward = base.clone();
        let mut backward = base;
        for (k, &(a, b)) in edges.iter().enumerate() {
            forward.apply_cp(a, b, phis[k % phis.len()]).unwrap();
        }
        for (k, &(a, b)) in edges.iter().enumerate().rev() {
            backward.apply_cp(b, a, phis[k % phis.len()]).unwrap();
        }
        assert_close(&forward, &backward, 1e-12);
    }

    #[test]
    fn ry_is_4pi_periodic_and_2pi_antiperiodic(circuit in circuit_strategy(5, 2), theta in angle(), q in 0usize..5) {
        let base = circuit.run().unwrap();
        let q = q % base.n_qubits();
        let mut a = base.clone();
        let mut b = base;
        a.apply_ry(q, theta).unwrap();
        b.apply_ry(q, theta + 2.0 * PI).unwrap();
        for (x, y) in a.amplitudes().iter().zip(b.amplitudes()) {
            prop_assert!((x + y).norm() < 1e-12);
        }
        for k in 0..a.n_qubits() {
            let ra = a.reduced_density_1q(k).unwrap().rho;
            let rb = b.reduced_density_1q(k).unwrap().rho;
            for s in 0..2 {
                for t in 0..2 {
                    prop_assert!((ra[s][t] - rb[s][t]).norm() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn reduced_density_is_a_state(circuit in circuit_strategy(7, 3)) {
        let state = circuit.run().unwrap();
        for q in 0..state.n_qubits() {
            let rho = state.reduced_density_1q(q).unwrap();
            prop_assert!((rho.trace() - 1.0).abs() < 1e-12);
            prop_assert!((rho.rho[0][1] - rho.rho[1][0].conj()).norm() < 1e-15);
            let (lo, hi) = rho.eigenvalues();
            prop_assert!(lo >= -1e-10 && hi <= 1.0 + 1e-10);
        }
    }

    #[test]
    fn edge_order_does_not_matter(circuit in circuit_strategy(6, 3), rotate in 0usize..10) {
        let layers: Vec<Layer> = circuit
            .layers()
            .iter()
            .map(|layer| {
                let mut edges: Vec<EntanglingEdge> = layer.edges().to_vec();
                if !edges.is_empty() {
                    let k = rotate % edges.len();
                    edges.rotate_left(k);
                    edges.reverse();
                }
                Layer::new(circuit.n_qubits(), layer.thetas().to_vec(), edges).unwrap()
            })
            .collect();
        let permuted = Circuit::new(circuit.n_qubits(), layers).unwrap();
        assert_close(&circuit.run().unwrap(), &permuted.run().unwrap(), 1e-12);
    }

    #[test]
    fn depth_composes(circuit in circuit_strategy(6, 3)) {
        prop_assume!(circuit.depth() >= 1);
        let k = circuit.depth();
        let prefix = Circuit::new(circuit.n_qubits(), circuit.layers()[..k - 1].to_vec()).unwrap();
        let mut state = prefix.run().unwrap();
        circuit.layers()[k - 1].apply(&mut state).unwrap();
        assert_close(&state, &circuit.run().unwrap(), 1e-14);
    }

    #[test]
    fn zero_phase_circuits_are_products(n in 1usize..7, depth in 1usize..4, seed in prop::collection::vec(angle(), 21)) {
        let thetas: Vec<Vec<f64>> = (0..n).map(|i| (0..depth).map(|j| seed[i * 3 + j]).collect()).collect();
        let state = build_variational_circuit(n, depth, &thetas, &Phases::Uniform(0.0), &Topology::Complete)
            .unwrap()
            .run()
            .unwrap();
        for q in 0..n {
            prop_assert!(entanglement_of_qubit(&state, q).unwrap().value() < 1e-12);
        }
    }

    #[test]
    fn spin_mean_equals_schmidt(circuit in circuit_strategy(8, 3)) {
        let state = circuit.run().unwrap();
        for q in 0..state.n_qubits() {
            let spin = entanglement_of_qubit(&state, q).unwrap().value();
            let schmidt = entanglement_schmidt_oracle(&state, q).unwrap().value();
            prop_assert!((spin - schmidt).abs() < 1e-10);
            prop_assert!((0.0..=0.5 + 1e-10).contains(&spin));
            prop_assert!(mean_spin(&state, q).unwrap().norm() <= 1.0 + 1e-10);
        }
    }

    #[test]
    fn grid_oracle_bounds_schmidt_and_refines(circuit in circuit_strategy(3, 2), q in 0usize..3) {
        let state = circuit.run().unwrap();
        let q = q % state.n_qubits();
        let exact = entanglement_schmidt_oracle(&state, q).unwrap().value();
        let mut prev = f64::INFINITY;
        for res in [8, 16, 32, 64] {
            let grid = entanglement_grid_oracle(&state, q, res).unwrap().value();
            prop_assert!(grid >= exact - 1e-12);
            prop_assert!(grid <= prev + 1e-12);
            prev = grid;
        }
    }

    #[test]
    fn closed_forms_stay_in_range(a in angle(), b in angle(), c in angle(), degree in 0u32..40) {
        for e in [
            closed_form::graph(a, b, degree),
            closed_form::qgan_k1(a, b, c),
            closed_form::qgan_k2(a, b, c),
            closed_form::qgan_k2_equal(a),
            closed_form::phi_k1(b),
        ] {
            prop_assert!((0.0..=0.5).contains(&e.value()));
        }
    }

    #[test]
    fn circuit_files_round_trip(
        n in 1usize..6,
        depth in 0usize..4,
        angles in prop::collection::vec(any::<f64>().prop_filter("finite", |x| x.is_finite()), 24),
        phase_kind in 0usize..3,
    ) {
        let thetas: Vec<Vec<f64>> = (0..n).map(|i| (0..depth).map(|j| angles[i * 4 + j]).collect()).collect();
        let phis = match phase_kind {
            0 => PhaseSpec::Uniform(angles[23]),
            1 => PhaseSpec::PerLayer(angles[..depth].to_vec()),
            _ => PhaseSpec::PerEdge(
                Topology::Chain
                    .edges(n)
                    .unwrap()
                    .into_iter()
                    .map(|(a, b)| (format!("{a}-{b}"), angles[a + 10..a + 10 + depth].to_vec()))
                    .collect(),
            ),
        };
        let spec = CircuitSpec { n_qubits: n, depth, topology: Topology::Chain, thetas, phis };
        let parsed = CircuitSpec::from_json(&spec.to_json(), "roundtrip").unwrap();
        prop_assert_eq!(&parsed, &spec);
        prop_assert_eq!(parsed.build().unwrap(), spec.build().unwrap());
    }
}

#[test]
fn locality_of_one_layer_chain() {
    let mut rng = varent::measurement::seeded_rng(77);
    use rand::Rng;
    for _ in 0..50 {
        let mut thetas: Vec<f64> = (0..7).map(|_| rng.random_range(0.0..2.0 * PI)).collect();
        let phis = Phases::PerLayer(vec![rng.random_range(0.0..2.0 * PI)]);
        let run = |t: &[f64]| {
            let th: Vec<Vec<f64>> = t.iter().map(|x| vec![*x]).collect();
            build_variational_circuit(7, 1, &th, &phis, &Topology::Chain)
                .unwrap()
                .run()
                .unwrap()
        };
        let before = entanglement_of_qubit(&run(&thetas), 1).unwrap().value();
        for t in thetas.iter_mut().skip(3) {
            *t = rng.random_range(0.0..2.0 * PI);
        }
        let after = entanglement_of_qubit(&run(&thetas), 1).unwrap().value();
        assert!((before - after).abs() < 1e-12);
    }
}

#[test]
fn sampled_components_converge() {
    let state = build_variational_circuit(
        3,
        1,
        &uniform_thetas(3, &[0.9]),
        &Phases::Uniform(2.0),
        &Topology::Chain,
    )
    .unwrap()
    .run()
    .unwrap();
    let exact = mean_spin(&state, 1).unwrap();
    let exact = [exact.sx, exact.sy, exact.sz];
    let mut within = 0;
    let mut total = 0;
    let mut mean_err_by_decade = Vec::new();
    for shots in [1_000u64, 10_000, 100_000, 1_000_000] {
        let mut err_sum = 0.0;
        for seed in 0..40u64 {
            for (k, axis) in MeasurementAxis::ALL.into_iter().enumerate() {
                let est = estimate_spin_component(
                    sample_counts(&state, 1, axis, shots, seed * 7 + k as u64).unwrap(),
                );
                let err = (est.mean - exact[k]).abs();
                err_sum += err;
                total += 1;
                if err <= 5.0 * est.std_error {
                    within += 1;
                }
            }
        }
        mean_err_by_decade.push(err_sum);
    }
    assert!(within as f64 >= 0.99 * total as f64, "{within}/{total}");
    assert!(
        mean_err_by_decade.windows(2).all(|w| w[1] < w[0]),
        "{mean_err_by_decade:?}"
    );
}
