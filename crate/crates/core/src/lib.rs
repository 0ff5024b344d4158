//! Statevector simulation of layered RY / controlled-phase variational circuits
//! and the geometric measure of entanglement of a single qubit with the rest of
//! the register.
//!
//! The entanglement of qubit `l` in a pure state follows from its mean spin,
//! `E = (1 - |<sigma>|) / 2`, where `<sigma>` is the qubit's Bloch vector. The
//! crate computes it that way, checks it against the Schmidt value
//! `1 - lambda_max` and a brute-force Fubini-Study minimization, estimates it
//! from simulated measurement shots, and reproduces parameter sweeps with their
//! closed-form curves.
//!
//! | module | contents |
//! |---|---|
//! | [`state`] | [`StateVector`], RY/RX/CP kernels, single-qubit reduced density |
//! | [`circuit`] | [`Circuit`], [`Layer`], topologies, JSON circuit files |
//! | [`entanglement`] | mean spin, oracles, closed forms |
//! | [`measurement`] | basis rotations, seeded binomial sampling, estimators |
//! | [`graphs`] | graph states and the vertex-degree formula |
//! | [`experiments`] | sweeps, verification suites, single-point estimates |
//!
//! ```
//! use varent::circuit::{build_qgan_circuit, uniform_thetas};
//! use varent::entanglement::{entanglement_of_qubit, entanglement_schmidt_oracle};
//!
//! let circuit = build_qgan_circuit(3, 1, &uniform_thetas(3, &[std::f64::consts::FRAC_PI_2]))?;
//! let state = circuit.run()?;
//! let e = entanglement_of_qubit(&state, 1)?.value();
//! assert!((e - 0.5).abs() < 1e-12);
//! assert!((e - entanglement_schmidt_oracle(&state, 1)?.value()).abs() < 1e-12);
//! # Ok::<(), varent::Error>(())
//! ```

pub mod circuit;
pub mod entanglement;
pub mod error;
pub mod experiments;
pub mod graphs;
pub mod measurement;
pub mod state;

pub use circuit::{Circuit, CircuitSpec, Layer, Topology};
pub use entanglement::{EntanglementValue, SpinMean};
pub use error::{Error, Result};
pub use graphs::Graph;
pub use state::StateVector;
