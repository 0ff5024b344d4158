//! Shot-based estimation of the mean spin and of the entanglement.
//!
//! To read `<sigma_x>` the target qubit is rotated by `RY(-pi/2)` before a
//! computational-basis measurement, for `<sigma_y>` by `RX(pi/2)`, and
//! `<sigma_z>` is read directly. Each component is then `P(0) - P(1)`.
//!
//! Only the target qubit's outcome enters the estimator, so the `shots`
//! outcomes of one axis are drawn as a single `Binomial(shots, p0)` count.
//! The generator is ChaCha8 seeded with `seed_from_u64`; the X, Y and Z axes
//! of [`estimate_entanglement`] use the master seed plus 0, 1 and 2.

use std::f64::consts::FRAC_PI_2;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Binomial, Distribution};
use serde::Serialize;

use crate::circuit::Circuit;
use crate::error::{Error, Result};
use crate::state::{GateAngle, StateVector};

/// Shots per axis when none is given.
pub const DEFAULT_SHOTS: u64 = 1024;

/// Bloch norms below this use the conservative error bound.
const SINGULAR_NORM: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MeasurementAxis {
    X,
    Y,
    Z,
}

impl MeasurementAxis {
    pub const ALL: [MeasurementAxis; 3] =
        [MeasurementAxis::X, MeasurementAxis::Y, MeasurementAxis::Z];

    fn seed_offset(self) -> u64 {
        match self {
            MeasurementAxis::X => 0,
            MeasurementAxis::Y => 1,
            MeasurementAxis::Z => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RotationGate {
    Ry,
    Rx,
}

/// Single-qubit gate applied before a computational-basis readout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BasisRotation {
    pub gate: RotationGate,
    pub angle: GateAngle,
}

impl BasisRotation {
    pub fn apply(&self, state: &mut StateVector, qubit: usize) -> Result<()> {
        match self.gate {
            RotationGate::Ry => state.apply_ry(qubit, self.angle),
            RotationGate::Rx => state.apply_rx(qubit, self.angle),
        }
    }
}

/// Pre-measurement rotation that maps `axis` onto the Z readout.
pub fn basis_rotation(axis: MeasurementAxis) -> Option<BasisRotation> {
    match axis {
        MeasurementAxis::X => Some(BasisRotation {
            gate: RotationGate::Ry,
            angle: -FRAC_PI_2,
        }),
        MeasurementAxis::Y => Some(BasisRotation {
            gate: RotationGate::Rx,
            angle: FRAC_PI_2,
        }),
        MeasurementAxis::Z => None,
    }
}

/// Outcome tallies of one axis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ShotCounts {
    shots: u64,
    count0: u64,
    count1: u64,
}

impl ShotCounts {
    pub fn new(count0: u64, count1: u64) -> Result<Self> {
        let shots = count0
            .checked_add(count1)
            .ok_or_else(|| Error::Config("shot count overflows".into()))?;
        if shots == 0 {
            return Err(Error::Config("at least one shot is required".into()));
        }
        Ok(Self {
            shots,
            count0,
            count1,
        })
    }

    pub fn shots(&self) -> u64 {
        self.shots
    }

    pub fn count0(&self) -> u64 {
        self.count0
    }

    pub fn count1(&self) -> u64 {
        self.count1
    }
}

/// Estimated Pauli expectation with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SpinEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub shots: u64,
}

/// Deterministic generator used for every draw in this module.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rotates a copy of `state` for `axis`, then draws `shots` readouts of `qubit`.
pub fn sample_counts(
    state: &StateVector,
    qubit: usize,
    axis: MeasurementAxis,
    shots: u64,
    seed: u64,
) -> Result<ShotCounts> {
    if qubit >= state.n_qubits() {
        return Err(Error::Index(format!(
            "qubit {qubit} out of range for a {}-qubit register",
            state.n_qubits()
        )));
    }
    if shots == 0 {
        return Err(Error::Config("at least one shot is required".into()));
    }
    let p0 = match basis_rotation(axis) {
        Some(rotation) => {
            let mut rotated = state.clone();
            rotation.apply(&mut rotated, qubit)?;
            rotated.prob_zero(qubit)?
        }
        None => state.prob_zero(qubit)?,
    };
    sample_binomial(p0, shots, seed)
}

fn sample_binomial(p0: f64, shots: u64, seed: u64) -> Result<ShotCounts> {
    let p0 = p0.clamp(0.0, 1.0);
    let dist = Binomial::new(shots, p0)
        .map_err(|e| Error::Consistency(format!("binomial({shots}, {p0}): {e}")))?;
    let count0 = dist.sample(&mut seeded_rng(seed));
    ShotCounts::new(count0, shots - count0)
}

/// `mean = (count0 - count1) / shots`, `std_error = sqrt((1 - mean^2) / shots)`.
pub fn estimate_spin_component(counts: ShotCounts) -> SpinEstimate {
    let shots = counts.shots as f64;
    let mean = (counts.count0 as f64 - counts.count1 as f64) / shots;
    let std_error = ((1.0 - mean * mean).max(0.0) / shots).sqrt();
    SpinEstimate {
        mean,
        std_error,
        shots: counts.shots,
    }
}

/// Sampled entanglement with its propagated standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntanglementEstimate {
    /// `(1 - |s|) / 2` from the estimated spin, clipped to `[0, 1/2]`.
    pub value: f64,
    pub std_error: f64,
    pub sx: SpinEstimate,
    pub sy: SpinEstimate,
    pub sz: SpinEstimate,
}

impl EntanglementEstimate {
    /// Combines three component estimates. The error is propagated to first
    /// order through the Bloch norm; at a vanishing norm the bound
    /// `sqrt(sum of component variances) / 2` is used instead.
    pub fn from_components(sx: SpinEstimate, sy: SpinEstimate, sz: SpinEstimate) -> Self {
        let comps = [sx, sy, sz];
        let norm = comps.iter().map(|c| c.mean * c.mean).sum::<f64>().sqrt();
        let std_error = if norm < SINGULAR_NORM {
            0.5 * comps
                .iter()
                .map(|c| c.std_error * c.std_error)
                .sum::<f64>()
                .sqrt()
        } else {
            let grad: f64 = comps.iter().map(|c| (c.mean * c.std_error).powi(2)).sum();
            0.5 * grad.sqrt() / norm
        };
        Self {
            value: (0.5 * (1.0 - norm)).clamp(0.0, 0.5),
            std_error,
            sx,
            sy,
            sz,
        }
    }
}

/// Samples all three axes of `qubit` in an already prepared state.
pub fn estimate_entanglement_of_state(
    state: &StateVector,
    qubit: usize,
    shots_per_axis: u64,
    seed: u64,
) -> Result<EntanglementEstimate> {
    let [sx, sy, sz] = MeasurementAxis::ALL.map(|axis| {
        sample_counts(
            state,
            qubit,
            axis,
            shots_per_axis,
            seed.wrapping_add(axis.seed_offset()),
        )
        .map(estimate_spin_component)
    });
    Ok(EntanglementEstimate::from_components(sx?, sy?, sz?))
}

/// Runs `circuit` once and estimates the entanglement of `qubit` from shots.
pub fn estimate_entanglement(
    circuit: &Circuit,
    qubit: usize,
    shots_per_axis: u64,
    seed: u64,
) -> Result<EntanglementEstimate> {
    let state = circuit.run()?;
    estimate_entanglement_of_state(&state, qubit, shots_per_axis, seed)
}
