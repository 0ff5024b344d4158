//! Geometric measure of entanglement of one qubit with the rest of a pure state.
//!
//! Three independent routes are provided:
//!
//! * the mean-spin route, `E = (1 - |<sigma>|) / 2` with the Bloch vector of
//!   the qubit ([`mean_spin`], [`entanglement_from_spin`]);
//! * the Schmidt route, `E = 1 - lambda_max` of the qubit's reduced density
//!   matrix ([`entanglement_schmidt_oracle`]), which is the reference value;
//! * a brute-force minimization of the squared Fubini-Study distance over a
//!   grid of product states ([`entanglement_grid_oracle`]).
//!
//! Closed-form expressions for the circuit families studied here live in
//! [`closed_form`].

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::state::StateVector;

/// Values within this distance outside `[0, 1/2]` are treated as rounding noise.
pub const CLAMP_TOLERANCE: f64 = 1e-10;

/// Bloch-vector norms above `1 + BLOCH_NORM_TOLERANCE` signal a bug upstream.
pub const BLOCH_NORM_TOLERANCE: f64 = 1e-8;

/// Default polar resolution of the grid oracle (azimuth uses twice as many steps).
pub const DEFAULT_GRID_RESOLUTION: usize = 128;

/// Smallest accepted grid resolution.
pub const MIN_GRID_RESOLUTION: usize = 8;

/// Pauli expectations `(<sigma_x>, <sigma_y>, <sigma_z>)` of one qubit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinMean {
    pub sx: f64,
    pub sy: f64,
    pub sz: f64,
}

impl SpinMean {
    pub fn new(sx: f64, sy: f64, sz: f64) -> Self {
        Self { sx, sy, sz }
    }

    /// Euclidean length of the Bloch vector.
    pub fn norm(&self) -> f64 {
        (self.sx * self.sx + self.sy * self.sy + self.sz * self.sz).sqrt()
    }
}

/// Entanglement of a qubit with the rest, in `[0, 1/2]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct EntanglementValue(f64);

impl EntanglementValue {
    /// Accepts `raw` if it lies in `[0, 1/2]` up to [`CLAMP_TOLERANCE`], clamping it.
    pub fn new(raw: f64) -> Result<Self> {
        if !(-CLAMP_TOLERANCE..=0.5 + CLAMP_TOLERANCE).contains(&raw) {
            return Err(Error::Consistency(format!(
                "entanglement {raw} lies outside [0, 1/2]"
            )));
        }
        Ok(Self(raw.clamp(0.0, 0.5)))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<EntanglementValue> for f64 {
    fn from(e: EntanglementValue) -> f64 {
        e.0
    }
}

/// Exact Bloch vector of `qubit`: `sx = 2 Re rho01`, `sy = -2 Im rho01`,
/// `sz = rho00 - rho11`.
pub fn mean_spin(state: &StateVector, qubit: usize) -> Result<SpinMean> {
    let rho = state.reduced_density_1q(qubit)?.rho;
    Ok(SpinMean {
        sx: 2.0 * rho[0][1].re,
        sy: -2.0 * rho[0][1].im,
        sz: rho[0][0].re - rho[1][1].re,
    })
}

/// `(1 - |<sigma>|) / 2`.
pub fn entanglement_from_spin(spin: SpinMean) -> Result<EntanglementValue> {
    let norm = spin.norm();
    if !norm.is_finite() || norm > 1.0 + BLOCH_NORM_TOLERANCE {
        return Err(Error::Consistency(format!(
            "Bloch vector norm {norm} exceeds 1"
        )));
    }
    Ok(EntanglementValue((0.5 * (1.0 - norm)).clamp(0.0, 0.5)))
}

/// Mean-spin route for a qubit of a state.
pub fn entanglement_of_qubit(state: &StateVector, qubit: usize) -> Result<EntanglementValue> {
    entanglement_from_spin(mean_spin(state, qubit)?)
}

/// `1 - lambda_max` of the qubit's reduced density matrix.
pub fn entanglement_schmidt_oracle(state: &StateVector, qubit: usize) -> Result<EntanglementValue> {
    let (_, largest) = state.reduced_density_1q(qubit)?.eigenvalues();
    EntanglementValue::new(1.0 - largest)
}

/// `sqrt(1 - |<a|b>|^2)`, clipped to `[0, 1]`.
pub fn fubini_study_distance(a: &StateVector, b: &StateVector) -> Result<f64> {
    let overlap = a.inner_product(b)?.norm_sqr();
    Ok((1.0 - overlap).clamp(0.0, 1.0).sqrt())
}

/// Minimum squared Fubini-Study distance from `state` to product states
/// `|chi(alpha, beta)> (x) |Phi>`, searched over a Bloch-sphere grid.
///
/// `alpha` takes the `resolution + 1` values `pi * i / resolution` and `beta`
/// the `2 * resolution` values `pi * j / resolution`, so doubling the resolution
/// refines the previous grid. For each `chi` the optimal rest state is the
/// normalized partial overlap `<chi|psi>`, whose squared norm is the best
/// attainable fidelity.
pub fn entanglement_grid_oracle(
    state: &StateVector,
    qubit: usize,
    resolution: usize,
) -> Result<EntanglementValue> {
    if qubit >= state.n_qubits() {
        return Err(Error::Index(format!(
            "qubit {qubit} out of range for a {}-qubit register",
            state.n_qubits()
        )));
    }
    if resolution < MIN_GRID_RESOLUTION {
        return Err(Error::Config(format!(
            "grid resolution {resolution} is below {MIN_GRID_RESOLUTION}"
        )));
    }

    // Amplitudes split by the qubit's value, aligned on the rest-of-register label.
    let bit = 1usize << qubit;
    let amps = state.amplitudes();
    let (zeros, ones): (Vec<Complex64>, Vec<Complex64>) = (0..amps.len())
        .filter(|i| i & bit == 0)
        .map(|i| (amps[i], amps[i | bit]))
        .unzip();

    let step = std::f64::consts::PI / resolution as f64;
    let best_fidelity = (0..=resolution)
        .into_par_iter()
        .map(|i| {
            let (half_sin, half_cos) = (0.5 * step * i as f64).sin_cos();
            let mut best = 0.0f64;
            for j in 0..2 * resolution {
                // conj(chi_0), conj(chi_1) with chi_1 = e^{i beta} sin(alpha / 2).
                let c0 = half_cos;
                let c1 = Complex64::from_polar(half_sin, -step * j as f64);
                let fidelity: f64 = zeros
                    .iter()
                    .zip(&ones)
                    .map(|(a0, a1)| (a0 * c0 + a1 * c1).norm_sqr())
                    .sum();
                best = best.max(fidelity);
            }
            best
        })
        .reduce(|| 0.0, f64::max);

    EntanglementValue::new((1.0 - best_fidelity).max(0.0))
}

/// Closed-form entanglement of the circuit families considered here.
///
/// All functions evaluate their expression literally. The two `reported_*`
/// functions reproduce expressions that leave the admissible range `[0, 1/2]`
/// and are therefore returned as plain numbers for comparison only.
pub mod closed_form {
    use super::EntanglementValue;
    use crate::state::GateAngle;

    fn literal(raw: f64) -> EntanglementValue {
        debug_assert!(
            raw > -1e-12 && raw < 0.5 + 1e-12,
            "closed form left range: {raw}"
        );
        EntanglementValue(raw.clamp(0.0, 0.5))
    }

    /// Vertex of degree `degree` in a graph state with uniform `RY(theta)` and `CP(phi)`:
    ///
    /// `1/2 - 1/2 sqrt(sin^2 theta (cos^2(phi/2) + sin^2(phi/2) cos^2 theta)^degree + cos^2 theta)`.
    pub fn graph(theta: GateAngle, phi: GateAngle, degree: u32) -> EntanglementValue {
        let (s, c) = theta.sin_cos();
        let (hs, hc) = (0.5 * phi).sin_cos();
        let base = hc * hc + hs * hs * c * c;
        literal(0.5 - 0.5 * (s * s * base.powi(degree as i32) + c * c).sqrt())
    }

    /// Middle qubit of a 3-qubit CZ chain after one layer with angles
    /// `theta0, theta1, theta2`:
    ///
    /// `(1 - sqrt(cos^2 theta0 cos^2 theta2 sin^2 theta1 + cos^2 theta1)) / 2`.
    pub fn qgan_k1(theta0: GateAngle, theta1: GateAngle, theta2: GateAngle) -> EntanglementValue {
        let (c0, c2) = (theta0.cos(), theta2.cos());
        let (s1, c1) = theta1.sin_cos();
        literal(0.5 * (1.0 - (c0 * c0 * c2 * c2 * s1 * s1 + c1 * c1).sqrt()))
    }

    /// Middle qubit of a 3-qubit CZ chain, two layers, first-layer angles all
    /// `pi/2`, second-layer angles `a, b, c`:
    ///
    /// `(1 - |cos(a+b-c) + cos(a-b+c) + cos(-a+b+c) + cos(a+b+c)| / 4) / 2`.
    pub fn qgan_k2(a: GateAngle, b: GateAngle, c: GateAngle) -> EntanglementValue {
        let sum = (a + b - c).cos() + (a - b + c).cos() + (-a + b + c).cos() + (a + b + c).cos();
        literal(0.5 * (1.0 - 0.25 * sum.abs()))
    }

    /// [`qgan_k2`] with equal second-layer angles: `(1 - |cos^3 theta1|) / 2`.
    pub fn qgan_k2_equal(theta1: GateAngle) -> EntanglementValue {
        literal(0.5 * (1.0 - theta1.cos().powi(3).abs()))
    }

    /// Middle qubit of a one-layer chain with all angles `pi/2` and uniform
    /// phase `phi`: `(1 - cos^2(phi/2)) / 2`.
    pub fn phi_k1(phi: GateAngle) -> EntanglementValue {
        let c = (0.5 * phi).cos();
        literal(0.5 * (1.0 - c * c))
    }

    /// `(2 - |sin(2 theta0)|) / 2`, reported for the two-layer sweep over the
    /// first-layer angle. Takes values in `[1/2, 1]`, outside the range of the measure.
    pub fn reported_theta0_k2(theta0: GateAngle) -> f64 {
        0.5 * (2.0 - (2.0 * theta0).sin().abs())
    }

    /// `(1 - |cos(phi1)(1 + cos(phi1))|) / 2`, reported for the two-layer sweep
    /// over the first-layer phase. Equals `-1/2` at `phi1 = 0`.
    pub fn reported_phi1_k2(phi1: GateAngle) -> f64 {
        let c = phi1.cos();
        0.5 * (1.0 - (c * (1.0 + c)).abs())
    }
}
