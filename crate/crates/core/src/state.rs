//! Dense statevector and the in-place gate kernels RY, RX and CP.
//!
//! Amplitude index `i` encodes the computational-basis label with qubit `q[0]`
//! as the least significant bit, so qubit `q` selects bit `1 << q`.
//!
//! Kernels split the amplitude array into fixed-size blocks and hand them to
//! rayon once the register is large enough. Every amplitude is updated by the
//! same arithmetic no matter how the blocks are scheduled, and reductions sum
//! fixed-size block partials in index order, so results do not depend on the
//! thread count.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::error::{Error, Result};

/// Complex amplitude of one computational-basis state.
pub type Amplitude = Complex64;

/// Gate angle in radians. Any finite value is accepted.
pub type GateAngle = f64;

/// Largest register accepted by [`StateVector::zero`] (256 MiB of amplitudes).
pub const DEFAULT_MAX_QUBITS: usize = 24;

/// Amplitude-block size used for parallel work splitting and for partial sums.
const BLOCK: usize = 1 << 13;

/// Registers with fewer amplitudes than this are processed on the calling thread.
const PARALLEL_MIN_LEN: usize = 1 << 15;

/// Dense amplitude vector of an `n`-qubit register.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n_qubits: usize,
    amps: Vec<Amplitude>,
}

/// Reduced density matrix of a single qubit, `rho[s][t] = <s|rho|t>`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QubitDensity {
    pub rho: [[Complex64; 2]; 2],
}

impl QubitDensity {
    pub fn trace(&self) -> f64 {
        self.rho[0][0].re + self.rho[1][1].re
    }

    /// Eigenvalues `(smaller, larger)` from the trace/determinant quadratic.
    pub fn eigenvalues(&self) -> (f64, f64) {
        let half_trace = 0.5 * self.trace();
        let diff = 0.5 * (self.rho[0][0].re - self.rho[1][1].re);
        // (tr/2)^2 - det = ((r00 - r11)/2)^2 + |r01|^2, never negative.
        let radius = (diff * diff + self.rho[0][1].norm_sqr()).sqrt();
        (half_trace - radius, half_trace + radius)
    }
}

fn check_angle(angle: GateAngle) -> Result<()> {
    if angle.is_finite() {
        Ok(())
    } else {
        Err(Error::Config(format!(
            "gate angle must be finite, got {angle}"
        )))
    }
}

impl StateVector {
    /// `|0...0>` on `n_qubits` qubits, limited to [`DEFAULT_MAX_QUBITS`].
    pub fn zero(n_qubits: usize) -> Result<Self> {
        Self::zero_with_cap(n_qubits, DEFAULT_MAX_QUBITS)
    }

    /// `|0...0>` with an explicit qubit cap.
    pub fn zero_with_cap(n_qubits: usize, max_qubits: usize) -> Result<Self> {
        if n_qubits == 0 || n_qubits > max_qubits {
            return Err(Error::Size(format!(
                "register of {n_qubits} qubits is outside 1..={max_qubits}"
            )));
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); 1usize << n_qubits];
        amps[0] = Complex64::new(1.0, 0.0);
        Ok(Self { n_qubits, amps })
    }

    /// Wraps an explicit amplitude array. The length must be a power of two
    /// (at least 2) and the squared norm must be 1 within 1e-10.
    pub fn from_amplitudes(amps: Vec<Amplitude>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::Size(format!(
                "amplitude count {len} is not a power of two >= 2"
            )));
        }
        let n_qubits = len.trailing_zeros() as usize;
        if n_qubits > DEFAULT_MAX_QUBITS {
            return Err(Error::Size(format!(
                "register of {n_qubits} qubits exceeds {DEFAULT_MAX_QUBITS}"
            )));
        }
        if amps.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::Consistency("non-finite amplitude".into()));
        }
        let state = Self { n_qubits, amps };
        let norm = state.norm_sqr();
        if (norm - 1.0).abs() > 1e-10 {
            return Err(Error::Consistency(format!(
                "amplitudes have squared norm {norm}, expected 1"
            )));
        }
        Ok(state)
    }

    /// Resets to `|0...0>` without reallocating.
    pub fn reset_zero(&mut self) {
        self.amps.fill(Complex64::new(0.0, 0.0));
        self.amps[0] = Complex64::new(1.0, 0.0);
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.amps.is_empty()
    }

    pub fn amplitudes(&self) -> &[Amplitude] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Amplitude {
        self.amps[index]
    }

    fn check_qubit(&self, qubit: usize) -> Result<()> {
        if qubit < self.n_qubits {
            Ok(())
        } else {
            Err(Error::Index(format!(
                "qubit {qubit} out of range for a {}-qubit register",
                self.n_qubits
            )))
        }
    }

    fn check_same_size(&self, other: &StateVector) -> Result<()> {
        if self.n_qubits == other.n_qubits {
            Ok(())
        } else {
            Err(Error::Size(format!(
                "states have {} and {} qubits",
                self.n_qubits, other.n_qubits
            )))
        }
    }

    /// `exp(-i theta sigma_y / 2)` on `qubit`.
    pub fn apply_ry(&mut self, qubit: usize, theta: GateAngle) -> Result<()> {
        self.check_qubit(qubit)?;
        check_angle(theta)?;
        let (s, c) = (0.5 * theta).sin_cos();
        let m = [
            [Complex64::new(c, 0.0), Complex64::new(-s, 0.0)],
            [Complex64::new(s, 0.0), Complex64::new(c, 0.0)],
        ];
        self.apply_1q(qubit, m);
        Ok(())
    }

    /// `exp(-i theta sigma_x / 2)` on `qubit`.
    pub fn apply_rx(&mut self, qubit: usize, theta: GateAngle) -> Result<()> {
        self.check_qubit(qubit)?;
        check_angle(theta)?;
        let (s, c) = (0.5 * theta).sin_cos();
        let m = [
            [Complex64::new(c, 0.0), Complex64::new(0.0, -s)],
            [Complex64::new(0.0, -s), Complex64::new(c, 0.0)],
        ];
        self.apply_1q(qubit, m);
        Ok(())
    }

    /// Controlled phase `diag(1, 1, 1, e^{i phi})` on the qubit pair. Symmetric in
    /// its two qubits.
    pub fn apply_cp(&mut self, qubit_a: usize, qubit_b: usize, phi: GateAngle) -> Result<()> {
        self.check_qubit(qubit_a)?;
        self.check_qubit(qubit_b)?;
        if qubit_a == qubit_b {
            return Err(Error::Index(format!(
                "controlled phase needs two distinct qubits, got {qubit_a} twice"
            )));
        }
        check_angle(phi)?;
        let mask = (1usize << qubit_a) | (1usize << qubit_b);
        let phase = Complex64::from_polar(1.0, phi);
        let kernel = |offset: usize, block: &mut [Amplitude]| {
            for (k, amp) in block.iter_mut().enumerate() {
                if (offset + k) & mask == mask {
                    *amp *= phase;
                }
            }
        };
        if self.amps.len() < PARALLEL_MIN_LEN {
            kernel(0, &mut self.amps);
        } else {
            self.amps
                .par_chunks_mut(BLOCK)
                .enumerate()
                .for_each(|(b, block)| kernel(b * BLOCK, block));
        }
        Ok(())
    }

    fn apply_1q(&mut self, qubit: usize, m: [[Complex64; 2]; 2]) {
        let stride = 1usize << qubit;
        let rotate = |lo: &mut [Amplitude], hi: &mut [Amplitude]| {
            for (a0, a1) in lo.iter_mut().zip(hi.iter_mut()) {
                let (x, y) = (*a0, *a1);
                *a0 = m[0][0] * x + m[0][1] * y;
                *a1 = m[1][0] * x + m[1][1] * y;
            }
        };
        let pairs_in = |chunk: &mut [Amplitude]| {
            for group in chunk.chunks_mut(2 * stride) {
                let (lo, hi) = group.split_at_mut(stride);
                rotate(lo, hi);
            }
        };

        if self.amps.len() < PARALLEL_MIN_LEN {
            pairs_in(&mut self.amps);
        } else if 2 * stride <= BLOCK {
            // Each block holds whole pair groups.
            self.amps.par_chunks_mut(BLOCK).for_each(pairs_in);
        } else {
            for group in self.amps.chunks_mut(2 * stride) {
                let (lo, hi) = group.split_at_mut(stride);
                lo.par_chunks_mut(BLOCK / 2)
                    .zip(hi.par_chunks_mut(BLOCK / 2))
                    .for_each(|(l, h)| rotate(l, h));
            }
        }
    }

    /// Sum of `|a_i|^2`.
    pub fn norm_sqr(&self) -> f64 {
        self.block_sum(|block| block.iter().map(|a| a.norm_sqr()).sum::<f64>())
    }

    /// `<self|other> = sum_i conj(self_i) * other_i`.
    pub fn inner_product(&self, other: &StateVector) -> Result<Complex64> {
        self.check_same_size(other)?;
        let partials: Vec<Complex64> = self
            .amps
            .chunks(BLOCK)
            .zip(other.amps.chunks(BLOCK))
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x.conj() * y).sum())
            .collect();
        Ok(partials.into_iter().sum())
    }

    /// Reduced density matrix of `qubit`, tracing out every other qubit.
    pub fn reduced_density_1q(&self, qubit: usize) -> Result<QubitDensity> {
        self.check_qubit(qubit)?;
        let stride = 1usize << qubit;
        // Sums over (|a0|^2, |a1|^2, a0 conj(a1)) with a0/a1 the pair differing in `qubit`.
        let accumulate = |chunk: &[Amplitude]| {
            let mut acc = (0.0f64, 0.0f64, Complex64::new(0.0, 0.0));
            for group in chunk.chunks(2 * stride) {
                let (lo, hi) = group.split_at(stride);
                for (a0, a1) in lo.iter().zip(hi) {
                    acc.0 += a0.norm_sqr();
                    acc.1 += a1.norm_sqr();
                    acc.2 += a0 * a1.conj();
                }
            }
            acc
        };
        // Chunks must contain whole pair groups.
        let chunk_len = BLOCK.max(2 * stride);
        let partials: Vec<(f64, f64, Complex64)> = if self.amps.len() < PARALLEL_MIN_LEN {
            self.amps.chunks(chunk_len).map(accumulate).collect()
        } else {
            self.amps.par_chunks(chunk_len).map(accumulate).collect()
        };
        let (mut p0, mut p1, mut off) = (0.0, 0.0, Complex64::new(0.0, 0.0));
        for (a, b, c) in partials {
            p0 += a;
            p1 += b;
            off += c;
        }
        Ok(QubitDensity {
            rho: [
                [Complex64::new(p0, 0.0), off],
                [off.conj(), Complex64::new(p1, 0.0)],
            ],
        })
    }

    /// Probability that `qubit` reads 0 in the computational basis.
    pub fn prob_zero(&self, qubit: usize) -> Result<f64> {
        Ok(self.reduced_density_1q(qubit)?.rho[0][0].re)
    }

    fn block_sum(&self, f: impl Fn(&[Amplitude]) -> f64 + Sync) -> f64 {
        let partials: Vec<f64> = if self.amps.len() < PARALLEL_MIN_LEN {
            self.amps.chunks(BLOCK).map(&f).collect()
        } else {
            self.amps.par_chunks(BLOCK).map(&f).collect()
        };
        partials.into_iter().sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2, PI};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn assert_amps(state: &StateVector, expected: &[Complex64], tol: f64) {
        assert_eq!(state.len(), expected.len());
        for (i, (a, e)) in state.amplitudes().iter().zip(expected).enumerate() {
            assert!((a - e).norm() <= tol, "amp {i}: got {a}, expected {e}");
        }
    }

    /// Deterministic pseudo-random normalized state.
    fn scrambled(n: usize, seed: u64) -> StateVector {
        let mut x = seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let mut next = || {
            x = x
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            ((x >> 11) as f64 / (1u64 << 53) as f64) - 0.5
        };
        let mut amps: Vec<Complex64> = (0..1 << n).map(|_| c(next(), next())).collect();
        let norm = amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        amps.iter_mut().for_each(|a| *a /= norm);
        StateVector::from_amplitudes(amps).unwrap()
    }

    #[test]
    fn zero_state_shapes() {
        assert_amps(&StateVector::zero(1).unwrap(), &[c(1., 0.), c(0., 0.)], 0.0);
        assert_amps(
            &StateVector::zero(2).unwrap(),
            &[c(1., 0.), c(0., 0.), c(0., 0.), c(0., 0.)],
            0.0,
        );
        let s = StateVector::zero(3).unwrap();
        assert_eq!(s.len(), 8);
        assert_eq!(s.amplitude(0), c(1., 0.));
        assert!(s.amplitudes()[1..].iter().all(|a| *a == c(0., 0.)));
    }

    #[test]
    fn zero_state_rejects_bad_sizes() {
        assert!(matches!(StateVector::zero(0), Err(Error::Size(_))));
        assert!(matches!(
            StateVector::zero(DEFAULT_MAX_QUBITS + 1),
            Err(Error::Size(_))
        ));
        assert!(StateVector::zero_with_cap(5, 4).is_err());
    }

    #[test]
    fn ry_examples() {
        let mut s = StateVector::zero(1).unwrap();
        s.apply_ry(0, PI).unwrap();
        assert_amps(&s, &[c(0., 0.), c(1., 0.)], 1e-15);

        let mut s = StateVector::zero(1).unwrap();
        s.apply_ry(0, FRAC_PI_2).unwrap();
        assert_amps(&s, &[c(FRAC_1_SQRT_2, 0.), c(FRAC_1_SQRT_2, 0.)], 1e-15);

        let orig = scrambled(4, 3);
        let mut s = orig.clone();
        s.apply_ry(2, 0.83).unwrap();
        s.apply_ry(2, -0.83).unwrap();
        assert_amps(&s, orig.amplitudes(), 1e-12);
    }

    #[test]
    fn rx_examples() {
        let mut s = StateVector::zero(1).unwrap();
        s.apply_rx(0, PI).unwrap();
        assert_amps(&s, &[c(0., 0.), c(0., -1.)], 1e-15);

        // RX(pi/2) takes the sigma_y = +1 eigenstate (|0> + i|1>)/sqrt2 to |0>
        // and the -1 eigenstate to |1>, up to phase.
        let mut s =
            StateVector::from_amplitudes(vec![c(FRAC_1_SQRT_2, 0.), c(0., FRAC_1_SQRT_2)]).unwrap();
        s.apply_rx(0, FRAC_PI_2).unwrap();
        assert!((s.amplitude(0).norm() - 1.0).abs() < 1e-12);
        assert!(s.amplitude(1).norm() < 1e-12);
        let mut s = StateVector::from_amplitudes(vec![c(FRAC_1_SQRT_2, 0.), c(0., -FRAC_1_SQRT_2)])
            .unwrap();
        s.apply_rx(0, FRAC_PI_2).unwrap();
        assert!(s.amplitude(0).norm() < 1e-12);
        assert!((s.amplitude(1).norm() - 1.0).abs() < 1e-12);

        let orig = scrambled(3, 9);
        let mut s = orig.clone();
        s.apply_rx(1, 2.1).unwrap();
        s.apply_rx(1, -2.1).unwrap();
        assert_amps(&s, orig.amplitudes(), 1e-12);
    }

    #[test]
    fn cp_examples() {
        // |11> picks up -1 under CZ.
        let mut s =
            StateVector::from_amplitudes(vec![c(0., 0.), c(0., 0.), c(0., 0.), c(1., 0.)]).unwrap();
        s.apply_cp(0, 1, PI).unwrap();
        assert_amps(&s, &[c(0., 0.), c(0., 0.), c(0., 0.), c(-1., 0.)], 1e-15);

        // |10> (q1 = 1, q0 = 0) is index 2 and stays put.
        for phi in [0.3, 1.0, PI, 5.0] {
            let mut s =
                StateVector::from_amplitudes(vec![c(0., 0.), c(0., 0.), c(1., 0.), c(0., 0.)])
                    .unwrap();
            s.apply_cp(0, 1, phi).unwrap();
            assert_amps(&s, &[c(0., 0.), c(0., 0.), c(1., 0.), c(0., 0.)], 0.0);
        }

        let orig = scrambled(3, 4);
        let mut ab = orig.clone();
        let mut ba = orig;
        ab.apply_cp(0, 2, 0.77).unwrap();
        ba.apply_cp(2, 0, 0.77).unwrap();
        assert_eq!(ab, ba);
    }

    #[test]
    fn gate_index_errors() {
        let mut s = StateVector::zero(2).unwrap();
        assert!(matches!(s.apply_ry(2, 0.1), Err(Error::Index(_))));
        assert!(matches!(s.apply_rx(5, 0.1), Err(Error::Index(_))));
        assert!(matches!(s.apply_cp(1, 1, 0.1), Err(Error::Index(_))));
        assert!(matches!(s.apply_cp(0, 2, 0.1), Err(Error::Index(_))));
        assert!(s.apply_ry(0, f64::NAN).is_err());
        assert!(s.reduced_density_1q(2).is_err());
    }

    #[test]
    fn inner_product_examples() {
        let s = scrambled(3, 1);
        assert!((s.inner_product(&s).unwrap() - c(1., 0.)).norm() < 1e-12);

        let zero = StateVector::zero(1).unwrap();
        let mut one = StateVector::zero(1).unwrap();
        one.apply_ry(0, PI).unwrap();
        assert!(zero.inner_product(&one).unwrap().norm() < 1e-15);

        let mut plus = StateVector::zero(1).unwrap();
        plus.apply_ry(0, FRAC_PI_2).unwrap();
        assert!((zero.inner_product(&plus).unwrap() - c(FRAC_1_SQRT_2, 0.)).norm() < 1e-15);

        assert!(matches!(zero.inner_product(&s), Err(Error::Size(_))));
    }

    #[test]
    fn reduced_density_examples() {
        let mut s = StateVector::zero(3).unwrap();
        s.apply_ry(1, 1.3).unwrap();
        s.apply_ry(2, 0.4).unwrap();
        let rho = s.reduced_density_1q(0).unwrap();
        assert!((rho.rho[0][0] - c(1., 0.)).norm() < 1e-15);
        assert!(rho.rho[0][1].norm() < 1e-15 && rho.rho[1][1].norm() < 1e-15);

        let bell = StateVector::from_amplitudes(vec![
            c(FRAC_1_SQRT_2, 0.),
            c(0., 0.),
            c(0., 0.),
            c(FRAC_1_SQRT_2, 0.),
        ])
        .unwrap();
        let rho = bell.reduced_density_1q(0).unwrap();
        assert!((rho.rho[0][0].re - 0.5).abs() < 1e-15 && (rho.rho[1][1].re - 0.5).abs() < 1e-15);
        assert!(rho.rho[0][1].norm() < 1e-15);

        let theta = 0.9;
        let mut s = StateVector::zero(2).unwrap();
        s.apply_ry(0, theta).unwrap();
        let rho = s.reduced_density_1q(0).unwrap();
        // Bloch vector (2 Re r01, -2 Im r01, r00 - r11).
        assert!((2.0 * rho.rho[0][1].re - theta.sin()).abs() < 1e-15);
        assert!(rho.rho[0][1].im.abs() < 1e-15);
        assert!((rho.rho[0][0].re - rho.rho[1][1].re - theta.cos()).abs() < 1e-15);
    }

    #[test]
    fn eigenvalues_of_known_densities() {
        let bell = StateVector::from_amplitudes(vec![
            c(FRAC_1_SQRT_2, 0.),
            c(0., 0.),
            c(0., 0.),
            c(FRAC_1_SQRT_2, 0.),
        ])
        .unwrap();
        let (lo, hi) = bell.reduced_density_1q(1).unwrap().eigenvalues();
        assert!((lo - 0.5).abs() < 1e-15 && (hi - 0.5).abs() < 1e-15);

        let (lo, hi) = scrambled(1, 7).reduced_density_1q(0).unwrap().eigenvalues();
        assert!(lo.abs() < 1e-12 && (hi - 1.0).abs() < 1e-12);
    }

    #[test]
    fn parallel_kernels_match_serial_reference() {
        // 16 qubits crosses PARALLEL_MIN_LEN; compare against a plain loop.
        let n = 16;
        let mut s = StateVector::zero(n).unwrap();
        for q in 0..n {
            s.apply_ry(q, 0.1 + 0.2 * q as f64).unwrap();
        }
        let mut reference = s.amplitudes().to_vec();
        for q in [0usize, 5, 12, 15] {
            s.apply_rx(q, 0.7).unwrap();
            let stride = 1 << q;
            let (sn, cs) = (0.35f64).sin_cos();
            for i in 0..reference.len() {
                if i & stride == 0 {
                    let (x, y) = (reference[i], reference[i | stride]);
                    reference[i] = cs * x + c(0., -sn) * y;
                    reference[i | stride] = c(0., -sn) * x + cs * y;
                }
            }
        }
        s.apply_cp(3, 14, 1.1).unwrap();
        for (i, r) in reference.iter_mut().enumerate() {
            if i & (1 << 3) != 0 && i & (1 << 14) != 0 {
                *r *= Complex64::from_polar(1.0, 1.1);
            }
        }
        assert_amps(&s, &reference, 1e-13);
        assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        let rho = s.reduced_density_1q(15).unwrap();
        assert!((rho.trace() - 1.0).abs() < 1e-12);
    }
}
