use alloc::vec;
use alloc::vec::Vec;
use core::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

#[allow(unused_imports)] // shadowed by inherent f64 methods whenever std is linked
use num_traits::Float;

use super::gate::{GateAction, Matrix2};
use super::pauli::{Pauli, PauliString};
use crate::{Error, Result};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// Tolerance used when validating externally supplied amplitudes.
pub const NORM_TOLERANCE: f64 = 1e-6;

fn check_qubit(qubit: usize, n_qubits: usize) -> Result<()> {
    if qubit >= n_qubits {
        return Err(Error::QubitOutOfRange { qubit, n_qubits });
    }
    Ok(())
}

/// Statevector over `n` qubits. Qubit 0 is the least significant bit of the
/// amplitude index.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// `|0…0⟩`.
    pub fn zero(n_qubits: usize) -> Self {
        assert!(n_qubits >= 1, "need at least one qubit");
        let mut amplitudes = vec![ZERO; 1 << n_qubits];
        amplitudes[0] = ONE;
        Self { n_qubits, amplitudes }
    }

    pub fn basis(n_qubits: usize, index: usize) -> Self {
        let mut s = Self::zero(n_qubits);
        s.amplitudes[0] = ZERO;
        s.amplitudes[index] = ONE;
        s
    }

    /// `(|0…0⟩ + |1…1⟩)/√2`; the Bell state for `n = 2`.
    pub fn ghz(n_qubits: usize) -> Self {
        let mut s = Self::zero(n_qubits);
        let last = s.amplitudes.len() - 1;
        s.amplitudes[0] = Complex64::new(FRAC_1_SQRT_2, 0.0);
        s.amplitudes[last] = Complex64::new(FRAC_1_SQRT_2, 0.0);
        s
    }

    pub fn bell() -> Self {
        Self::ghz(2)
    }

    /// Validates length (a power of two ≥ 2) and unit norm within
    /// [`NORM_TOLERANCE`], then renormalizes exactly.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self> {
        let len = amplitudes.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::BadAmplitudeCount(len));
        }
        if amplitudes.iter().any(|a| !a.re.is_finite() || !a.im.is_finite()) {
            return Err(Error::NonFinite("amplitudes"));
        }
        let norm = amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self {
            n_qubits: len.trailing_zeros() as usize,
            amplitudes: amplitudes.into_iter().map(|a| a / norm).collect(),
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    pub fn inner(&self, other: &PureState) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                got: other.n_qubits,
            });
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn apply(&self, gate: &GateAction) -> Result<PureState> {
        let mut out = self.clone();
        out.apply_in_place(gate)?;
        Ok(out)
    }

    pub fn apply_in_place(&mut self, gate: &GateAction) -> Result<()> {
        gate.check_qubits(self.n_qubits)?;
        match gate.kind().matrix() {
            Some(u) => {
                let len = self.amplitudes.len();
                apply_1q(&mut self.amplitudes, len, 1, 1 << gate.qubits()[0], &u);
            }
            None => {
                let (c, t) = (1 << gate.qubits()[0], 1 << gate.qubits()[1]);
                for i in 0..self.amplitudes.len() {
                    if i & c != 0 && i & t == 0 {
                        self.amplitudes.swap(i, i | t);
                    }
                }
            }
        }
        Ok(())
    }

    /// `⟨ψ|σ|ψ⟩` for an arbitrary Pauli string.
    pub fn pauli_string_expectation(&self, string: &PauliString) -> Result<f64> {
        if string.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                got: string.n_qubits(),
            });
        }
        let value: Complex64 = (0..self.amplitudes.len())
            .map(|i| {
                let (j, phase) = string.apply_to_basis(i);
                self.amplitudes[j].conj() * phase * self.amplitudes[i]
            })
            .sum();
        Ok(value.re.clamp(-1.0, 1.0))
    }

    /// `⟨σ_axis⟩` on one qubit.
    pub fn pauli_expectation(&self, qubit: usize, axis: Pauli) -> Result<f64> {
        check_qubit(qubit, self.n_qubits)?;
        self.pauli_string_expectation(&PauliString::single(self.n_qubits, qubit, axis))
    }
}

/// Density matrix over `n` qubits, stored row-major as `2ⁿ × 2ⁿ`.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedState {
    n_qubits: usize,
    rho: Vec<Complex64>,
}

impl MixedState {
    pub fn zero(n_qubits: usize) -> Self {
        Self::from_pure(&PureState::zero(n_qubits))
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn from_pure(state: &PureState) -> Self {
        let a = state.amplitudes();
        let dim = a.len();
        let mut rho = vec![ZERO; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                rho[i * dim + j] = a[i] * a[j].conj();
            }
        }
        Self {
            n_qubits: state.n_qubits(),
            rho,
        }
    }

    /// `I/2ⁿ`.
    pub fn maximally_mixed(n_qubits: usize) -> Self {
        let dim = 1usize << n_qubits;
        let mut rho = vec![ZERO; dim * dim];
        for i in 0..dim {
            rho[i * dim + i] = Complex64::new(1.0 / dim as f64, 0.0);
        }
        Self { n_qubits, rho }
    }

    /// Wraps a row-major matrix, checking size, hermiticity and unit trace
    /// within `1e-9`.
    pub fn from_matrix(n_qubits: usize, rho: Vec<Complex64>) -> Result<Self> {
        let dim = 1usize << n_qubits;
        if rho.len() != dim * dim {
            return Err(Error::DimensionMismatch {
                expected: dim * dim,
                got: rho.len(),
            });
        }
        let state = Self { n_qubits, rho };
        let trace = state.trace();
        if (trace.re - 1.0).abs() > 1e-9 || trace.im.abs() > 1e-9 {
            return Err(Error::NotNormalized(trace.re));
        }
        if state.hermiticity_error() > 1e-9 {
            return Err(Error::InvalidConfig("density matrix is not Hermitian"));
        }
        Ok(state)
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn dim(&self) -> usize {
        1 << self.n_qubits
    }

    pub fn matrix(&self) -> &[Complex64] {
        &self.rho
    }

    pub fn get(&self, row: usize, col: usize) -> Complex64 {
        self.rho[row * self.dim() + col]
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim()).map(|i| self.get(i, i)).sum()
    }

    /// Largest `|ρᵢⱼ − conj(ρⱼᵢ)|`.
    pub fn hermiticity_error(&self) -> f64 {
        let dim = self.dim();
        let mut worst = 0.0f64;
        for i in 0..dim {
            for j in 0..dim {
                worst = worst.max((self.get(i, j) - self.get(j, i).conj()).norm());
            }
        }
        worst
    }

    /// Noise-free unitary conjugation `UρU†`.
    pub fn apply(&self, gate: &GateAction) -> Result<MixedState> {
        let mut out = self.clone();
        out.apply_in_place(gate)?;
        Ok(out)
    }

    pub fn apply_in_place(&mut self, gate: &GateAction) -> Result<()> {
        gate.check_qubits(self.n_qubits)?;
        match gate.kind().matrix() {
            Some(u) => self.conjugate_1q(gate.qubits()[0], &u),
            None => {
                let (c, t) = (1 << gate.qubits()[0], 1 << gate.qubits()[1]);
                let dim = self.dim();
                let pairs = (0..dim).filter(|i| i & c != 0 && i & t == 0);
                for i in pairs.clone() {
                    for col in 0..dim {
                        self.rho.swap(i * dim + col, (i | t) * dim + col);
                    }
                }
                for i in pairs {
                    for row in 0..dim {
                        self.rho.swap(row * dim + i, row * dim + (i | t));
                    }
                }
            }
        }
        Ok(())
    }

    /// `ρ → UρU†` for a single-qubit `U` on `qubit`. The qubit index must
    /// already be validated.
    pub(crate) fn conjugate_1q(&mut self, qubit: usize, u: &Matrix2) {
        let dim = self.dim();
        let mask = 1 << qubit;
        // U acting on the row index of every column
        for col in 0..dim {
            apply_1q(&mut self.rho[col..], dim, dim, mask, u);
        }
        // U† from the right == conj(U) acting on the column index of every row
        let u_conj = [[u[0][0].conj(), u[0][1].conj()], [u[1][0].conj(), u[1][1].conj()]];
        for row in 0..dim {
            apply_1q(&mut self.rho[row * dim..(row + 1) * dim], dim, 1, mask, &u_conj);
        }
    }

    pub(crate) fn scale_add(&mut self, self_weight: f64, other: &MixedState, other_weight: f64) {
        for (a, b) in self.rho.iter_mut().zip(&other.rho) {
            *a = *a * self_weight + *b * other_weight;
        }
    }

    /// `Tr(ρσ)` for an arbitrary Pauli string.
    pub fn pauli_string_expectation(&self, string: &PauliString) -> Result<f64> {
        if string.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                got: string.n_qubits(),
            });
        }
        let value: Complex64 = (0..self.dim())
            .map(|i| {
                let (j, phase) = string.apply_to_basis(i);
                phase * self.get(i, j)
            })
            .sum();
        Ok(value.re.clamp(-1.0, 1.0))
    }

    pub fn pauli_expectation(&self, qubit: usize, axis: Pauli) -> Result<f64> {
        check_qubit(qubit, self.n_qubits)?;
        self.pauli_string_expectation(&PauliString::single(self.n_qubits, qubit, axis))
    }
}

/// Applies a 2×2 matrix to the pairs `(i, i|mask)` of a strided vector of
/// `len` logical elements, where element `i` lives at `data[i * stride]`.
fn apply_1q(data: &mut [Complex64], len: usize, stride: usize, mask: usize, u: &Matrix2) {
    for i in (0..len).filter(|i| i & mask == 0) {
        let (lo, hi) = (i * stride, (i | mask) * stride);
        let (a, b) = (data[lo], data[hi]);
        data[lo] = u[0][0] * a + u[0][1] * b;
        data[hi] = u[1][0] * a + u[1][1] * b;
    }
}

/// Either simulation path; the environment switches on the noise setting.
#[derive(Debug, Clone, PartialEq)]
pub enum SimState {
    Pure(PureState),
    Mixed(MixedState),
}

impl SimState {
    pub fn n_qubits(&self) -> usize {
        match self {
            SimState::Pure(s) => s.n_qubits(),
            SimState::Mixed(s) => s.n_qubits(),
        }
    }

    pub fn pauli_expectation(&self, qubit: usize, axis: Pauli) -> Result<f64> {
        match self {
            SimState::Pure(s) => s.pauli_expectation(qubit, axis),
            SimState::Mixed(s) => s.pauli_expectation(qubit, axis),
        }
    }

    pub fn fidelity(&self, target: &PureState) -> Result<f64> {
        match self {
            SimState::Pure(s) => fidelity_pure(s, target),
            SimState::Mixed(s) => fidelity_mixed(s, target),
        }
    }
}

/// `|⟨ψ|φ⟩|²`.
pub fn fidelity_pure(state: &PureState, target: &PureState) -> Result<f64> {
    Ok(state.inner(target)?.norm_sqr().clamp(0.0, 1.0))
}

/// `⟨ψ|ρ|ψ⟩`, the general fidelity when one argument is pure.
pub fn fidelity_mixed(state: &MixedState, target: &PureState) -> Result<f64> {
    if state.n_qubits() != target.n_qubits() {
        return Err(Error::DimensionMismatch {
            expected: state.n_qubits(),
            got: target.n_qubits(),
        });
    }
    let psi = target.amplitudes();
    let dim = state.dim();
    let mut acc = ZERO;
    for i in 0..dim {
        let mut row = ZERO;
        for j in 0..dim {
            row += state.get(i, j) * psi[j];
        }
        acc += psi[i].conj() * row;
    }
    Ok(acc.re.clamp(0.0, 1.0))
}

/// Analytic effect of an independent symmetric readout flip with
/// probability `p_meas` on a ±1-valued observable.
pub fn readout_damped_expectation(true_value: f64, p_meas: f64) -> f64 {
    (1.0 - 2.0 * p_meas) * true_value
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::GateKind;
    use core::f64::consts::{FRAC_PI_4, PI};

    fn close(a: Complex64, b: Complex64) -> bool {
        (a - b).norm() < 1e-12
    }

    #[test]
    fn hadamard_on_zero() {
        let s = PureState::zero(1)
            .apply(&GateAction::single(GateKind::Hadamard, 0))
            .unwrap();
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        assert!(close(s.amplitudes()[0], h) && close(s.amplitudes()[1], h));
    }

    #[test]
    fn cnot_builds_bell() {
        // (|00> + |10>)/√2 in the written order |q0 q1>, i.e. q0 in superposition.
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        let start = PureState::from_amplitudes(vec![h, h, ZERO, ZERO]).unwrap();
        let out = start.apply(&GateAction::cnot(0, 1).unwrap()).unwrap();
        assert_eq!(fidelity_pure(&out, &PureState::bell()).unwrap(), 1.0);
        assert!(close(out.amplitudes()[3], h));
    }

    #[test]
    fn phase_rotation_on_one() {
        let s = PureState::basis(1, 1)
            .apply(&GateAction::single(GateKind::QUARTER_PHASE, 0))
            .unwrap();
        assert!(close(s.amplitudes()[1], Complex64::from_polar(1.0, FRAC_PI_4)));
        assert!(close(s.amplitudes()[0], ZERO));
    }

    #[test]
    fn rejects_bad_qubits() {
        let s = PureState::zero(2);
        assert_eq!(
            s.apply(&GateAction::single(GateKind::PauliX, 2)),
            Err(Error::QubitOutOfRange { qubit: 2, n_qubits: 2 })
        );
        assert!(MixedState::zero(2).apply(&GateAction::cnot(0, 5).unwrap()).is_err());
        assert!(s.pauli_expectation(3, Pauli::Z).is_err());
    }

    #[test]
    fn mixed_pauli_x() {
        let rho = MixedState::zero(1)
            .apply(&GateAction::single(GateKind::PauliX, 0))
            .unwrap();
        assert!(close(rho.get(1, 1), ONE));
        assert!(close(rho.get(0, 0), ZERO));
    }

    #[test]
    fn basis_expectations() {
        let s = PureState::zero(2);
        assert_eq!(s.pauli_expectation(0, Pauli::Z).unwrap(), 1.0);
        assert_eq!(s.pauli_expectation(0, Pauli::X).unwrap(), 0.0);
        assert_eq!(s.pauli_expectation(0, Pauli::Y).unwrap(), 0.0);
        let plus = PureState::zero(1)
            .apply(&GateAction::single(GateKind::Hadamard, 0))
            .unwrap();
        assert!((plus.pauli_expectation(0, Pauli::X).unwrap() - 1.0).abs() < 1e-12);
        // S-like rotation by π/2 maps |+> to |+i>, a Y eigenstate.
        let plus_i = plus
            .apply(&GateAction::single(GateKind::PhaseRot(PI / 2.0), 0))
            .unwrap();
        assert!((plus_i.pauli_expectation(0, Pauli::Y).unwrap() - 1.0).abs() < 1e-12);
        let rho = MixedState::from_pure(&plus_i);
        assert!((rho.pauli_expectation(0, Pauli::Y).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bell_marginals_vanish() {
        // Oracle: direct inner products <B|σ|B> with σ built as an explicit 4x4 matrix.
        let bell = PureState::bell();
        let a = bell.amplitudes();
        let sx = [[ZERO, ONE], [ONE, ZERO]];
        let sy = [[ZERO, Complex64::new(0.0, -1.0)], [Complex64::new(0.0, 1.0), ZERO]];
        let sz = [[ONE, ZERO], [ZERO, -ONE]];
        for (axis, m) in [(Pauli::X, sx), (Pauli::Y, sy), (Pauli::Z, sz)] {
            for q in 0..2 {
                let mut direct = ZERO;
                for i in 0..4 {
                    for j in 0..4 {
                        // qubit q acts, other bit must match
                        let other = 1 - q;
                        if (i >> other & 1) != (j >> other & 1) {
                            continue;
                        }
                        direct += a[i].conj() * m[i >> q & 1][j >> q & 1] * a[j];
                    }
                }
                assert!(direct.norm() < 1e-12);
                assert!(bell.pauli_expectation(q, axis).unwrap().abs() < 1e-12);
            }
        }
    }

    #[test]
    fn fidelity_cases() {
        assert_eq!(fidelity_pure(&PureState::zero(1), &PureState::zero(1)).unwrap(), 1.0);
        assert_eq!(
            fidelity_pure(&PureState::zero(1), &PureState::basis(1, 1)).unwrap(),
            0.0
        );
        assert!(fidelity_pure(&PureState::zero(1), &PureState::zero(2)).is_err());
        assert!(fidelity_mixed(&MixedState::zero(2), &PureState::zero(1)).is_err());
        let f = fidelity_mixed(&MixedState::maximally_mixed(2), &PureState::bell()).unwrap();
        assert!((f - 0.25).abs() < 1e-12);
    }

    #[test]
    fn readout_damping() {
        assert_eq!(readout_damped_expectation(1.0, 0.0), 1.0);
        assert_eq!(readout_damped_expectation(1.0, 0.5), 0.0);
        assert!((readout_damped_expectation(0.8, 0.001) - 0.7984).abs() < 1e-12);
    }

    #[test]
    #[allow(clippy::approx_constant)] // eight-digit amplitudes, as a user would type them
    fn amplitude_validation() {
        assert!(matches!(
            PureState::from_amplitudes(vec![ONE, ONE]),
            Err(Error::NotNormalized(_))
        ));
        assert!(matches!(
            PureState::from_amplitudes(vec![ONE, ZERO, ZERO]),
            Err(Error::BadAmplitudeCount(3))
        ));
        let paper_bell = vec![
            Complex64::new(0.70710678, 0.0),
            ZERO,
            ZERO,
            Complex64::new(0.70710678, 0.0),
        ];
        let s = PureState::from_amplitudes(paper_bell).unwrap();
        assert!((s.norm_sqr() - 1.0).abs() < 1e-15);
    }
}
