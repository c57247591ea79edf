use num_complex::Complex64;

#[allow(unused_imports)] // shadowed by inherent f64 methods whenever std is linked
use num_traits::Float;

use super::gate::{GateAction, GateKind, Matrix2};
use super::state::MixedState;
use crate::{Error, Result};

/// Gate depolarizing strength and readout flip probability.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct NoiseSpec {
    pub p_gate: f64,
    pub p_meas: f64,
}

impl NoiseSpec {
    pub const NONE: NoiseSpec = NoiseSpec {
        p_gate: 0.0,
        p_meas: 0.0,
    };

    pub fn new(p_gate: f64, p_meas: f64) -> Result<Self> {
        let spec = Self { p_gate, p_meas };
        spec.validate()?;
        Ok(spec)
    }

    /// Same rate for gates and readout.
    pub fn uniform(p: f64) -> Result<Self> {
        Self::new(p, p)
    }

    pub fn validate(&self) -> Result<()> {
        check_probability(self.p_gate)?;
        check_probability(self.p_meas)
    }

    pub fn is_noise_free(&self) -> bool {
        self.p_gate == 0.0 && self.p_meas == 0.0
    }
}

fn check_probability(p: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidProbability(p));
    }
    Ok(())
}

/// Kraus operators `√(1−3p/4)·I, √(p/4)·X, √(p/4)·Y, √(p/4)·Z` of the
/// channel `ρ → (1−p)ρ + p·I/2`.
pub fn depolarizing_kraus(p: f64) -> Result<[Matrix2; 4]> {
    check_probability(p)?;
    let z = Complex64::new(0.0, 0.0);
    let a = Complex64::new((1.0 - 0.75 * p).sqrt(), 0.0);
    let b = (p / 4.0).sqrt();
    let (re, im) = (Complex64::new(b, 0.0), Complex64::new(0.0, b));
    Ok([
        [[a, z], [z, a]],
        [[z, re], [re, z]],
        [[z, -im], [im, z]],
        [[re, z], [z, -re]],
    ])
}

/// Single-qubit depolarizing channel on `qubit`:
/// `(1−3p/4)ρ + (p/4)(XρX + YρY + ZρZ)`.
pub fn depolarize(state: &MixedState, qubit: usize, p: f64) -> Result<MixedState> {
    let mut out = state.clone();
    depolarize_in_place(&mut out, qubit, p)?;
    Ok(out)
}

pub fn depolarize_in_place(state: &mut MixedState, qubit: usize, p: f64) -> Result<()> {
    check_probability(p)?;
    if qubit >= state.n_qubits() {
        return Err(Error::QubitOutOfRange {
            qubit,
            n_qubits: state.n_qubits(),
        });
    }
    if p == 0.0 {
        return Ok(());
    }
    let original = state.clone();
    state.scale_add(1.0 - 0.75 * p, &original, 0.0);
    for pauli in [GateKind::PauliX, GateKind::PauliY, GateKind::PauliZ] {
        let mut term = original.clone();
        term.conjugate_1q(qubit, &pauli.matrix().expect("single-qubit Pauli"));
        state.scale_add(1.0, &term, 0.25 * p);
    }
    Ok(())
}

/// `UρU†` followed by depolarizing noise of strength `noise.p_gate` on every
/// qubit the gate touches (a product of single-qubit channels for CNOT).
pub fn apply_gate_mixed(state: &MixedState, gate: &GateAction, noise: &NoiseSpec) -> Result<MixedState> {
    let mut out = state.clone();
    apply_gate_mixed_in_place(&mut out, gate, noise)?;
    Ok(out)
}

pub fn apply_gate_mixed_in_place(state: &mut MixedState, gate: &GateAction, noise: &NoiseSpec) -> Result<()> {
    noise.validate()?;
    state.apply_in_place(gate)?;
    for &q in gate.qubits() {
        depolarize_in_place(state, q, noise.p_gate)?;
    }
    Ok(())
}
