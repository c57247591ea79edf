//! Density-matrix reconstruction from a complete set of Pauli expectations.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;

use num_complex::Complex64;

use super::pauli::PauliString;
use super::state::MixedState;
use crate::{Error, Result};

/// Largest register accepted; the expansion has `4ⁿ` terms of `4ⁿ` entries.
pub const MAX_TOMOGRAPHY_QUBITS: usize = 4;

pub type PauliExpectations = BTreeMap<PauliString, f64>;

/// All `4ⁿ − 1` non-identity expectations `Tr(ρσ)` of a state.
pub fn pauli_expectations(state: &MixedState) -> Result<PauliExpectations> {
    let n = state.n_qubits();
    if n > MAX_TOMOGRAPHY_QUBITS {
        return Err(Error::TomographyTooLarge(n));
    }
    PauliString::all(n)
        .filter(|s| !s.is_identity())
        .map(|s| {
            let value = state.pauli_string_expectation(&s)?;
            Ok((s, value))
        })
        .collect()
}

/// `ρ = 2⁻ⁿ Σ_s c_s σ_s` with the identity coefficient fixed to 1.
///
/// Every non-identity string on `n` qubits must be present. Entries for the
/// identity string, if supplied, are ignored.
pub fn tomography_reconstruct(expectations: &PauliExpectations, n_qubits: usize) -> Result<MixedState> {
    if n_qubits > MAX_TOMOGRAPHY_QUBITS {
        return Err(Error::TomographyTooLarge(n_qubits));
    }
    if n_qubits == 0 {
        return Err(Error::TooFewQubits(0));
    }
    let dim = 1usize << n_qubits;
    let mut rho = vec![Complex64::new(0.0, 0.0); dim * dim];
    let scale = 1.0 / dim as f64;
    for string in PauliString::all(n_qubits) {
        let coeff = if string.is_identity() {
            1.0
        } else {
            *expectations
                .get(&string)
                .ok_or_else(|| Error::MissingPauliString(string.to_string()))?
        };
        if !coeff.is_finite() {
            return Err(Error::NonFinite("Pauli expectation"));
        }
        // σ|i⟩ = phase·|j⟩ puts `phase` at row j, column i.
        for i in 0..dim {
            let (j, phase) = string.apply_to_basis(i);
            rho[j * dim + i] += phase * (coeff * scale);
        }
    }
    MixedState::from_matrix(n_qubits, rho)
}
