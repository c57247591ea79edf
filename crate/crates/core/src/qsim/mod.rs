//! Exact small-register quantum simulation.
//!
//! Conventions: qubit 0 is the least significant bit of a basis index, so
//! amplitude `k` of a 2-qubit state is `|q1 q0⟩ = |k⟩`. Depolarizing
//! strength `p` means `ρ → (1−p)ρ + p·I/2` on the affected qubit.

mod gate;
mod noise;
mod pauli;
mod state;
mod tomography;

pub use gate::{GateAction, GateKind, Matrix2};
pub use noise::{
    apply_gate_mixed, apply_gate_mixed_in_place, depolarize, depolarize_in_place, depolarizing_kraus, NoiseSpec,
};
pub use pauli::{Pauli, PauliString};
pub use state::{
    fidelity_mixed, fidelity_pure, readout_damped_expectation, MixedState, PureState, SimState, NORM_TOLERANCE,
};
pub use tomography::{pauli_expectations, tomography_reconstruct, PauliExpectations, MAX_TOMOGRAPHY_QUBITS};

/// Applies `gate` to either representation; mixed states also receive gate
/// noise.
pub fn apply_gate(state: &mut SimState, gate: &GateAction, noise: &NoiseSpec) -> crate::Result<()> {
    match state {
        SimState::Pure(s) => s.apply_in_place(gate),
        SimState::Mixed(s) => apply_gate_mixed_in_place(s, gate, noise),
    }
}
