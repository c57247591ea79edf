//! Exhaustive shortest-circuit search and circuit replay.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::env::ActionSet;
use crate::qsim::{
    apply_gate_mixed_in_place, fidelity_mixed, fidelity_pure, GateAction, MixedState, NoiseSpec, PureState,
};
use crate::{Error, Result};

/// Largest number of circuits [`brute_force_search`] will enumerate.
pub const SEARCH_BUDGET: u128 = 100_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    Agent,
    Oracle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CircuitProgram {
    pub gates: Vec<GateAction>,
    pub provenance: Provenance,
}

impl CircuitProgram {
    pub fn new(gates: Vec<GateAction>, provenance: Provenance) -> Self {
        Self { gates, provenance }
    }

    pub fn len(&self) -> usize {
        self.gates.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gates.is_empty()
    }

    /// Maps action indices of `actions` to gates.
    pub fn from_action_indices(actions: &ActionSet, indices: &[usize], provenance: Provenance) -> Result<Self> {
        let gates = indices
            .iter()
            .map(|&i| actions.get(i).copied())
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(gates, provenance))
    }
}

/// Gates separated by `; `, e.g. `H(1); CNOT(1,0)`. Empty programs print
/// as `(empty)`.
impl fmt::Display for CircuitProgram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gates.is_empty() {
            return f.write_str("(empty)");
        }
        for (i, g) in self.gates.iter().enumerate() {
            if i > 0 {
                f.write_str("; ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Parses the [`Display`](fmt::Display) notation; `;` or newlines separate
/// gates. Parsed programs are tagged [`Provenance::Agent`].
impl FromStr for CircuitProgram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if s.trim() == "(empty)" {
            return Ok(Self::new(Vec::new(), Provenance::Agent));
        }
        let gates = s
            .split([';', '\n'])
            .map(str::trim)
            .filter(|g| !g.is_empty())
            .map(str::parse)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(gates, Provenance::Agent))
    }
}

/// Shortest circuit over the standard action set reaching `threshold`
/// fidelity with `target` from `|0…0⟩`, or `None` within `max_depth`.
///
/// Depths are tried in increasing order and sequences of one depth in
/// lexicographic order of action index, so the first hit is minimal and
/// tie-broken lexicographically.
pub fn brute_force_search(
    n_qubits: usize,
    target: &PureState,
    max_depth: usize,
    threshold: f64,
) -> Result<Option<CircuitProgram>> {
    let actions = ActionSet::build(n_qubits)?;
    if target.n_qubits() != n_qubits {
        return Err(Error::DimensionMismatch {
            expected: n_qubits,
            got: target.n_qubits(),
        });
    }
    let budget = (0..=max_depth as u32)
        .try_fold(0u128, |acc, d| {
            (actions.len() as u128).checked_pow(d).map(|c| acc.saturating_add(c))
        })
        .unwrap_or(u128::MAX);
    if budget > SEARCH_BUDGET {
        return Err(Error::SearchBudget(budget));
    }
    let start = PureState::zero(n_qubits);
    let mut path = Vec::with_capacity(max_depth);
    for depth in 0..=max_depth {
        if let Some(found) = search_depth(&actions, &start, target, depth, threshold, &mut path)? {
            return Ok(Some(CircuitProgram::from_action_indices(
                &actions,
                &found,
                Provenance::Oracle,
            )?));
        }
    }
    Ok(None)
}

fn search_depth(
    actions: &ActionSet,
    state: &PureState,
    target: &PureState,
    remaining: usize,
    threshold: f64,
    path: &mut Vec<usize>,
) -> Result<Option<Vec<usize>>> {
    if remaining == 0 {
        return Ok((fidelity_pure(state, target)? >= threshold).then(|| path.clone()));
    }
    for (i, gate) in actions.as_slice().iter().enumerate() {
        let next = state.apply(gate)?;
        path.push(i);
        let hit = search_depth(actions, &next, target, remaining - 1, threshold, path)?;
        path.pop();
        if hit.is_some() {
            return Ok(hit);
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReplayReport {
    pub notation: String,
    pub noise_free_fidelity: f64,
    /// Present when a noise model was requested.
    pub noisy_fidelity: Option<f64>,
}

/// Fidelity of `program` applied to `|0…0⟩`, exactly and, if `noise` is
/// given, on the density-matrix path with gate noise.
pub fn replay_circuit(program: &CircuitProgram, target: &PureState, noise: Option<&NoiseSpec>) -> Result<ReplayReport> {
    let n = target.n_qubits();
    for g in &program.gates {
        g.check_qubits(n)?;
    }
    let mut pure = PureState::zero(n);
    for g in &program.gates {
        pure.apply_in_place(g)?;
    }
    let noisy_fidelity = match noise {
        Some(noise) => {
            let mut rho = MixedState::zero(n);
            for g in &program.gates {
                apply_gate_mixed_in_place(&mut rho, g, noise)?;
            }
            Some(fidelity_mixed(&rho, target)?)
        }
        None => None,
    };
    Ok(ReplayReport {
        notation: alloc::format!("{program}"),
        noise_free_fidelity: fidelity_pure(&pure, target)?,
        noisy_fidelity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qsim::GateKind;
    use alloc::vec;

    fn fig3() -> CircuitProgram {
        CircuitProgram::new(
            vec![
                GateAction::single(GateKind::Hadamard, 1),
                GateAction::cnot(1, 0).unwrap(),
            ],
            Provenance::Agent,
        )
    }

    #[test]
    fn bell_at_depth_two() {
        let found = brute_force_search(2, &PureState::bell(), 2, 0.99).unwrap().unwrap();
        assert_eq!(found.len(), 2);
        assert_eq!(found.provenance, Provenance::Oracle);
        // lexicographically first: H(0) (index 4) then CNOT(0,1) (index 10)
        assert_eq!(
            found.gates,
            vec![
                GateAction::single(GateKind::Hadamard, 0),
                GateAction::cnot(0, 1).unwrap()
            ]
        );
        let r = replay_circuit(&found, &PureState::bell(), None).unwrap();
        assert!((r.noise_free_fidelity - 1.0).abs() < 1e-9);
    }

    #[test]
    fn bell_not_at_depth_one() {
        // Oracle: every single gate from |00> checked directly.
        let actions = ActionSet::build(2).unwrap();
        for g in actions.as_slice() {
            let s = PureState::zero(2).apply(g).unwrap();
            assert!(fidelity_pure(&s, &PureState::bell()).unwrap() < 0.99);
        }
        assert_eq!(brute_force_search(2, &PureState::bell(), 1, 0.99).unwrap(), None);
    }

    #[test]
    fn ghz_at_depth_three() {
        let found = brute_force_search(3, &PureState::ghz(3), 3, 0.99).unwrap().unwrap();
        assert_eq!(found.len(), 3);
        assert_eq!(found.gates[0].kind(), GateKind::Hadamard);
        assert!(found.gates[1..].iter().all(|g| g.kind() == GateKind::Cnot));
    }

    #[test]
    fn budget_guard() {
        assert!(matches!(
            brute_force_search(3, &PureState::ghz(3), 7, 0.99),
            Err(Error::SearchBudget(_))
        ));
    }

    #[test]
    fn replay_examples() {
        let bell = PureState::bell();
        let r = replay_circuit(&fig3(), &bell, None).unwrap();
        assert!((r.noise_free_fidelity - 1.0).abs() < 1e-12);
        assert_eq!(r.notation, "H(1); CNOT(1,0)");
        assert_eq!(r.noisy_fidelity, None);

        let empty = CircuitProgram::new(vec![], Provenance::Agent);
        assert!((replay_circuit(&empty, &bell, None).unwrap().noise_free_fidelity - 0.5).abs() < 1e-12);

        let noise = NoiseSpec::new(0.001, 0.0).unwrap();
        let f = replay_circuit(&fig3(), &bell, Some(&noise))
            .unwrap()
            .noisy_fidelity
            .unwrap();
        assert!(f < 1.0 && f > 0.95);

        let bad = CircuitProgram::new(vec![GateAction::single(GateKind::PauliX, 2)], Provenance::Agent);
        assert!(matches!(
            replay_circuit(&bad, &bell, None),
            Err(Error::QubitOutOfRange { .. })
        ));
    }

    #[test]
    fn notation_round_trip() {
        let p = fig3();
        let back: CircuitProgram = alloc::format!("{p}").parse().unwrap();
        assert_eq!(back, p);
        assert!("".parse::<CircuitProgram>().unwrap().is_empty());
        assert!("(empty)".parse::<CircuitProgram>().unwrap().is_empty());
        assert!("H(1); bogus".parse::<CircuitProgram>().is_err());
    }
}
