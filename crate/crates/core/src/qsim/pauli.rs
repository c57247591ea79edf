use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pauli {
    I,
    X,
    Y,
    Z,
}

impl Pauli {
    pub const AXES: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];
    pub const ALL: [Pauli; 4] = [Pauli::I, Pauli::X, Pauli::Y, Pauli::Z];

    /// `σ|bit⟩ = phase·|bit'⟩`; returns `(flips, phase)`.
    fn on_bit(self, bit: bool) -> (bool, Complex64) {
        match (self, bit) {
            (Pauli::I, _) => (false, Complex64::new(1.0, 0.0)),
            (Pauli::X, _) => (true, Complex64::new(1.0, 0.0)),
            (Pauli::Y, false) => (true, Complex64::new(0.0, 1.0)),
            (Pauli::Y, true) => (true, Complex64::new(0.0, -1.0)),
            (Pauli::Z, false) => (false, Complex64::new(1.0, 0.0)),
            (Pauli::Z, true) => (false, Complex64::new(-1.0, 0.0)),
        }
    }

    fn symbol(self) -> char {
        match self {
            Pauli::I => 'I',
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// A tensor product of single-qubit Paulis. Character `k` of the textual
/// form acts on qubit `k` (qubit 0 first), matching the little-endian
/// amplitude order.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PauliString(Vec<Pauli>);

impl PauliString {
    pub fn new(ops: Vec<Pauli>) -> Self {
        Self(ops)
    }

    /// `axis` on `qubit`, identity elsewhere.
    pub fn single(n_qubits: usize, qubit: usize, axis: Pauli) -> Self {
        let mut ops = alloc::vec![Pauli::I; n_qubits];
        ops[qubit] = axis;
        Self(ops)
    }

    pub fn n_qubits(&self) -> usize {
        self.0.len()
    }

    pub fn ops(&self) -> &[Pauli] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().all(|&p| p == Pauli::I)
    }

    /// All `4ⁿ` strings, identity first, in lexicographic order of the
    /// per-qubit index (I < X < Y < Z).
    pub fn all(n_qubits: usize) -> impl Iterator<Item = PauliString> {
        (0..1usize << (2 * n_qubits)).map(move |code| {
            PauliString(
                (0..n_qubits)
                    .map(|k| Pauli::ALL[(code >> (2 * (n_qubits - 1 - k))) & 3])
                    .collect(),
            )
        })
    }

    /// Image of basis state `|index⟩`: `σ|index⟩ = phase·|j⟩`, returns `(j, phase)`.
    pub fn apply_to_basis(&self, index: usize) -> (usize, Complex64) {
        let mut j = index;
        let mut phase = Complex64::new(1.0, 0.0);
        for (q, op) in self.0.iter().enumerate() {
            let (flip, ph) = op.on_bit(index >> q & 1 == 1);
            if flip {
                j ^= 1 << q;
            }
            phase *= ph;
        }
        (j, phase)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for p in &self.0 {
            write!(f, "{}", p.symbol())?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let ops = s
            .trim()
            .chars()
            .map(|c| match c.to_ascii_uppercase() {
                'I' => Ok(Pauli::I),
                'X' => Ok(Pauli::X),
                'Y' => Ok(Pauli::Y),
                'Z' => Ok(Pauli::Z),
                _ => Err(Error::InvalidPauliString(String::from(s))),
            })
            .collect::<Result<Vec<_>>>()?;
        if ops.is_empty() {
            return Err(Error::InvalidPauliString(String::from(s)));
        }
        Ok(Self(ops))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumerates_all_strings() {
        let all: Vec<_> = PauliString::all(2).collect();
        assert_eq!(all.len(), 16);
        assert!(all[0].is_identity());
        assert_eq!(alloc::format!("{}", all[1]), "IX");
        assert_eq!(alloc::format!("{}", all[4]), "XI");
    }

    #[test]
    fn basis_action_matches_matrices() {
        // Y|0> = i|1>, Y|1> = -i|0>
        let y = PauliString::single(1, 0, Pauli::Y);
        assert_eq!(y.apply_to_basis(0), (1, Complex64::new(0.0, 1.0)));
        assert_eq!(y.apply_to_basis(1), (0, Complex64::new(0.0, -1.0)));
        // Z on qubit 1 of |10> (index 2) flips sign.
        let z1 = PauliString::single(2, 1, Pauli::Z);
        assert_eq!(z1.apply_to_basis(2), (2, Complex64::new(-1.0, 0.0)));
        assert_eq!(z1.apply_to_basis(1), (1, Complex64::new(1.0, 0.0)));
    }

    #[test]
    fn parses() {
        assert_eq!(
            "xz".parse::<PauliString>().unwrap(),
            PauliString::new(alloc::vec![Pauli::X, Pauli::Z])
        );
        assert!("XQ".parse::<PauliString>().is_err());
        assert!("".parse::<PauliString>().is_err());
    }
}
