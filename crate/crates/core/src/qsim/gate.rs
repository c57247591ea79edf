use alloc::format;
use alloc::vec::Vec;
use core::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};
use core::fmt;
use core::str::FromStr;

use num_complex::Complex64;

use crate::{Error, Result};

/// A 2×2 complex matrix, row-major.
pub type Matrix2 = [[Complex64; 2]; 2];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);
const I: Complex64 = Complex64::new(0.0, 1.0);

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GateKind {
    /// `diag(1, e^{iθ})`, a rotation about the Z axis up to global phase.
    PhaseRot(f64),
    PauliX,
    PauliY,
    PauliZ,
    Hadamard,
    Cnot,
}

impl GateKind {
    /// The rotation used by the standard action set.
    pub const QUARTER_PHASE: GateKind = GateKind::PhaseRot(FRAC_PI_4);

    pub fn arity(&self) -> usize {
        match self {
            GateKind::Cnot => 2,
            _ => 1,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            GateKind::PhaseRot(_) => "U",
            GateKind::PauliX => "X",
            GateKind::PauliY => "Y",
            GateKind::PauliZ => "Z",
            GateKind::Hadamard => "H",
            GateKind::Cnot => "CNOT",
        }
    }

    /// Matrix of a single-qubit gate; `None` for CNOT.
    pub fn matrix(&self) -> Option<Matrix2> {
        let h = Complex64::new(FRAC_1_SQRT_2, 0.0);
        Some(match *self {
            GateKind::PhaseRot(theta) => [[ONE, ZERO], [ZERO, Complex64::from_polar(1.0, theta)]],
            GateKind::PauliX => [[ZERO, ONE], [ONE, ZERO]],
            GateKind::PauliY => [[ZERO, -I], [I, ZERO]],
            GateKind::PauliZ => [[ONE, ZERO], [ZERO, -ONE]],
            GateKind::Hadamard => [[h, h], [h, -h]],
            GateKind::Cnot => return None,
        })
    }

    /// Full 4×4 matrix of CNOT in the basis `|control target⟩` with the
    /// target as the least significant bit.
    pub fn cnot_matrix() -> [[Complex64; 4]; 4] {
        let mut m = [[ZERO; 4]; 4];
        m[0][0] = ONE;
        m[1][1] = ONE;
        m[2][3] = ONE;
        m[3][2] = ONE;
        m
    }
}

/// A gate bound to the qubits it acts on. For CNOT `qubits[0]` is the
/// control and `qubits[1]` the target.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GateAction {
    kind: GateKind,
    qubits: [usize; 2],
}

impl GateAction {
    pub fn new(kind: GateKind, qubits: &[usize]) -> Result<Self> {
        if qubits.len() != kind.arity() {
            return Err(Error::GateArity {
                gate: kind.name(),
                expected: kind.arity(),
                got: qubits.len(),
            });
        }
        if kind == GateKind::Cnot {
            Self::cnot(qubits[0], qubits[1])
        } else {
            Ok(Self::single(kind, qubits[0]))
        }
    }

    /// Single-qubit gate. Panics if `kind` is CNOT.
    pub fn single(kind: GateKind, qubit: usize) -> Self {
        assert!(kind.arity() == 1, "use GateAction::cnot for two-qubit gates");
        Self {
            kind,
            qubits: [qubit, qubit],
        }
    }

    pub fn cnot(control: usize, target: usize) -> Result<Self> {
        if control == target {
            return Err(Error::DuplicateQubits(control));
        }
        Ok(Self {
            kind: GateKind::Cnot,
            qubits: [control, target],
        })
    }

    pub fn kind(&self) -> GateKind {
        self.kind
    }

    pub fn qubits(&self) -> &[usize] {
        &self.qubits[..self.kind.arity()]
    }

    pub fn check_qubits(&self, n_qubits: usize) -> Result<()> {
        match self.qubits().iter().find(|&&q| q >= n_qubits) {
            Some(&qubit) => Err(Error::QubitOutOfRange { qubit, n_qubits }),
            None => Ok(()),
        }
    }
}

/// Circuit notation: `H(1)`, `U(0)`, `CNOT(1,0)`. A `U` with an angle other
/// than π/4 prints as `U[θ](q)`.
impl fmt::Display for GateAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            GateKind::Cnot => write!(f, "CNOT({},{})", self.qubits[0], self.qubits[1]),
            GateKind::PhaseRot(theta) if theta != FRAC_PI_4 => {
                write!(f, "U[{}]({})", theta, self.qubits[0])
            }
            kind => write!(f, "{}({})", kind.name(), self.qubits[0]),
        }
    }
}

impl FromStr for GateAction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Circuit(format!("cannot parse gate {s:?}"));
        let s = s.trim();
        let open = s.find('(').ok_or_else(bad)?;
        let args = s[open..]
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(bad)?;
        let qubits = args
            .split(',')
            .map(|q| q.trim().parse::<usize>().map_err(|_| bad()))
            .collect::<Result<Vec<_>>>()?;
        let head = &s[..open];
        let kind = match head.to_ascii_uppercase().as_str() {
            "U" => GateKind::QUARTER_PHASE,
            "X" => GateKind::PauliX,
            "Y" => GateKind::PauliY,
            "Z" => GateKind::PauliZ,
            "H" => GateKind::Hadamard,
            "CNOT" | "CX" => GateKind::Cnot,
            other => {
                let theta = other
                    .strip_prefix("U[")
                    .and_then(|r| r.strip_suffix(']'))
                    .and_then(|t| t.parse::<f64>().ok())
                    .ok_or_else(bad)?;
                GateKind::PhaseRot(theta)
            }
        };
        GateAction::new(kind, &qubits)
    }
}
