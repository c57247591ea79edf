use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("qubit index {qubit} out of range for {n_qubits} qubits")]
    QubitOutOfRange { qubit: usize, n_qubits: usize },
    #[error("control and target must differ (both are qubit {0})")]
    DuplicateQubits(usize),
    #[error("gate {gate} expects {expected} qubit(s), got {got}")]
    GateArity {
        gate: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("probability {0} is outside [0, 1]")]
    InvalidProbability(f64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("state norm {0} is not 1")]
    NotNormalized(f64),
    #[error("amplitude count {0} is not a positive power of two")]
    BadAmplitudeCount(usize),
    #[error("tomography limited to at most 4 qubits, got {0}")]
    TomographyTooLarge(usize),
    #[error("missing expectation for Pauli string {0}")]
    MissingPauliString(String),
    #[error("invalid Pauli string {0:?}")]
    InvalidPauliString(String),
    #[error("need at least 2 qubits, got {0}")]
    TooFewQubits(usize),
    #[error("action index {index} out of range for {n_actions} actions")]
    ActionOutOfRange { index: usize, n_actions: usize },
    #[error("episode already finished; call reset first")]
    EpisodeFinished,
    #[error("invalid environment config: {0}")]
    InvalidConfig(&'static str),
    #[error("non-finite value in {0}")]
    NonFinite(&'static str),
    #[error("probabilities sum to {0}, expected 1")]
    NotADistribution(f64),
    #[error("empty {0}")]
    Empty(&'static str),
    #[error("invalid hyperparameter: {0}")]
    InvalidHyper(&'static str),
    #[error("buffer holds {got} transitions, update horizon is {expected}")]
    ShortBuffer { expected: usize, got: usize },
    #[error("search budget exceeded: {0} circuits > 1e8")]
    SearchBudget(u128),
    #[error("malformed checkpoint: {0}")]
    Checkpoint(String),
    #[error("malformed circuit: {0}")]
    Circuit(String),
}
