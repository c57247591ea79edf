//! Gate-by-gate circuit construction as an episodic environment.
//!
//! Each episode starts from `|0…0⟩`. An action appends one gate from the
//! fixed [`ActionSet`]; the agent observes the `X`, `Y`, `Z` expectation of
//! every qubit (qubit-major, `[X0, Y0, Z0, X1, …]`) and is charged a step
//! penalty until the fidelity with the target reaches the threshold.

use alloc::vec::Vec;
use core::ops::Deref;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[allow(unused_imports)] // shadowed by inherent f64 methods whenever std is linked
use num_traits::Float;

use crate::agents::{select_action, Trajectory, Transition};
use crate::qsim::{
    apply_gate, readout_damped_expectation, GateAction, GateKind, MixedState, NoiseSpec, Pauli, PureState, SimState,
};
use crate::{Error, Result};

pub const DEFAULT_MAX_STEPS: usize = 20;
pub const DEFAULT_STEP_PENALTY: f64 = 0.01;
pub const DEFAULT_THRESHOLD: f64 = 0.99;

/// The discrete gate set: for each qubit `U(π/4), X, Y, Z, H`, then every
/// ordered `CNOT(i→j)` with `i ≠ j` in lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct ActionSet {
    n_qubits: usize,
    actions: Vec<GateAction>,
}

impl ActionSet {
    pub fn build(n_qubits: usize) -> Result<Self> {
        if n_qubits < 2 {
            return Err(Error::TooFewQubits(n_qubits));
        }
        let singles = [
            GateKind::QUARTER_PHASE,
            GateKind::PauliX,
            GateKind::PauliY,
            GateKind::PauliZ,
            GateKind::Hadamard,
        ];
        let mut actions = Vec::with_capacity(5 * n_qubits + n_qubits * (n_qubits - 1));
        for q in 0..n_qubits {
            actions.extend(singles.iter().map(|&k| GateAction::single(k, q)));
        }
        for c in 0..n_qubits {
            for t in (0..n_qubits).filter(|&t| t != c) {
                actions.push(GateAction::cnot(c, t)?);
            }
        }
        Ok(Self { n_qubits, actions })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn len(&self) -> usize {
        self.actions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.actions.is_empty()
    }

    pub fn get(&self, index: usize) -> Result<&GateAction> {
        self.actions.get(index).ok_or(Error::ActionOutOfRange {
            index,
            n_actions: self.actions.len(),
        })
    }

    pub fn index_of(&self, gate: &GateAction) -> Option<usize> {
        self.actions.iter().position(|g| g == gate)
    }

    pub fn as_slice(&self) -> &[GateAction] {
        &self.actions
    }
}

/// Per-qubit Pauli expectations, length `3n`.
#[derive(Debug, Clone, PartialEq)]
pub struct Observation(Vec<f64>);

impl Observation {
    pub fn new(values: Vec<f64>) -> Self {
        Self(values)
    }

    pub fn into_inner(self) -> Vec<f64> {
        self.0
    }
}

impl Deref for Observation {
    type Target = [f64];

    fn deref(&self) -> &[f64] {
        &self.0
    }
}

/// How observations are estimated from the simulator state.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ObservationMode {
    /// Exact expectations, damped by the readout flip rate.
    #[default]
    Analytic,
    /// Binomial estimate from this many shots per observable.
    Shots(u32),
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnvConfig {
    pub n_qubits: usize,
    pub target: PureState,
    pub fidelity_threshold: f64,
    pub max_steps: usize,
    pub noise: NoiseSpec,
    pub step_penalty: f64,
    pub observation: ObservationMode,
    /// Run the density-matrix path even without noise.
    pub force_density_matrix: bool,
    /// Seeds the shot sampler.
    pub seed: u64,
}

impl EnvConfig {
    pub fn new(target: PureState) -> Self {
        Self {
            n_qubits: target.n_qubits(),
            target,
            fidelity_threshold: DEFAULT_THRESHOLD,
            max_steps: DEFAULT_MAX_STEPS,
            noise: NoiseSpec::NONE,
            step_penalty: DEFAULT_STEP_PENALTY,
            observation: ObservationMode::Analytic,
            force_density_matrix: false,
            seed: 0,
        }
    }

    pub fn with_threshold(mut self, threshold: f64) -> Self {
        self.fidelity_threshold = threshold;
        self
    }

    pub fn with_noise(mut self, noise: NoiseSpec) -> Self {
        self.noise = noise;
        self
    }

    pub fn with_max_steps(mut self, max_steps: usize) -> Self {
        self.max_steps = max_steps;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_qubits < 2 {
            return Err(Error::TooFewQubits(self.n_qubits));
        }
        if self.target.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                expected: self.n_qubits,
                got: self.target.n_qubits(),
            });
        }
        if !(self.fidelity_threshold > 0.0 && self.fidelity_threshold <= 1.0) {
            return Err(Error::InvalidConfig("fidelity threshold must lie in (0, 1]"));
        }
        if self.max_steps == 0 {
            return Err(Error::InvalidConfig("max_steps must be positive"));
        }
        if !self.step_penalty.is_finite() {
            return Err(Error::InvalidConfig("step penalty must be finite"));
        }
        if self.observation == ObservationMode::Shots(0) {
            return Err(Error::InvalidConfig("shot count must be positive"));
        }
        self.noise.validate()
    }

    fn uses_density_matrix(&self) -> bool {
        self.force_density_matrix || !self.noise.is_noise_free()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StepResult {
    pub observation: Observation,
    pub reward: f64,
    pub done: bool,
    pub fidelity: f64,
    pub steps_used: usize,
}

/// The reset/step contract the trainers consume.
pub trait Environment {
    fn obs_dim(&self) -> usize;
    fn n_actions(&self) -> usize;
    fn max_steps(&self) -> usize;
    fn reset(&mut self) -> Observation;
    fn step(&mut self, action: usize) -> Result<StepResult>;
}

pub struct QasEnv {
    config: EnvConfig,
    actions: ActionSet,
    state: SimState,
    steps: usize,
    done: bool,
    fidelity: f64,
    rng: ChaCha8Rng,
}

impl QasEnv {
    pub fn new(config: EnvConfig) -> Result<Self> {
        config.validate()?;
        let actions = ActionSet::build(config.n_qubits)?;
        let rng = ChaCha8Rng::seed_from_u64(config.seed);
        let mut env = Self {
            state: SimState::Pure(PureState::zero(config.n_qubits)),
            config,
            actions,
            steps: 0,
            done: false,
            fidelity: 0.0,
            rng,
        };
        env.reset();
        Ok(env)
    }

    pub fn config(&self) -> &EnvConfig {
        &self.config
    }

    pub fn action_set(&self) -> &ActionSet {
        &self.actions
    }

    pub fn state(&self) -> &SimState {
        &self.state
    }

    /// Fidelity of the current state with the target.
    pub fn fidelity(&self) -> f64 {
        self.fidelity
    }

    pub fn steps_used(&self) -> usize {
        self.steps
    }

    pub fn is_done(&self) -> bool {
        self.done
    }

    fn observe(&mut self) -> Observation {
        let n = self.config.n_qubits;
        let p_meas = self.config.noise.p_meas;
        let mut values = Vec::with_capacity(3 * n);
        for q in 0..n {
            for axis in Pauli::AXES {
                let exact = self.state.pauli_expectation(q, axis).expect("qubit index in range");
                let damped = readout_damped_expectation(exact, p_meas);
                values.push(match self.config.observation {
                    ObservationMode::Analytic => damped,
                    ObservationMode::Shots(shots) => sample_expectation(&mut self.rng, damped, shots),
                });
            }
        }
        Observation(values)
    }
}

fn sample_expectation(rng: &mut ChaCha8Rng, expectation: f64, shots: u32) -> f64 {
    let p_plus = (1.0 + expectation) / 2.0;
    let plus = (0..shots).filter(|_| rng.random::<f64>() < p_plus).count();
    2.0 * plus as f64 / shots as f64 - 1.0
}

impl Environment for QasEnv {
    fn obs_dim(&self) -> usize {
        3 * self.config.n_qubits
    }

    fn n_actions(&self) -> usize {
        self.actions.len()
    }

    fn max_steps(&self) -> usize {
        self.config.max_steps
    }

    fn reset(&mut self) -> Observation {
        let n = self.config.n_qubits;
        self.state = if self.config.uses_density_matrix() {
            SimState::Mixed(MixedState::zero(n))
        } else {
            SimState::Pure(PureState::zero(n))
        };
        self.steps = 0;
        self.done = false;
        self.fidelity = self
            .state
            .fidelity(&self.config.target)
            .expect("target validated against n_qubits");
        self.observe()
    }

    fn step(&mut self, action: usize) -> Result<StepResult> {
        if self.done {
            return Err(Error::EpisodeFinished);
        }
        let gate = *self.actions.get(action)?;
        apply_gate(&mut self.state, &gate, &self.config.noise)?;
        self.steps += 1;
        self.fidelity = self.state.fidelity(&self.config.target)?;
        let success = self.fidelity >= self.config.fidelity_threshold;
        let reward = if success {
            self.fidelity - self.config.step_penalty
        } else {
            -self.config.step_penalty
        };
        self.done = success || self.steps >= self.config.max_steps;
        Ok(StepResult {
            observation: self.observe(),
            reward,
            done: self.done,
            fidelity: self.fidelity,
            steps_used: self.steps,
        })
    }
}

/// Runs one episode, sampling actions from `policy` with a generator seeded
/// by `seed`. `policy` maps an observation to action probabilities.
pub fn episode_rollout<E, P>(env: &mut E, mut policy: P, seed: u64) -> Result<Trajectory>
where
    E: Environment,
    P: FnMut(&Observation) -> Vec<f64>,
{
    if env.n_actions() == 0 {
        return Err(Error::Empty("action set"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut obs = env.reset();
    let mut transitions = Vec::new();
    loop {
        let probs = policy(&obs);
        if probs.len() != env.n_actions() {
            return Err(Error::DimensionMismatch {
                expected: env.n_actions(),
                got: probs.len(),
            });
        }
        let action = select_action(&probs, &mut rng)?;
        let result = env.step(action)?;
        transitions.push(Transition {
            state: obs,
            action,
            log_prob_old: probs[action].ln(),
            reward: result.reward,
            done: result.done,
            fidelity: result.fidelity,
        });
        obs = result.observation;
        if result.done {
            break;
        }
    }
    Ok(Trajectory::new(transitions))
}
