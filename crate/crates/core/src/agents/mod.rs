//! A2C and PPO trainers over the [`Environment`](crate::env::Environment)
//! reset/step contract.

mod a2c;
mod loss;
mod ppo;
mod train;

use alloc::vec::Vec;
use core::ops::Deref;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::env::Observation;
use crate::nn::{policy_forward, value_forward, AdamState, MlpParams};
use crate::{Error, Result};

pub use a2c::a2c_update;
pub use loss::{a2c_loss, ppo_loss, surrogate_term, LossGrads, LossReport};
pub use ppo::ppo_update;
pub use train::{greedy_actions, EpisodeRecord, Trainer};

#[derive(Debug, Clone, PartialEq)]
pub struct Transition {
    pub state: Observation,
    pub action: usize,
    /// `log π_old(action | state)` of the policy that chose the action.
    pub log_prob_old: f64,
    pub reward: f64,
    pub done: bool,
    /// Fidelity after the action; bookkeeping only.
    pub fidelity: f64,
}

/// Ordered transitions of one episode (A2C) or of the PPO update horizon.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Trajectory(Vec<Transition>);

impl Trajectory {
    pub fn new(transitions: Vec<Transition>) -> Self {
        Self(transitions)
    }

    pub fn push(&mut self, t: Transition) {
        self.0.push(t);
    }

    pub fn clear(&mut self) {
        self.0.clear();
    }

    pub fn rewards(&self) -> Vec<f64> {
        self.0.iter().map(|t| t.reward).collect()
    }

    pub fn dones(&self) -> Vec<bool> {
        self.0.iter().map(|t| t.done).collect()
    }
}

impl Deref for Trajectory {
    type Target = [Transition];

    fn deref(&self) -> &[Transition] {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Algorithm {
    A2c,
    Ppo,
}

impl Algorithm {
    pub fn name(&self) -> &'static str {
        match self {
            Algorithm::A2c => "a2c",
            Algorithm::Ppo => "ppo",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AgentHyper {
    pub gamma: f64,
    pub learning_rate: f64,
    /// PPO ratio clip `C`.
    pub clip: f64,
    /// PPO epochs `K` per update.
    pub epochs: usize,
    /// PPO update horizon `U` in environment steps.
    pub horizon: usize,
    pub value_coef: f64,
    pub entropy_coef: f64,
}

impl AgentHyper {
    pub const fn a2c() -> Self {
        Self {
            gamma: 0.99,
            learning_rate: 1e-4,
            clip: 0.2,
            epochs: 1,
            horizon: 1,
            value_coef: 1.0,
            entropy_coef: 0.001,
        }
    }

    pub const fn ppo() -> Self {
        Self {
            gamma: 0.99,
            learning_rate: 0.002,
            clip: 0.2,
            epochs: 4,
            horizon: 1000,
            value_coef: 0.5,
            entropy_coef: 0.01,
        }
    }

    pub fn defaults_for(algorithm: Algorithm) -> Self {
        match algorithm {
            Algorithm::A2c => Self::a2c(),
            Algorithm::Ppo => Self::ppo(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.gamma > 0.0 && self.gamma <= 1.0) {
            return Err(Error::InvalidHyper("gamma must lie in (0, 1]"));
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::InvalidHyper("learning rate must be positive"));
        }
        if !(self.clip > 0.0 && self.clip < 1.0) {
            return Err(Error::InvalidHyper("clip must lie in (0, 1)"));
        }
        if self.epochs == 0 {
            return Err(Error::InvalidHyper("epochs must be positive"));
        }
        if self.horizon == 0 {
            return Err(Error::InvalidHyper("update horizon must be positive"));
        }
        if !(self.value_coef.is_finite() && self.entropy_coef.is_finite()) {
            return Err(Error::InvalidHyper("loss coefficients must be finite"));
        }
        Ok(())
    }
}

/// Disjoint actor and critic networks.
#[derive(Debug, Clone, PartialEq)]
pub struct ActorCritic {
    pub actor: MlpParams,
    pub critic: MlpParams,
}

impl ActorCritic {
    pub fn new<R: Rng + ?Sized>(obs_dim: usize, n_actions: usize, rng: &mut R) -> Self {
        Self {
            actor: MlpParams::init_uniform(MlpParams::standard_dims(obs_dim, n_actions), rng),
            critic: MlpParams::init_uniform(MlpParams::standard_dims(obs_dim, 1), rng),
        }
    }

    pub fn seeded(obs_dim: usize, n_actions: usize, seed: u64) -> Self {
        Self::new(obs_dim, n_actions, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn policy(&self, obs: &[f64]) -> Result<Vec<f64>> {
        policy_forward(&self.actor, obs)
    }

    pub fn value(&self, obs: &[f64]) -> Result<f64> {
        value_forward(&self.critic, obs)
    }

    fn same_shape(&self, other: &ActorCritic) -> bool {
        self.actor.dims() == other.actor.dims() && self.critic.dims() == other.critic.dims()
    }
}

/// Adam moments for both networks.
#[derive(Debug, Clone, PartialEq)]
pub struct Optimizers {
    pub actor: AdamState,
    pub critic: AdamState,
}

impl Optimizers {
    pub fn for_model(model: &ActorCritic) -> Self {
        Self {
            actor: AdamState::new(model.actor.len()),
            critic: AdamState::new(model.critic.len()),
        }
    }

    fn apply(&mut self, model: &mut ActorCritic, grads: &LossGrads, lr: f64) -> Result<()> {
        self.actor
            .step(model.actor.as_mut_slice(), grads.actor.as_slice(), lr)?;
        self.critic
            .step(model.critic.as_mut_slice(), grads.critic.as_slice(), lr)
    }
}

/// `R_t = r_t + γ R_{t+1}`, restarting after every terminal flag. The last
/// element is treated as terminal whatever its flag.
pub fn discounted_returns(rewards: &[f64], gamma: f64, dones: &[bool]) -> Result<Vec<f64>> {
    if rewards.is_empty() {
        return Err(Error::Empty("reward sequence"));
    }
    if rewards.len() != dones.len() {
        return Err(Error::DimensionMismatch {
            expected: rewards.len(),
            got: dones.len(),
        });
    }
    if !(gamma > 0.0 && gamma <= 1.0) {
        return Err(Error::InvalidHyper("gamma must lie in (0, 1]"));
    }
    let mut returns = alloc::vec![0.0; rewards.len()];
    let mut running = 0.0;
    for t in (0..rewards.len()).rev() {
        if dones[t] {
            running = 0.0;
        }
        running = rewards[t] + gamma * running;
        returns[t] = running;
    }
    Ok(returns)
}

/// Draws an index from a categorical distribution.
pub fn select_action<R: Rng + ?Sized>(probs: &[f64], rng: &mut R) -> Result<usize> {
    if probs.is_empty() {
        return Err(Error::Empty("probability vector"));
    }
    if probs.iter().any(|p| !p.is_finite() || *p < 0.0) {
        return Err(Error::NonFinite("probabilities"));
    }
    let total: f64 = probs.iter().sum();
    if (total - 1.0).abs() > 1e-6 {
        return Err(Error::NotADistribution(total));
    }
    let u = rng.random::<f64>() * total;
    let mut acc = 0.0;
    for (i, p) in probs.iter().enumerate() {
        acc += p;
        if u < acc {
            return Ok(i);
        }
    }
    Ok(probs.iter().rposition(|&p| p > 0.0).unwrap_or(probs.len() - 1))
}
