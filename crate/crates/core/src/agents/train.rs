use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[allow(unused_imports)] // shadowed by inherent f64 methods whenever std is linked
use num_traits::Float;

use super::{
    a2c_update, ppo_update, select_action, ActorCritic, AgentHyper, Algorithm, LossReport, Optimizers, Trajectory,
    Transition,
};
use crate::env::Environment;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpisodeRecord {
    /// Zero-based.
    pub episode: usize,
    pub episode_return: f64,
    pub final_fidelity: f64,
    pub length: usize,
    /// Set when a parameter update ran during this episode.
    pub loss: Option<LossReport>,
}

/// Owns an environment and the agent state for one seeded training run.
///
/// A2C updates at the end of every episode (success or truncation). PPO
/// acts with the frozen `old` policy and updates every `horizon` steps,
/// which may fall in the middle of an episode.
pub struct Trainer<E> {
    env: E,
    algorithm: Algorithm,
    hyper: AgentHyper,
    model: ActorCritic,
    old: ActorCritic,
    optim: Optimizers,
    rng: ChaCha8Rng,
    buffer: Trajectory,
    episodes_done: usize,
}

impl<E: Environment> Trainer<E> {
    pub fn new(env: E, algorithm: Algorithm, hyper: AgentHyper, seed: u64) -> Result<Self> {
        hyper.validate()?;
        if env.n_actions() == 0 {
            return Err(Error::Empty("action set"));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let model = ActorCritic::new(env.obs_dim(), env.n_actions(), &mut rng);
        let optim = Optimizers::for_model(&model);
        Ok(Self {
            env,
            algorithm,
            hyper,
            old: model.clone(),
            model,
            optim,
            rng,
            buffer: Trajectory::default(),
            episodes_done: 0,
        })
    }

    pub fn model(&self) -> &ActorCritic {
        &self.model
    }

    pub fn env(&self) -> &E {
        &self.env
    }

    pub fn env_mut(&mut self) -> &mut E {
        &mut self.env
    }

    pub fn algorithm(&self) -> Algorithm {
        self.algorithm
    }

    pub fn train(&mut self, episodes: usize) -> Result<Vec<EpisodeRecord>> {
        if episodes == 0 {
            return Err(Error::InvalidHyper("episode count must be at least 1"));
        }
        (0..episodes).map(|_| self.run_episode()).collect()
    }

    pub fn run_episode(&mut self) -> Result<EpisodeRecord> {
        let mut obs = self.env.reset();
        let mut episode_return = 0.0;
        let mut length = 0;
        let mut loss = None;
        if self.algorithm == Algorithm::A2c {
            self.buffer.clear();
        }
        loop {
            let acting = match self.algorithm {
                Algorithm::A2c => &self.model,
                Algorithm::Ppo => &self.old,
            };
            let probs = acting.policy(&obs)?;
            let action = select_action(&probs, &mut self.rng)?;
            let step = self.env.step(action)?;
            episode_return += step.reward;
            length += 1;
            self.buffer.push(Transition {
                state: obs,
                action,
                log_prob_old: probs[action].ln(),
                reward: step.reward,
                done: step.done,
                fidelity: step.fidelity,
            });
            obs = step.observation;

            if self.algorithm == Algorithm::Ppo && self.buffer.len() >= self.hyper.horizon {
                loss = Some(ppo_update(
                    &mut self.buffer,
                    &mut self.model,
                    &mut self.old,
                    &mut self.optim,
                    &self.hyper,
                )?);
            }
            if step.done {
                if self.algorithm == Algorithm::A2c {
                    loss = Some(a2c_update(&self.buffer, &mut self.model, &mut self.optim, &self.hyper)?);
                }
                let record = EpisodeRecord {
                    episode: self.episodes_done,
                    episode_return,
                    final_fidelity: step.fidelity,
                    length,
                    loss,
                };
                self.episodes_done += 1;
                return Ok(record);
            }
        }
    }
}

/// Runs the argmax policy for one episode; returns the chosen action
/// indices and the final fidelity.
pub fn greedy_actions<E: Environment>(model: &ActorCritic, env: &mut E) -> Result<(Vec<usize>, f64)> {
    let mut obs = env.reset();
    let mut actions = Vec::new();
    loop {
        let probs = model.policy(&obs)?;
        let best = probs
            .iter()
            .enumerate()
            .fold(0, |best, (i, p)| if *p > probs[best] { i } else { best });
        let step = env.step(best)?;
        actions.push(best);
        obs = step.observation;
        if step.done {
            return Ok((actions, step.fidelity));
        }
    }
}
