use alloc::vec::Vec;

#[allow(unused_imports)] // shadowed by inherent f64 methods whenever std is linked
use num_traits::Float;

use super::{ActorCritic, AgentHyper, Trajectory};
use crate::nn::{log_softmax, MlpParams};
use crate::{Error, Result};

/// Loss components of one update. `entropy` is the summed per-step entropy
/// for A2C and the mean for PPO, matching how each enters `total`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct LossReport {
    pub policy: f64,
    pub value: f64,
    pub entropy: f64,
    pub total: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LossGrads {
    pub actor: MlpParams,
    pub critic: MlpParams,
}

#[derive(Clone, Copy)]
enum Objective {
    /// `mean[−log π·A] + c_v·mean[(V−R)²] − c_H·Σ H`
    A2c,
    /// `mean[−min(qA, clip(q)A) + c_v (V−R)² − c_H H]`
    Ppo,
}

/// `−min(q·A, clip(q, 1−C, 1+C)·A)` and its derivative in `q`.
pub fn surrogate_term(ratio: f64, advantage: f64, clip: f64) -> (f64, f64) {
    let surr1 = ratio * advantage;
    let surr2 = ratio.clamp(1.0 - clip, 1.0 + clip) * advantage;
    if surr1 <= surr2 {
        (-surr1, -advantage)
    } else {
        (-surr2, 0.0)
    }
}

/// A2C loss and gradients; `returns` are the discounted returns of `traj`.
/// Advantages are held constant, so the policy term does not reach the
/// critic.
pub fn a2c_loss(
    model: &ActorCritic,
    traj: &Trajectory,
    returns: &[f64],
    hyper: &AgentHyper,
) -> Result<(LossReport, LossGrads)> {
    evaluate(model, traj, returns, hyper, Objective::A2c)
}

/// PPO clipped-surrogate loss and gradients against the `log_prob_old`
/// stored in each transition.
pub fn ppo_loss(
    model: &ActorCritic,
    traj: &Trajectory,
    returns: &[f64],
    hyper: &AgentHyper,
) -> Result<(LossReport, LossGrads)> {
    evaluate(model, traj, returns, hyper, Objective::Ppo)
}

fn evaluate(
    model: &ActorCritic,
    traj: &Trajectory,
    returns: &[f64],
    hyper: &AgentHyper,
    objective: Objective,
) -> Result<(LossReport, LossGrads)> {
    if traj.is_empty() {
        return Err(Error::Empty("trajectory"));
    }
    if returns.len() != traj.len() {
        return Err(Error::DimensionMismatch {
            expected: traj.len(),
            got: returns.len(),
        });
    }
    let n = traj.len() as f64;
    let n_actions = model.actor.output_dim();
    let mut grads = LossGrads {
        actor: model.actor.zeros_like(),
        critic: model.critic.zeros_like(),
    };
    let mut report = LossReport::default();
    let mut d_logits = Vec::with_capacity(n_actions);

    for (tr, &ret) in traj.iter().zip(returns) {
        if tr.action >= n_actions {
            return Err(Error::ActionOutOfRange {
                index: tr.action,
                n_actions,
            });
        }
        let actor_tape = model.actor.forward(&tr.state)?;
        let critic_tape = model.critic.forward(&tr.state)?;
        let log_probs = log_softmax(actor_tape.output());
        let probs: Vec<f64> = log_probs.iter().map(|lp| lp.exp()).collect();
        let entropy: f64 = probs.iter().zip(&log_probs).map(|(p, lp)| -p * lp).sum();
        let value = critic_tape.output()[0];
        let advantage = ret - value;

        // ∂(policy term)/∂log π(a), then through the softmax:
        // ∂log π(a)/∂z_k = δ_ka − π_k.
        let (policy_term, d_log_prob, entropy_weight) = match objective {
            Objective::A2c => (
                -log_probs[tr.action] * advantage / n,
                -advantage / n,
                hyper.entropy_coef,
            ),
            Objective::Ppo => {
                let ratio = (log_probs[tr.action] - tr.log_prob_old).exp();
                let (term, d_ratio) = surrogate_term(ratio, advantage, hyper.clip);
                (term / n, d_ratio * ratio / n, hyper.entropy_coef / n)
            }
        };
        // ∂H/∂z_k = −π_k (log π_k + H)
        d_logits.clear();
        d_logits.extend(probs.iter().zip(&log_probs).enumerate().map(|(k, (p, lp))| {
            let onehot = if k == tr.action { 1.0 } else { 0.0 };
            d_log_prob * (onehot - p) + entropy_weight * p * (lp + entropy)
        }));
        model.actor.backward_into(&actor_tape, &d_logits, &mut grads.actor)?;

        let value_err = value - ret;
        model.critic.backward_into(
            &critic_tape,
            &[2.0 * hyper.value_coef * value_err / n],
            &mut grads.critic,
        )?;

        report.policy += policy_term;
        report.value += value_err * value_err / n;
        report.entropy += match objective {
            Objective::A2c => entropy,
            Objective::Ppo => entropy / n,
        };
    }
    report.total = report.policy + hyper.value_coef * report.value - hyper.entropy_coef * report.entropy;
    Ok((report, grads))
}
