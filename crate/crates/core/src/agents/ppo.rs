use super::{discounted_returns, ppo_loss, ActorCritic, AgentHyper, LossReport, Optimizers, Trajectory};
use crate::{Error, Result};

/// `K` epochs of full-batch Adam steps on the clipped surrogate loss, then
/// `old ← model` and the buffer is cleared. Returns are computed once, up
/// front; advantages are recomputed from the current critic every epoch.
/// The report is that of the last epoch.
pub fn ppo_update(
    buffer: &mut Trajectory,
    model: &mut ActorCritic,
    old: &mut ActorCritic,
    optim: &mut Optimizers,
    hyper: &AgentHyper,
) -> Result<LossReport> {
    if buffer.len() < hyper.horizon {
        return Err(Error::ShortBuffer {
            expected: hyper.horizon,
            got: buffer.len(),
        });
    }
    if !model.same_shape(old) {
        return Err(Error::DimensionMismatch {
            expected: model.actor.len() + model.critic.len(),
            got: old.actor.len() + old.critic.len(),
        });
    }
    let returns = discounted_returns(&buffer.rewards(), hyper.gamma, &buffer.dones())?;
    let mut report = LossReport::default();
    for _ in 0..hyper.epochs {
        let (epoch_report, grads) = ppo_loss(model, buffer, &returns, hyper)?;
        optim.apply(model, &grads, hyper.learning_rate)?;
        report = epoch_report;
    }
    old.clone_from(model);
    buffer.clear();
    Ok(report)
}
