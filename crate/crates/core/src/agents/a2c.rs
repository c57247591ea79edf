use super::{a2c_loss, discounted_returns, ActorCritic, AgentHyper, LossReport, Optimizers, Trajectory};
use crate::{Error, Result};

/// One Adam step on the A2C loss of a finished episode.
pub fn a2c_update(
    traj: &Trajectory,
    model: &mut ActorCritic,
    optim: &mut Optimizers,
    hyper: &AgentHyper,
) -> Result<LossReport> {
    if traj.is_empty() {
        return Err(Error::Empty("trajectory"));
    }
    let returns = discounted_returns(&traj.rewards(), hyper.gamma, &traj.dones())?;
    let (report, grads) = a2c_loss(model, traj, &returns, hyper)?;
    optim.apply(model, &grads, hyper.learning_rate)?;
    Ok(report)
}
