//! Actor-critic checkpoints: the actor's text block followed by the critic's.

use std::fs;
use std::path::Path;

use qas_core::agents::ActorCritic;
use qas_core::nn::MlpParams;

use crate::{HarnessError, Result};

pub fn model_to_text(model: &ActorCritic) -> String {
    model.actor.to_text() + &model.critic.to_text()
}

pub fn model_from_text(text: &str) -> std::result::Result<ActorCritic, String> {
    let starts: Vec<usize> = text
        .match_indices("mlp ")
        .map(|(i, _)| i)
        .filter(|&i| i == 0 || text.as_bytes()[i - 1] == b'\n')
        .collect();
    let [a, c] = starts[..] else {
        return Err(format!("expected 2 network blocks, found {}", starts.len()));
    };
    let actor = MlpParams::from_text(&text[a..c]).map_err(|e| format!("actor: {e}"))?;
    let critic = MlpParams::from_text(&text[c..]).map_err(|e| format!("critic: {e}"))?;
    if critic.output_dim() != 1 || critic.input_dim() != actor.input_dim() {
        return Err("critic shape does not match the actor".into());
    }
    Ok(ActorCritic { actor, critic })
}

pub fn save_model(path: &Path, model: &ActorCritic) -> Result<()> {
    fs::write(path, model_to_text(model)).map_err(|source| HarnessError::Unwritable {
        path: path.to_owned(),
        source,
    })
}

pub fn load_model(path: &Path) -> Result<ActorCritic> {
    let text = fs::read_to_string(path).map_err(|source| HarnessError::Unreadable {
        path: path.to_owned(),
        source,
    })?;
    model_from_text(&text).map_err(|reason| HarnessError::Checkpoint {
        path: path.to_owned(),
        reason,
    })
}
