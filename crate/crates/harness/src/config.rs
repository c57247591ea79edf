//! Run configuration as TOML, presets, and command-line overrides.
//!
//! ```toml
//! name = "bell-ppo"
//! episodes = 5000
//! seeds = [0, 1, 2, 3, 4]
//! out_dir = "runs/bell-ppo"
//!
//! [env]
//! target = "bell"        # "bell", "ghz3" or a path to an amplitude file
//! threshold = 0.99
//! max_steps = 20
//!
//! [noise]
//! p_gate = 0.0
//! p_meas = 0.0
//!
//! [agent]
//! algorithm = "ppo"      # unset hyperparameters take this algorithm's defaults
//! learning_rate = 0.002
//! ```

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use qas_core::agents::{AgentHyper, Algorithm};
use qas_core::env::{EnvConfig, DEFAULT_MAX_STEPS, DEFAULT_THRESHOLD};
use qas_core::qsim::{NoiseSpec, PureState};
use serde::{Deserialize, Serialize};

use crate::target::load_target;
use crate::{HarnessError, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TargetSpec {
    Bell,
    Ghz3,
    File(PathBuf),
}

impl TargetSpec {
    pub fn resolve(&self) -> Result<PureState> {
        match self {
            TargetSpec::Bell => Ok(PureState::bell()),
            TargetSpec::Ghz3 => Ok(PureState::ghz(3)),
            TargetSpec::File(path) => load_target(path),
        }
    }
}

impl FromStr for TargetSpec {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s {
            "bell" => TargetSpec::Bell,
            "ghz3" => TargetSpec::Ghz3,
            path => TargetSpec::File(PathBuf::from(path)),
        })
    }
}

impl fmt::Display for TargetSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TargetSpec::Bell => f.write_str("bell"),
            TargetSpec::Ghz3 => f.write_str("ghz3"),
            TargetSpec::File(path) => write!(f, "{}", path.display()),
        }
    }
}

impl Serialize for TargetSpec {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for TargetSpec {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        Ok(s.parse().unwrap())
    }
}

pub fn parse_algorithm(s: &str) -> Result<Algorithm> {
    match s.to_ascii_lowercase().as_str() {
        "a2c" => Ok(Algorithm::A2c),
        "ppo" => Ok(Algorithm::Ppo),
        other => Err(HarnessError::Config(format!(
            "unknown algorithm {other:?}; expected a2c or ppo"
        ))),
    }
}

mod algorithm_serde {
    use super::*;

    pub fn serialize<S: serde::Serializer>(a: &Algorithm, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(a.name())
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Algorithm, D::Error> {
        let s = String::deserialize(d)?;
        parse_algorithm(&s).map_err(serde::de::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EnvSection {
    pub target: TargetSpec,
    /// Checked against the target when given.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n_qubits: Option<usize>,
    #[serde(default = "default_threshold")]
    pub threshold: f64,
    #[serde(default = "default_max_steps")]
    pub max_steps: usize,
}

fn default_threshold() -> f64 {
    DEFAULT_THRESHOLD
}

fn default_max_steps() -> usize {
    DEFAULT_MAX_STEPS
}

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct NoiseSection {
    pub p_gate: f64,
    pub p_meas: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AgentSection {
    #[serde(with = "algorithm_serde")]
    pub algorithm: Algorithm,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub learning_rate: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub clip: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epochs: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub horizon: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub value_coef: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entropy_coef: Option<f64>,
}

impl AgentSection {
    pub fn defaults(algorithm: Algorithm) -> Self {
        Self {
            algorithm,
            gamma: None,
            learning_rate: None,
            clip: None,
            epochs: None,
            horizon: None,
            value_coef: None,
            entropy_coef: None,
        }
    }

    pub fn hyper(&self) -> AgentHyper {
        let d = AgentHyper::defaults_for(self.algorithm);
        AgentHyper {
            gamma: self.gamma.unwrap_or(d.gamma),
            learning_rate: self.learning_rate.unwrap_or(d.learning_rate),
            clip: self.clip.unwrap_or(d.clip),
            epochs: self.epochs.unwrap_or(d.epochs),
            horizon: self.horizon.unwrap_or(d.horizon),
            value_coef: self.value_coef.unwrap_or(d.value_coef),
            entropy_coef: self.entropy_coef.unwrap_or(d.entropy_coef),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub name: String,
    pub episodes: usize,
    pub seeds: Vec<u64>,
    pub out_dir: PathBuf,
    pub env: EnvSection,
    #[serde(default)]
    pub noise: NoiseSection,
    pub agent: AgentSection,
}

/// Values given on the command line; each replaces the file's value.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Overrides {
    pub algorithm: Option<Algorithm>,
    pub target: Option<TargetSpec>,
    pub episodes: Option<usize>,
    pub seeds: Option<Vec<u64>>,
    pub threshold: Option<f64>,
    pub p_gate: Option<f64>,
    pub p_meas: Option<f64>,
    pub out_dir: Option<PathBuf>,
}

pub const DEFAULT_SEEDS: [u64; 5] = [0, 1, 2, 3, 4];

impl RunConfig {
    /// `bell` (5000 episodes) or `ghz3` (10000 episodes), PPO, five seeds.
    pub fn preset(name: &str) -> Result<Self> {
        let (target, episodes) = match name {
            "bell" => (TargetSpec::Bell, 5000),
            "ghz3" => (TargetSpec::Ghz3, 10000),
            other => {
                return Err(HarnessError::Config(format!(
                    "unknown preset {other:?}; expected bell or ghz3"
                )))
            }
        };
        Ok(Self {
            name: format!("{name}-ppo"),
            episodes,
            seeds: DEFAULT_SEEDS.to_vec(),
            out_dir: PathBuf::from("runs").join(format!("{name}-ppo")),
            env: EnvSection {
                target,
                n_qubits: None,
                threshold: DEFAULT_THRESHOLD,
                max_steps: DEFAULT_MAX_STEPS,
            },
            noise: NoiseSection::default(),
            agent: AgentSection::defaults(Algorithm::Ppo),
        })
    }

    pub fn from_toml_str(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| HarnessError::Config(e.to_string()))
    }

    pub fn to_toml_string(&self) -> String {
        toml::to_string(self).expect("config always serializes")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path)
            .map_err(|e| HarnessError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn apply(&mut self, o: &Overrides) {
        if let Some(a) = o.algorithm {
            self.agent.algorithm = a;
        }
        if let Some(t) = &o.target {
            self.env.target = t.clone();
            self.env.n_qubits = None;
        }
        if let Some(m) = o.episodes {
            self.episodes = m;
        }
        if let Some(s) = &o.seeds {
            self.seeds = s.clone();
        }
        if let Some(t) = o.threshold {
            self.env.threshold = t;
        }
        if let Some(p) = o.p_gate {
            self.noise.p_gate = p;
        }
        if let Some(p) = o.p_meas {
            self.noise.p_meas = p;
        }
        if let Some(out) = &o.out_dir {
            self.out_dir = out.clone();
        }
    }

    pub fn hyper(&self) -> AgentHyper {
        self.agent.hyper()
    }

    /// Checks everything that can be checked before training and returns
    /// the resolved target.
    pub fn validate(&self) -> Result<PureState> {
        if self.episodes == 0 {
            return Err(HarnessError::Config("episodes must be at least 1".into()));
        }
        if self.seeds.is_empty() {
            return Err(HarnessError::Config("seed list is empty".into()));
        }
        let mut sorted = self.seeds.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(HarnessError::Config("seed list has duplicates".into()));
        }
        self.hyper().validate().map_err(HarnessError::Hyper)?;
        let target = self.env.target.resolve()?;
        if let Some(n) = self.env.n_qubits {
            if n != target.n_qubits() {
                return Err(HarnessError::Config(format!(
                    "n_qubits = {n} but the target has {} qubits",
                    target.n_qubits()
                )));
            }
        }
        self.env_config(&target, 0)
            .validate()
            .map_err(|e| HarnessError::Config(e.to_string()))?;
        Ok(target)
    }

    pub fn env_config(&self, target: &PureState, seed: u64) -> EnvConfig {
        let mut cfg = EnvConfig::new(target.clone())
            .with_threshold(self.env.threshold)
            .with_max_steps(self.env.max_steps)
            .with_noise(NoiseSpec {
                p_gate: self.noise.p_gate,
                p_meas: self.noise.p_meas,
            });
        cfg.seed = seed;
        cfg
    }
}
