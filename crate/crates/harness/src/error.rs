use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("config: {0}")]
    Config(String),
    #[error("target file {path}: {reason}")]
    TargetFile { path: PathBuf, reason: String },
    #[error("invalid hyperparameters: {0}")]
    Hyper(qas_core::Error),
    #[error("cannot write {path}: {source}")]
    Unwritable {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("cannot read {path}: {source}")]
    Unreadable {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("csv {path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },
    #[error("summary has {0} episodes; a plot needs at least 2")]
    EmptySummary(usize),
    #[error("checkpoint {path}: {reason}")]
    Checkpoint { path: PathBuf, reason: String },
    #[error("seed {seed}: {source}")]
    Seed {
        seed: u64,
        #[source]
        source: qas_core::Error,
    },
    #[error(transparent)]
    Core(#[from] qas_core::Error),
}

impl HarnessError {
    /// 1 for anything wrong with the inputs, 2 for failures while running.
    pub fn exit_code(&self) -> i32 {
        match self {
            HarnessError::Config(_) | HarnessError::TargetFile { .. } | HarnessError::Hyper(_) => 1,
            _ => 2,
        }
    }
}

pub type Result<T, E = HarnessError> = std::result::Result<T, E>;
