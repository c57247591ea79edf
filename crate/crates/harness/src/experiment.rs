//! Seeded training runs and their CSV output.
//!
//! Seeds train on their own threads and each writes only its own files:
//! `seed_<s>.csv`, `seed_<s>.model`. The across-seed `summary.csv` and
//! `circuits.txt` are written afterwards from the collected results.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::thread;

use qas_core::agents::{greedy_actions, ActorCritic, Trainer};
use qas_core::env::QasEnv;
use qas_core::qsim::PureState;
use qas_core::search::{CircuitProgram, Provenance};
use serde::{Deserialize, Serialize};

use crate::checkpoint::save_model;
use crate::config::RunConfig;
use crate::{HarnessError, Result};

/// One row of a per-seed CSV: `seed,episode,return,fidelity,length`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricRecord {
    pub seed: u64,
    pub episode: usize,
    #[serde(rename = "return")]
    pub episode_return: f64,
    pub fidelity: f64,
    pub length: usize,
}

/// Across-seed statistics of one episode. Standard deviations are
/// population values, so a single seed gives 0.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SummaryRow {
    pub episode: usize,
    pub mean_return: f64,
    pub std_return: f64,
    pub mean_fidelity: f64,
    pub std_fidelity: f64,
}

#[derive(Debug, Clone)]
pub struct SeedRun {
    pub seed: u64,
    pub records: Vec<MetricRecord>,
    pub model: ActorCritic,
    /// Argmax rollout of the trained actor.
    pub circuit: CircuitProgram,
    /// Final fidelity of that rollout in the training environment.
    pub circuit_fidelity: f64,
}

#[derive(Debug, Clone)]
pub struct ExperimentReport {
    pub runs: Vec<SeedRun>,
    pub summary: Vec<SummaryRow>,
    pub summary_path: PathBuf,
}

pub fn train_seed(config: &RunConfig, target: &PureState, seed: u64) -> Result<SeedRun> {
    let wrap = |source| HarnessError::Seed { seed, source };
    let env = QasEnv::new(config.env_config(target, seed)).map_err(wrap)?;
    let mut trainer = Trainer::new(env, config.agent.algorithm, config.hyper(), seed).map_err(wrap)?;
    let records = trainer
        .train(config.episodes)
        .map_err(wrap)?
        .into_iter()
        .map(|r| MetricRecord {
            seed,
            episode: r.episode,
            episode_return: r.episode_return,
            fidelity: r.final_fidelity,
            length: r.length,
        })
        .collect();
    let model = trainer.model().clone();
    let (actions, circuit_fidelity) = greedy_actions(&model, trainer.env_mut()).map_err(wrap)?;
    let circuit =
        CircuitProgram::from_action_indices(trainer.env().action_set(), &actions, Provenance::Agent).map_err(wrap)?;
    Ok(SeedRun {
        seed,
        records,
        model,
        circuit,
        circuit_fidelity,
    })
}

pub fn seed_csv_path(out_dir: &Path, seed: u64) -> PathBuf {
    out_dir.join(format!("seed_{seed}.csv"))
}

pub fn run_experiment(config: &RunConfig) -> Result<ExperimentReport> {
    let target = config.validate()?;
    let out = &config.out_dir;
    fs::create_dir_all(out).map_err(|source| HarnessError::Unwritable {
        path: out.clone(),
        source,
    })?;

    let results: Vec<Result<SeedRun>> = thread::scope(|s| {
        let handles: Vec<_> = config
            .seeds
            .iter()
            .map(|&seed| {
                let target = &target;
                s.spawn(move || {
                    let run = train_seed(config, target, seed)?;
                    write_metrics(&seed_csv_path(out, seed), &run.records)?;
                    save_model(&out.join(format!("seed_{seed}.model")), &run.model)?;
                    Ok(run)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("seed thread panicked"))
            .collect()
    });
    let runs = results.into_iter().collect::<Result<Vec<_>>>()?;

    let summary = summarize(&runs);
    let summary_path = out.join("summary.csv");
    write_summary(&summary_path, &summary)?;
    let mut circuits = String::new();
    for run in &runs {
        writeln!(
            circuits,
            "seed {}: {}  F={:.6}",
            run.seed, run.circuit, run.circuit_fidelity
        )
        .unwrap();
    }
    let circuits_path = out.join("circuits.txt");
    fs::write(&circuits_path, circuits).map_err(|source| HarnessError::Unwritable {
        path: circuits_path,
        source,
    })?;
    Ok(ExperimentReport {
        runs,
        summary,
        summary_path,
    })
}

fn mean_std(values: impl Iterator<Item = f64> + Clone) -> (f64, f64) {
    let n = values.clone().count() as f64;
    let mean = values.clone().sum::<f64>() / n;
    let var = values.map(|v| (v - mean).powi(2)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Per-episode mean and standard deviation across seeds, over the episodes
/// every seed has.
pub fn summarize(runs: &[SeedRun]) -> Vec<SummaryRow> {
    let len = runs.iter().map(|r| r.records.len()).min().unwrap_or(0);
    (0..len)
        .map(|e| {
            let (mean_return, std_return) = mean_std(runs.iter().map(|r| r.records[e].episode_return));
            let (mean_fidelity, std_fidelity) = mean_std(runs.iter().map(|r| r.records[e].fidelity));
            SummaryRow {
                episode: e,
                mean_return,
                std_return,
                mean_fidelity,
                std_fidelity,
            }
        })
        .collect()
}

fn write_rows<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let csv_err = |source| HarnessError::Csv {
        path: path.to_owned(),
        source,
    };
    let file = fs::File::create(path).map_err(|source| HarnessError::Unwritable {
        path: path.to_owned(),
        source,
    })?;
    let mut w = csv::Writer::from_writer(file);
    for row in rows {
        w.serialize(row).map_err(csv_err)?;
    }
    w.flush().map_err(|source| HarnessError::Unwritable {
        path: path.to_owned(),
        source,
    })
}

fn read_rows<T: serde::de::DeserializeOwned>(path: &Path) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_path(path).map_err(|source| HarnessError::Csv {
        path: path.to_owned(),
        source,
    })?;
    r.deserialize()
        .collect::<std::result::Result<Vec<T>, _>>()
        .map_err(|source| HarnessError::Csv {
            path: path.to_owned(),
            source,
        })
}

pub fn write_metrics(path: &Path, records: &[MetricRecord]) -> Result<()> {
    write_rows(path, records)
}

pub fn read_metrics(path: &Path) -> Result<Vec<MetricRecord>> {
    read_rows(path)
}

pub fn write_summary(path: &Path, rows: &[SummaryRow]) -> Result<()> {
    write_rows(path, rows)
}

pub fn read_summary(path: &Path) -> Result<Vec<SummaryRow>> {
    read_rows(path)
}

/// Mean of `field` over the last `window` records (all of them if fewer).
pub fn tail_mean(records: &[MetricRecord], window: usize, field: impl Fn(&MetricRecord) -> f64) -> f64 {
    let tail = &records[records.len().saturating_sub(window)..];
    tail.iter().map(field).sum::<f64>() / tail.len() as f64
}

/// First episode whose return exceeds `level`.
pub fn first_episode_above(records: &[MetricRecord], level: f64) -> Option<usize> {
    records.iter().find(|r| r.episode_return > level).map(|r| r.episode)
}
