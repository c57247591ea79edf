use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use qas_core::qsim::NoiseSpec;
use qas_core::search::{brute_force_search, replay_circuit, CircuitProgram};
use qas_harness::config::{parse_algorithm, Overrides, RunConfig, TargetSpec};
use qas_harness::experiment::{run_experiment, tail_mean};
use qas_harness::plot::emit_plot;
use qas_harness::{HarnessError, Result};

/// Reinforcement-learning search for quantum state-preparation circuits.
#[derive(Parser)]
#[command(name = "qas", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Train one agent per seed and write CSVs, a summary and a plot.
    Run(RunArgs),
    /// Print a preset configuration as TOML.
    Config {
        #[arg(long, default_value = "bell")]
        preset: String,
    },
    /// Shortest circuit reaching the target, by exhaustive enumeration.
    Search {
        #[arg(long, default_value = "bell")]
        target: String,
        #[arg(long, default_value_t = 3)]
        depth: usize,
        #[arg(long, default_value_t = 0.99)]
        threshold: f64,
    },
    /// Fidelity of a circuit such as "H(0); CNOT(0,1)" applied to |0…0⟩.
    Replay {
        #[arg(long, default_value = "bell")]
        target: String,
        #[arg(long)]
        circuit: String,
        #[arg(long)]
        p_gate: Option<f64>,
        #[arg(long)]
        p_meas: Option<f64>,
    },
    /// Render a summary CSV as an SVG convergence plot.
    Plot {
        #[arg(long)]
        summary: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value = "")]
        title: String,
    },
}

#[derive(Args)]
struct RunArgs {
    /// TOML run configuration.
    #[arg(long, conflicts_with = "preset")]
    config: Option<PathBuf>,
    /// bell or ghz3; used when no --config is given.
    #[arg(long)]
    preset: Option<String>,
    #[arg(long)]
    algo: Option<String>,
    /// bell, ghz3 or a path to an amplitude file.
    #[arg(long)]
    target: Option<String>,
    #[arg(long)]
    episodes: Option<usize>,
    /// Comma-separated seed list.
    #[arg(long, value_delimiter = ',')]
    seeds: Option<Vec<u64>>,
    #[arg(long)]
    threshold: Option<f64>,
    #[arg(long)]
    p_gate: Option<f64>,
    #[arg(long)]
    p_meas: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn config_error(e: impl std::fmt::Display) -> HarnessError {
    HarnessError::Config(e.to_string())
}

fn run(args: RunArgs) -> Result<()> {
    let mut config = match (&args.config, &args.preset) {
        (Some(path), _) => RunConfig::load(path)?,
        (None, preset) => RunConfig::preset(preset.as_deref().unwrap_or("bell"))?,
    };
    config.apply(&Overrides {
        algorithm: args.algo.as_deref().map(parse_algorithm).transpose()?,
        target: args.target.map(|t| t.parse().unwrap()),
        episodes: args.episodes,
        seeds: args.seeds,
        threshold: args.threshold,
        p_gate: args.p_gate,
        p_meas: args.p_meas,
        out_dir: args.out,
    });
    let report = run_experiment(&config)?;
    let window = (config.episodes / 10).max(1);
    for r in &report.runs {
        println!(
            "seed {:>3}: last-{window} mean return {:.4}, fidelity {:.4}; greedy circuit {} (F={:.4})",
            r.seed,
            tail_mean(&r.records, window, |m| m.episode_return),
            tail_mean(&r.records, window, |m| m.fidelity),
            r.circuit,
            r.circuit_fidelity
        );
    }
    if report.summary.len() >= 2 {
        let svg = config.out_dir.join("summary.svg");
        emit_plot(&report.summary_path, &svg, &config.name)?;
        println!("wrote {}", svg.display());
    }
    println!("wrote {}", report.summary_path.display());
    Ok(())
}

fn search(target: &str, depth: usize, threshold: f64) -> Result<()> {
    let state = target.parse::<TargetSpec>().unwrap().resolve()?;
    match brute_force_search(state.n_qubits(), &state, depth, threshold).map_err(config_error)? {
        Some(program) => {
            let report = replay_circuit(&program, &state, None)?;
            println!(
                "{} gates: {}  F={:.12}",
                program.len(),
                program,
                report.noise_free_fidelity
            );
        }
        None => println!("not found within depth {depth}"),
    }
    Ok(())
}

fn replay(target: &str, circuit: &str, p_gate: Option<f64>, p_meas: Option<f64>) -> Result<()> {
    let state = target.parse::<TargetSpec>().unwrap().resolve()?;
    let program: CircuitProgram = circuit.parse().map_err(config_error)?;
    let noise = match (p_gate, p_meas) {
        (None, None) => None,
        (g, m) => Some(NoiseSpec::new(g.unwrap_or(0.0), m.unwrap_or(0.0)).map_err(config_error)?),
    };
    let report = replay_circuit(&program, &state, noise.as_ref()).map_err(config_error)?;
    println!("circuit: {}", report.notation);
    println!("noise-free fidelity: {:.12}", report.noise_free_fidelity);
    if let Some(f) = report.noisy_fidelity {
        println!("noisy fidelity: {f:.12}");
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let result = match cli.command {
        Command::Run(args) => run(args),
        Command::Config { preset } => RunConfig::preset(&preset).map(|c| print!("{}", c.to_toml_string())),
        Command::Search {
            target,
            depth,
            threshold,
        } => search(&target, depth, threshold),
        Command::Replay {
            target,
            circuit,
            p_gate,
            p_meas,
        } => replay(&target, &circuit, p_gate, p_meas),
        Command::Plot { summary, out, title } => emit_plot(&summary, &out, &title),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
