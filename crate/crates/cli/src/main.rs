mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand};

use config::{CommandName, RunConfig};

const MAX_QUBITS_ENV: &str = "GROVER_SUPPRESS_MAX_QUBITS";

/// Statevector experiments with Grover search and amplitude suppression.
#[derive(Parser, Debug)]
#[command(name = "qsuppress", version)]
struct Cli {
    /// JSON file with the same keys as the flags; flags override it.
    #[arg(long, global = true)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Classical Grover search for a set of target states.
    Grover(GroverArgs),
    /// Amplitude-suppression search away from an undesired set.
    Suppress(SuppressArgs),
    /// Oracle gate-count growth over a range of register sizes.
    DepthSweep(DepthArgs),
    /// QAOA on a TSP instance from a uniform and a suppressed start.
    QaoaCompare(QaoaArgs),
}

#[derive(Args, Debug)]
struct Common {
    #[arg(long)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct GroverArgs {
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated labels, qubit 0 rightmost.
    #[arg(long)]
    targets: Option<String>,
    /// Iterations; defaults to the optimal count.
    #[arg(long)]
    k: Option<usize>,
    /// 0 skips sampling.
    #[arg(long)]
    shots: Option<u64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct SuppressArgs {
    #[arg(long)]
    n: Option<usize>,
    /// Comma-separated undesired labels.
    #[arg(long)]
    undesired: Option<String>,
    /// Iterations; defaults to the best point of the sweep.
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    shots: Option<u64>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct DepthArgs {
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    #[command(flatten)]
    common: Common,
}

#[derive(Args, Debug)]
struct QaoaArgs {
    /// TSP instance JSON; the bundled 3-city instance when omitted.
    #[arg(long)]
    instance: Option<PathBuf>,
    /// QAOA layers.
    #[arg(long)]
    p: Option<usize>,
    /// Objective evaluations per arm.
    #[arg(long)]
    budget: Option<usize>,
    #[arg(long)]
    penalty: Option<f64>,
    /// Fixes the suppression iterations instead of sweeping.
    #[arg(long)]
    grover_iterations: Option<usize>,
    #[command(flatten)]
    common: Common,
}

/// Bad or missing arguments; exits like a clap usage error.
#[derive(Debug)]
pub struct UsageError(pub String);

impl std::fmt::Display for UsageError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

impl Command {
    fn into_flags(self) -> RunConfig {
        let with_common = |c: Common, cfg: RunConfig| RunConfig { seed: c.seed, out: c.out, ..cfg };
        match self {
            Command::Grover(a) => with_common(
                a.common,
                RunConfig {
                    command: Some(CommandName::Grover),
                    n: a.n,
                    targets: a.targets,
                    k: a.k,
                    shots: a.shots,
                    ..Default::default()
                },
            ),
            Command::Suppress(a) => with_common(
                a.common,
                RunConfig {
                    command: Some(CommandName::Suppress),
                    n: a.n,
                    undesired: a.undesired,
                    k: a.k,
                    shots: a.shots,
                    ..Default::default()
                },
            ),
            Command::DepthSweep(a) => with_common(
                a.common,
                RunConfig { command: Some(CommandName::DepthSweep), n_min: a.n_min, n_max: a.n_max, ..Default::default() },
            ),
            Command::QaoaCompare(a) => with_common(
                a.common,
                RunConfig {
                    command: Some(CommandName::QaoaCompare),
                    instance: a.instance,
                    p: a.p,
                    budget: a.budget,
                    penalty: a.penalty,
                    grover_iterations: a.grover_iterations,
                    ..Default::default()
                },
            ),
        }
    }
}

fn apply_qubit_ceiling() -> anyhow::Result<()> {
    if let Ok(raw) = std::env::var(MAX_QUBITS_ENV) {
        let limit: usize = raw.trim().parse().with_context(|| format!("{MAX_QUBITS_ENV}={raw:?} is not a count"))?;
        qsuppress::state::set_max_qubits(limit)?;
    }
    Ok(())
}

fn run(cli: Cli) -> anyhow::Result<()> {
    apply_qubit_ceiling()?;
    let file = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    let flags = cli.command.map(Command::into_flags).unwrap_or_default();
    let cfg = file.overlay(flags)?;
    let report = match cfg.command {
        Some(CommandName::Grover) => commands::grover(&cfg)?,
        Some(CommandName::Suppress) => commands::suppress(&cfg)?,
        Some(CommandName::DepthSweep) => commands::depth_sweep(&cfg)?,
        Some(CommandName::QaoaCompare) => commands::qaoa_compare(&cfg)?,
        None => return Err(UsageError("no subcommand given on the command line or in --config".into()).into()),
    };
    for line in &report.lines {
        println!("{line}");
    }
    let mut outputs = report.outputs;
    let mut resolved = cfg.to_json();
    resolved.push('\n');
    outputs.add(cfg.out_dir().join("config.json"), resolved);
    for path in outputs.commit()? {
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<UsageError>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::FAILURE
            }
        }
    }
}
