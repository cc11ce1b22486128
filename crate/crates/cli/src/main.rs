mod commands;
mod output;
mod records;

use std::process::ExitCode;

use anyhow::Result;
use clap::{Parser, Subcommand};

use commands::{cluster, estimate, evaluate, simulate, Outcome};

/// Small-sample semantic entropy and alphabet-size estimation.
#[derive(Debug, Parser)]
#[command(name = "semcov", version)]
struct Cli {
    /// Worker threads; defaults to one per core.
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Fill `labels` from the entailment classes by bidirectional-entailment clustering.
    Cluster(cluster::ClusterArgs),
    /// Score every record with the chosen uncertainty methods.
    Estimate(estimate::EstimateArgs),
    /// Monte Carlo bias and MSE tables for the entropy estimators.
    Simulate(simulate::SimulateArgs),
    /// AUROC with DeLong intervals, Bradley-Terry strengths and rank intervals.
    Evaluate(evaluate::EvaluateArgs),
}

fn run(cli: &Cli) -> Result<Outcome> {
    if let Some(threads) = cli.threads {
        rayon::ThreadPoolBuilder::new().num_threads(threads).build_global()?;
    }
    match &cli.command {
        Command::Cluster(a) => cluster::run(a),
        Command::Estimate(a) => estimate::run(a),
        Command::Simulate(a) => simulate::run(a),
        Command::Evaluate(a) => evaluate::run(a),
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Complete) => ExitCode::SUCCESS,
        Ok(Outcome::Partial) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
