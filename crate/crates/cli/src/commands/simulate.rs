use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Args, ValueEnum};
use semantic_coverage::simulation::{curve_from_batches, mse_from_batches, run_trials};
use semantic_coverage::{true_entropy, CategoricalDistribution, TrialConfig};
use serde::Serialize;

use super::Outcome;
use crate::output::{fmt_float, write_table};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Population {
    Zipf,
    Uniform,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long, value_enum, default_value = "zipf")]
    pub population: Population,
    /// Number of categories in the population.
    #[arg(long, default_value_t = 20)]
    pub alphabet: usize,
    /// Sample sizes, comma separated.
    #[arg(long = "n", value_delimiter = ',', default_value = "5,10,25,50,75,100")]
    pub sample_sizes: Vec<usize>,
    #[arg(long, default_value_t = 20000)]
    pub trials: usize,
    #[arg(long, env = "SEMCOV_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Flip probability applied to the synthetic entailment judgments.
    #[arg(long, default_value_t = 0.0)]
    pub noise: f64,
    /// Directory receiving curve.csv and mse.csv.
    #[arg(long)]
    pub output: PathBuf,
    #[arg(long, default_value_t = 6)]
    pub precision: usize,
}

#[derive(Serialize)]
struct SimulateConfig<'a> {
    population: Population,
    alphabet: usize,
    sample_sizes: &'a [usize],
    trials: usize,
    seed: u64,
    noise: f64,
    true_entropy: f64,
    precision: usize,
}

pub fn run(args: &SimulateArgs) -> Result<Outcome> {
    let distribution = match args.population {
        Population::Zipf => CategoricalDistribution::<f64>::zipf(args.alphabet)?,
        Population::Uniform => CategoricalDistribution::<f64>::uniform(args.alphabet)?,
    };
    let truth = true_entropy(&distribution);
    let trial_config = TrialConfig {
        distribution,
        sample_sizes: args.sample_sizes.clone(),
        trials: args.trials,
        seed: args.seed,
        noise: args.noise,
    };
    trial_config.validate()?;

    let batches = run_trials(&trial_config)?;
    let p = args.precision;
    let curve: Vec<Vec<String>> = curve_from_batches(&batches, truth)
        .into_iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.method.name().to_string(),
                fmt_float(r.mean_ratio, p),
                fmt_float(r.sem, p),
                r.used.to_string(),
                r.excluded.to_string(),
            ]
        })
        .collect();
    let mse: Vec<Vec<String>> = mse_from_batches(&batches, truth)
        .into_iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                r.method.name().to_string(),
                fmt_float(r.mse, p),
                fmt_float(r.sem, p),
                fmt_float(r.bias, p),
                r.used.to_string(),
                r.excluded.to_string(),
            ]
        })
        .collect();

    let config = SimulateConfig {
        population: args.population,
        alphabet: args.alphabet,
        sample_sizes: &args.sample_sizes,
        trials: args.trials,
        seed: args.seed,
        noise: args.noise,
        true_entropy: truth,
        precision: p,
    };
    std::fs::create_dir_all(&args.output).with_context(|| format!("creating {}", args.output.display()))?;
    write_table(
        &args.output.join("curve.csv"),
        "simulate",
        &config,
        &["n", "method", "mean_ratio", "sem", "used", "excluded"],
        &curve,
    )?;
    write_table(
        &args.output.join("mse.csv"),
        "simulate",
        &config,
        &["n", "method", "mse", "sem", "bias", "used", "excluded"],
        &mse,
    )?;
    Ok(Outcome::Complete)
}
