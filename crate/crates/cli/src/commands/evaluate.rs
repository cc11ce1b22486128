use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use clap::Args;
use semantic_coverage::evaluation::{
    delong_scores, rank_cis, AurocEstimate, EstimateCell, EstimateGrid, RankCiConfig,
};
use serde::{Deserialize, Serialize};

use super::Outcome;
use crate::output::{file_digest, fmt_float, write_table};

#[derive(Debug, Args)]
pub struct EvaluateArgs {
    /// CSV with columns query_id, method, score, correct and optional model,
    /// dataset.
    #[arg(long)]
    pub scores: PathBuf,
    #[arg(long, default_value_t = 0.05)]
    pub alpha: f64,
    /// Simulated matches per method pair and (model, dataset) cell.
    #[arg(long, default_value_t = 100)]
    pub matches: u64,
    /// Bradley-Terry regularization; a comma-separated list writes one rank
    /// table per value.
    #[arg(long = "bt-reg", value_delimiter = ',', default_value = "0.1")]
    pub bt_reg: Vec<f64>,
    #[arg(long, env = "SEMCOV_SEED", default_value_t = 0)]
    pub seed: u64,
    /// Bootstrap resamples of the cells for the strength intervals.
    #[arg(long, default_value_t = 2000)]
    pub bootstrap: usize,
    /// Directory receiving auroc.csv and the rank tables.
    #[arg(long)]
    pub output: PathBuf,
    #[arg(long, default_value_t = 6)]
    pub precision: usize,
}

#[derive(Debug, Deserialize)]
struct ScoreLine {
    query_id: String,
    method: String,
    score: f64,
    correct: String,
    #[serde(default)]
    model: Option<String>,
    #[serde(default)]
    dataset: Option<String>,
}

fn parse_bool(s: &str) -> Option<bool> {
    match s.trim().to_ascii_lowercase().as_str() {
        "true" | "1" | "yes" => Some(true),
        "false" | "0" | "no" => Some(false),
        _ => None,
    }
}

#[derive(Default)]
struct Cell {
    model: String,
    dataset: String,
    /// Per method: (incorrect scores, correct scores).
    scores: BTreeMap<usize, (Vec<f64>, Vec<f64>)>,
}

struct Loaded {
    methods: Vec<String>,
    cells: Vec<Cell>,
}

fn load(path: &Path) -> Result<Loaded> {
    let mut reader = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_path(path)
        .with_context(|| format!("opening {}", path.display()))?;
    let mut methods: Vec<String> = Vec::new();
    let mut cells: Vec<Cell> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (i, line) in reader.deserialize::<ScoreLine>().enumerate() {
        let line = line.with_context(|| format!("{}: row {}", path.display(), i + 1))?;
        let Some(correct) = parse_bool(&line.correct) else {
            bail!("query {:?}: unreadable correct value {:?}", line.query_id, line.correct);
        };
        if !line.score.is_finite() {
            bail!("query {:?}: non-finite score for {}", line.query_id, line.method);
        }
        let model = line.model.unwrap_or_default();
        let dataset = line.dataset.unwrap_or_default();
        if !seen.insert((model.clone(), dataset.clone(), line.query_id.clone(), line.method.clone())) {
            bail!("query {:?}: duplicate score for {}", line.query_id, line.method);
        }
        let m = match methods.iter().position(|x| *x == line.method) {
            Some(m) => m,
            None => {
                methods.push(line.method.clone());
                methods.len() - 1
            }
        };
        let c = match cells.iter().position(|c| c.model == model && c.dataset == dataset) {
            Some(c) => c,
            None => {
                cells.push(Cell {
                    model,
                    dataset,
                    ..Cell::default()
                });
                cells.len() - 1
            }
        };
        let entry = cells[c].scores.entry(m).or_default();
        if correct {
            entry.1.push(line.score);
        } else {
            entry.0.push(line.score);
        }
    }
    if methods.is_empty() {
        bail!("{} holds no scores", path.display());
    }
    Ok(Loaded { methods, cells })
}

#[derive(Serialize)]
struct EvaluateConfig<'a> {
    scores_sha256: String,
    alpha: f64,
    matches: u64,
    bt_reg: &'a [f64],
    seed: u64,
    bootstrap: usize,
    precision: usize,
}

pub fn run(args: &EvaluateArgs) -> Result<Outcome> {
    if !(args.alpha > 0.0 && args.alpha < 1.0) {
        bail!("--alpha must lie in (0, 1)");
    }
    if let Some(a) = args.bt_reg.iter().find(|a| !(**a >= 0.0 && a.is_finite())) {
        bail!("--bt-reg values must be finite and non-negative, got {a}");
    }
    if args.matches == 0 {
        bail!("--matches must be >= 1");
    }
    let loaded = load(&args.scores)?;
    let config = EvaluateConfig {
        scores_sha256: file_digest(&args.scores)?,
        alpha: args.alpha,
        matches: args.matches,
        bt_reg: &args.bt_reg,
        seed: args.seed,
        bootstrap: args.bootstrap,
        precision: args.precision,
    };
    let p = args.precision;
    let mut skipped = 0;

    let mut auroc_rows = Vec::new();
    let mut grid_cells = Vec::new();
    for cell in &loaded.cells {
        let mut estimates: Vec<Option<AurocEstimate<f64>>> = vec![None; loaded.methods.len()];
        for (&m, (incorrect, correct)) in &cell.scores {
            match delong_scores(incorrect, correct, args.alpha) {
                Ok(e) => {
                    auroc_rows.push(vec![
                        cell.model.clone(),
                        cell.dataset.clone(),
                        loaded.methods[m].clone(),
                        fmt_float(e.value, p),
                        fmt_float(e.ci_low, p),
                        fmt_float(e.ci_high, p),
                        incorrect.len().to_string(),
                        correct.len().to_string(),
                    ]);
                    estimates[m] = Some(e);
                }
                Err(e) => {
                    skipped += 1;
                    log::warn!(
                        "method {} in cell ({:?}, {:?}) skipped: {e}",
                        loaded.methods[m],
                        cell.model,
                        cell.dataset
                    );
                }
            }
        }
        grid_cells.push((format!("{}/{}", cell.model, cell.dataset), estimates));
    }

    // Methods without an estimate anywhere cannot be ranked.
    let keep: Vec<usize> = (0..loaded.methods.len())
        .filter(|&m| grid_cells.iter().any(|(_, e)| e[m].is_some()))
        .collect();
    if keep.is_empty() {
        bail!("no method has both correct and incorrect answers in any cell");
    }
    let methods: Vec<String> = keep.iter().map(|&m| loaded.methods[m].clone()).collect();
    let cells = grid_cells
        .into_iter()
        .map(|(label, e)| EstimateCell {
            label,
            estimates: keep.iter().map(|&m| e[m]).collect(),
        })
        .collect();
    let grid = EstimateGrid::new(methods, cells)?;

    std::fs::create_dir_all(&args.output).with_context(|| format!("creating {}", args.output.display()))?;
    write_table(
        &args.output.join("auroc.csv"),
        "evaluate",
        &config,
        &["model", "dataset", "method", "auroc", "ci_low", "ci_high", "n_incorrect", "n_correct"],
        &auroc_rows,
    )?;

    for &a in &args.bt_reg {
        let rank_config = RankCiConfig {
            alpha: args.alpha,
            matches: args.matches,
            seed: args.seed,
            regularization: a,
            bootstrap: args.bootstrap,
        };
        let est = match rank_cis(&grid, &rank_config) {
            Ok(est) => est,
            Err(e) => {
                skipped += 1;
                log::warn!("rank table for a={a} skipped: {e}");
                continue;
            }
        };
        let rows: Vec<Vec<String>> = (0..est.methods.len())
            .map(|i| {
                vec![
                    est.methods[i].clone(),
                    fmt_float(est.strengths[i], p),
                    fmt_float(est.strength_ci[i].0, p),
                    fmt_float(est.strength_ci[i].1, p),
                    est.rank_intervals[i].0.to_string(),
                    est.rank_intervals[i].1.to_string(),
                ]
            })
            .collect();
        write_table(
            &args.output.join(format!("ranks_a{a}.csv")),
            "evaluate",
            &config,
            &["method", "strength", "ci_low", "ci_high", "rank_low", "rank_high"],
            &rows,
        )?;
    }
    Ok(Outcome::from_skips(skipped))
}
