use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use anyhow::{bail, Result};
use clap::Args;
use rayon::prelude::*;
use semantic_coverage::{
    bec_cluster, chao_shen, eigv_size, good_turing_size, hybrid_entropy, hybrid_from_parts, kle, num_sets,
    plugin_dse, predictive_entropy, snne, tally, tokenize, whitebox_se, AlphabetEstimate, JudgmentMatrix, Labeling,
    SnneConfig,
};
use serde::Serialize;

use super::Outcome;
use crate::output::{file_digest, fmt_float, write_table};
use crate::records::{read_records, QueryRecord};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    Plugin,
    ChaoShen,
    HybridEntropy,
    NumSets,
    GoodTuring,
    Eigv,
    HybridSize,
    Pe,
    Snne,
    Kle,
    WhiteboxSe,
}

impl Method {
    /// The set selected by `--methods all`.
    pub const STANDARD: [Method; 10] = [
        Method::Plugin,
        Method::ChaoShen,
        Method::HybridEntropy,
        Method::NumSets,
        Method::GoodTuring,
        Method::Eigv,
        Method::HybridSize,
        Method::Pe,
        Method::Snne,
        Method::Kle,
    ];

    const EVERY: [Method; 11] = [
        Method::Plugin,
        Method::ChaoShen,
        Method::HybridEntropy,
        Method::NumSets,
        Method::GoodTuring,
        Method::Eigv,
        Method::HybridSize,
        Method::Pe,
        Method::Snne,
        Method::Kle,
        Method::WhiteboxSe,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::Plugin => "plugin",
            Method::ChaoShen => "chao_shen",
            Method::HybridEntropy => "hybrid_entropy",
            Method::NumSets => "num_sets",
            Method::GoodTuring => "good_turing",
            Method::Eigv => "eigv",
            Method::HybridSize => "hybrid_size",
            Method::Pe => "pe",
            Method::Snne => "snne",
            Method::Kle => "kle",
            Method::WhiteboxSe => "whitebox_se",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Method::EVERY
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| format!("unknown method {s:?}"))
    }
}

/// Expands a comma-separated method list; `all` stands for the ten standard
/// methods.
pub fn parse_methods(spec: &str) -> Result<Vec<Method>> {
    let mut out: Vec<Method> = Vec::new();
    for part in spec.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let add: Vec<Method> = if part == "all" {
            Method::STANDARD.to_vec()
        } else {
            vec![part.parse().map_err(anyhow::Error::msg)?]
        };
        for m in add {
            if !out.contains(&m) {
                out.push(m);
            }
        }
    }
    if out.is_empty() {
        bail!("no methods requested");
    }
    Ok(out)
}

#[derive(Debug, Args)]
pub struct EstimateArgs {
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub output: PathBuf,
    /// Comma-separated method names, or `all`.
    #[arg(long, default_value = "all")]
    pub methods: String,
    /// SNNE temperature.
    #[arg(long, default_value_t = 1.0)]
    pub tau: f64,
    /// KLE heat-kernel time.
    #[arg(long, default_value_t = 0.3)]
    pub t: f64,
    /// Leave the `j = i` term out of the SNNE inner sum.
    #[arg(long)]
    pub snne_exclude_self: bool,
    /// Decimal places in the score column.
    #[arg(long, default_value_t = 6)]
    pub precision: usize,
}

#[derive(Serialize)]
struct EstimateConfig<'a> {
    input_sha256: String,
    methods: &'a [Method],
    tau: f64,
    t: f64,
    snne_include_self: bool,
    precision: usize,
}

/// Lazily derived per-record inputs shared between methods.
struct Prepared<'a> {
    record: &'a QueryRecord,
    labeling: Option<std::result::Result<Labeling, String>>,
    probabilistic: Option<std::result::Result<JudgmentMatrix<f64>, String>>,
    eigv: Option<std::result::Result<AlphabetEstimate<f64>, String>>,
}

impl<'a> Prepared<'a> {
    fn new(record: &'a QueryRecord) -> Self {
        Self {
            record,
            labeling: None,
            probabilistic: None,
            eigv: None,
        }
    }

    fn labeling(&mut self) -> std::result::Result<Labeling, String> {
        let record = self.record;
        self.labeling
            .get_or_insert_with(|| {
                if let Some(l) = record.labeling() {
                    return l.map_err(|e| e.to_string());
                }
                match record.categorical() {
                    Some(j) => j.and_then(|j| bec_cluster(&j)).map_err(|e| e.to_string()),
                    None => Err("requires labels or entail_class".into()),
                }
            })
            .clone()
    }

    fn eigv(&mut self) -> std::result::Result<AlphabetEstimate<f64>, String> {
        let record = self.record;
        let judgments = self
            .probabilistic
            .get_or_insert_with(|| match record.probabilistic() {
                Some(j) => j.map_err(|e| e.to_string()),
                None => Err("requires entail_prob".into()),
            })
            .clone();
        self.eigv
            .get_or_insert_with(|| judgments.and_then(|j| eigv_size(&j).map_err(|e| e.to_string())))
            .clone()
    }

    fn hybrid_size(&mut self) -> std::result::Result<AlphabetEstimate<f64>, String> {
        let counts = tally(&self.labeling()?);
        let eigv = self.eigv()?;
        hybrid_from_parts(&counts, &eigv).map_err(|e| e.to_string())
    }

    fn score(&mut self, method: Method, args: &EstimateArgs) -> std::result::Result<f64, String> {
        let err = |e: semantic_coverage::Error| e.to_string();
        match method {
            Method::Plugin => Ok(plugin_dse(&tally(&self.labeling()?)).value),
            Method::ChaoShen => chao_shen(&tally(&self.labeling()?)).map(|s| s.value).map_err(err),
            Method::HybridEntropy => {
                let size = self.hybrid_size()?;
                hybrid_entropy(&tally(&self.labeling()?), &size).map(|s| s.value).map_err(err)
            }
            Method::NumSets => Ok(num_sets::<f64>(&tally(&self.labeling()?)).value),
            Method::GoodTuring => good_turing_size::<f64>(&tally(&self.labeling()?)).map(|s| s.value).map_err(err),
            Method::Eigv => Ok(self.eigv()?.value),
            Method::HybridSize => Ok(self.hybrid_size()?.value),
            Method::Pe => match &self.record.log_probs {
                Some(lp) => predictive_entropy(lp).map(|s| s.value).map_err(err),
                None => Err("requires log_probs".into()),
            },
            Method::Snne => {
                let tokens: Vec<Vec<String>> = self.record.responses.iter().map(|r| tokenize(r)).collect();
                let config = SnneConfig {
                    tau: args.tau,
                    include_self: !args.snne_exclude_self,
                };
                snne(&tokens, config).map(|s| s.value).map_err(err)
            }
            Method::Kle => match self.record.categorical() {
                Some(j) => j.and_then(|j| kle(&j, args.t)).map(|s| s.value).map_err(err),
                None => Err("requires entail_class".into()),
            },
            Method::WhiteboxSe => {
                let labeling = self.labeling()?;
                match &self.record.log_probs {
                    Some(lp) => {
                        let probs: Vec<f64> = lp.iter().map(|v| v.exp()).collect();
                        whitebox_se(&labeling, &probs).map(|s| s.value).map_err(err)
                    }
                    None => Err("requires log_probs".into()),
                }
            }
        }
    }
}

type RecordResult = Vec<(Method, std::result::Result<f64, String>)>;

fn score_record(record: &QueryRecord, methods: &[Method], args: &EstimateArgs) -> RecordResult {
    let mut prepared = Prepared::new(record);
    methods.iter().map(|&m| (m, prepared.score(m, args))).collect()
}

pub fn run(args: &EstimateArgs) -> Result<Outcome> {
    let methods = parse_methods(&args.methods)?;
    if !(args.tau > 0.0 && args.tau.is_finite()) {
        bail!("--tau must be positive");
    }
    if !(args.t > 0.0 && args.t.is_finite()) {
        bail!("--t must be positive");
    }
    let records = read_records(&args.input)?;
    let results: Vec<RecordResult> = records.par_iter().map(|r| score_record(r, &methods, args)).collect();

    let mut rows = Vec::new();
    let mut skipped = 0;
    for (record, result) in records.iter().zip(results) {
        for (method, outcome) in result {
            match outcome {
                Ok(v) => rows.push(vec![record.query_id.clone(), method.to_string(), fmt_float(v, args.precision)]),
                Err(reason) => {
                    skipped += 1;
                    log::warn!("query {:?}: {method} {reason}", record.query_id);
                }
            }
        }
    }
    if rows.is_empty() {
        bail!("no method could be computed for any record");
    }
    let config = EstimateConfig {
        input_sha256: file_digest(&args.input)?,
        methods: &methods,
        tau: args.tau,
        t: args.t,
        snne_include_self: !args.snne_exclude_self,
        precision: args.precision,
    };
    write_table(&args.output, "estimate", &config, &["query_id", "method", "score"], &rows)?;
    Ok(Outcome::from_skips(skipped))
}
