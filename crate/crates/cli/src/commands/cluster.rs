use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::Args;
use rayon::prelude::*;
use semantic_coverage::bec_cluster;

use super::Outcome;
use crate::records::{read_records, write_records, QueryRecord};

#[derive(Debug, Args)]
pub struct ClusterArgs {
    /// Line-delimited JSON query records with `entail_class` matrices.
    #[arg(long)]
    pub input: PathBuf,
    /// Destination for the records with `labels` filled in.
    #[arg(long)]
    pub output: PathBuf,
}

fn label(record: &QueryRecord) -> Result<QueryRecord> {
    let Some(judgments) = record.categorical() else {
        bail!("query {:?}: entail_class is required for clustering", record.query_id);
    };
    let labeling = judgments
        .and_then(|j| bec_cluster(&j))
        .map_err(|e| anyhow::anyhow!("query {:?}: {e}", record.query_id))?;
    let mut out = record.clone();
    out.labels = Some(labeling.labels().to_vec());
    Ok(out)
}

pub fn run(args: &ClusterArgs) -> Result<Outcome> {
    let records = read_records(&args.input)?;
    let results: Vec<Result<QueryRecord>> = records.par_iter().map(label).collect();
    let mut labeled = Vec::with_capacity(results.len());
    let mut problems = Vec::new();
    for r in results {
        match r {
            Ok(rec) => labeled.push(rec),
            Err(e) => problems.push(e.to_string()),
        }
    }
    if !problems.is_empty() {
        for p in &problems {
            log::error!("{p}");
        }
        bail!("{} of {} records cannot be clustered", problems.len(), records.len());
    }
    write_records(&args.output, &labeled)?;
    Ok(Outcome::Complete)
}
