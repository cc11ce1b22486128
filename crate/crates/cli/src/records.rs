//! Line-delimited JSON query records.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use anyhow::{bail, Context, Result};
use semantic_coverage::{EntailmentClass, JudgmentMatrix, Labeling};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryRecord {
    pub query_id: String,
    pub responses: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub log_probs: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entail_prob: Option<Vec<Vec<f64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub entail_class: Option<Vec<Vec<EntailmentClass>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub correct: Option<bool>,
}

fn check_square<E>(id: &str, field: &str, m: &[Vec<E>], n: usize) -> Result<()> {
    if m.len() != n {
        bail!("query {id:?}: {field} has {} rows, expected {n}", m.len());
    }
    if let Some((i, row)) = m.iter().enumerate().find(|(_, r)| r.len() != n) {
        bail!("query {id:?}: {field} row {i} has {} entries, expected {n}", row.len());
    }
    Ok(())
}

impl QueryRecord {
    pub fn n(&self) -> usize {
        self.responses.len()
    }

    /// Dimension and value checks, run before any computation.
    pub fn validate(&self) -> Result<()> {
        let id = &self.query_id;
        let n = self.n();
        if n == 0 {
            bail!("query {id:?}: no responses");
        }
        if let Some(l) = &self.labels {
            if l.len() != n {
                bail!("query {id:?}: {} labels for {n} responses", l.len());
            }
        }
        if let Some(lp) = &self.log_probs {
            if lp.len() != n {
                bail!("query {id:?}: {} log_probs for {n} responses", lp.len());
            }
            if lp.iter().any(|v| !v.is_finite()) {
                bail!("query {id:?}: non-finite log_probs");
            }
        }
        if let Some(m) = &self.entail_prob {
            check_square(id, "entail_prob", m, n)?;
            if m.iter().flatten().any(|v| !(0.0..=1.0).contains(v)) {
                bail!("query {id:?}: entail_prob entries must lie in [0, 1]");
            }
        }
        if let Some(m) = &self.entail_class {
            check_square(id, "entail_class", m, n)?;
        }
        Ok(())
    }

    pub fn probabilistic(&self) -> Option<semantic_coverage::Result<JudgmentMatrix<f64>>> {
        self.entail_prob.clone().map(JudgmentMatrix::probabilistic)
    }

    pub fn categorical(&self) -> Option<semantic_coverage::Result<JudgmentMatrix<f64>>> {
        self.entail_class.clone().map(JudgmentMatrix::categorical)
    }

    pub fn labeling(&self) -> Option<semantic_coverage::Result<Labeling>> {
        self.labels.clone().map(Labeling::new)
    }
}

/// Reads and validates every record; the first invalid record aborts.
pub fn read_records(path: &Path) -> Result<Vec<QueryRecord>> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let mut out = Vec::new();
    for (lineno, line) in BufReader::new(file).lines().enumerate() {
        let line = line.with_context(|| format!("reading {}", path.display()))?;
        if line.trim().is_empty() {
            continue;
        }
        let rec: QueryRecord = serde_json::from_str(&line)
            .with_context(|| format!("{}:{}: malformed record", path.display(), lineno + 1))?;
        rec.validate()?;
        out.push(rec);
    }
    Ok(out)
}

pub fn write_records(path: &Path, records: &[QueryRecord]) -> Result<()> {
    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
    let mut w = BufWriter::new(file);
    for r in records {
        serde_json::to_writer(&mut w, r)?;
        w.write_all(b"\n")?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(json: &str) -> QueryRecord {
        serde_json::from_str(json).unwrap()
    }

    #[test]
    fn validation_names_the_query() {
        let r = record(r#"{"query_id":"q7","responses":["a","b"],"entail_prob":[[1,0.5],[0.5]]}"#);
        let err = r.validate().unwrap_err().to_string();
        assert!(err.contains("q7") && err.contains("entail_prob"), "{err}");

        let r = record(r#"{"query_id":"q8","responses":["a","b"],"labels":[0]}"#);
        assert!(r.validate().unwrap_err().to_string().contains("q8"));
    }

    #[test]
    fn optional_fields_round_trip() {
        let line = r#"{"query_id":"q","responses":["a"],"entail_class":[["entailment"]],"correct":true}"#;
        let r = record(line);
        r.validate().unwrap();
        assert_eq!(serde_json::to_string(&r).unwrap(), line);
    }
}
