//! Sampled responses, their semantic labels, and per-category tallies.

use std::collections::HashMap;
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// The `n` responses drawn for one query.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ResponseSet<T> {
    pub query_id: String,
    pub responses: Vec<String>,
    /// Natural-log sequence probabilities, one per response.
    pub log_probs: Option<Vec<T>>,
    /// Correctness of the best-guess response.
    pub correct: Option<bool>,
}

impl<T: Scalar> ResponseSet<T> {
    pub fn new(
        query_id: impl Into<String>,
        responses: Vec<String>,
        log_probs: Option<Vec<T>>,
        correct: Option<bool>,
    ) -> Result<Self> {
        if responses.is_empty() {
            return Err(Error::EmptySample);
        }
        if let Some(lp) = &log_probs {
            if lp.len() != responses.len() {
                return Err(Error::DimensionMismatch {
                    expected: responses.len(),
                    found: lp.len(),
                });
            }
            if lp.iter().any(|v| !v.is_finite()) {
                return Err(Error::NonFinite("log_probs"));
            }
        }
        Ok(Self {
            query_id: query_id.into(),
            responses,
            log_probs,
            correct,
        })
    }

    pub fn len(&self) -> usize {
        self.responses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.responses.is_empty()
    }
}

/// Assignment of `n` responses to semantic categories.
///
/// Identifiers are canonicalized by order of first appearance, so the first
/// response is always in category 0 and the categories are `0..k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Labeling {
    labels: Vec<usize>,
    k: usize,
}

impl Labeling {
    pub fn new<I: IntoIterator<Item = usize>>(raw: I) -> Result<Self> {
        Self::from_symbols(raw)
    }

    /// Builds a labeling from arbitrary category symbols.
    pub fn from_symbols<S, I>(raw: I) -> Result<Self>
    where
        S: Eq + Hash,
        I: IntoIterator<Item = S>,
    {
        let mut seen: HashMap<S, usize> = HashMap::new();
        let labels: Vec<usize> = raw
            .into_iter()
            .map(|s| {
                let next = seen.len();
                *seen.entry(s).or_insert(next)
            })
            .collect();
        if labels.is_empty() {
            return Err(Error::EmptySample);
        }
        Ok(Self {
            k: seen.len(),
            labels,
        })
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn k(&self) -> usize {
        self.k
    }
}

impl TryFrom<Vec<usize>> for Labeling {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Labeling> for Vec<usize> {
    fn from(l: Labeling) -> Self {
        l.labels
    }
}

/// Occurrence counts per observed category.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryCounts {
    counts: Vec<usize>,
    n: usize,
    f1: usize,
}

impl CategoryCounts {
    /// Builds counts directly. Every count must be at least one.
    pub fn from_counts(counts: Vec<usize>) -> Result<Self> {
        if counts.is_empty() {
            return Err(Error::EmptySample);
        }
        if counts.contains(&0) {
            return Err(Error::InvalidConfig("category counts must be >= 1".into()));
        }
        let n = counts.iter().sum();
        let f1 = counts.iter().filter(|&&c| c == 1).count();
        Ok(Self { counts, n, f1 })
    }

    /// Per-category counts in canonical category order.
    pub fn counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.counts.len()
    }

    /// Number of singleton categories.
    pub fn f1(&self) -> usize {
        self.f1
    }

    pub fn frequencies<T: Scalar>(&self) -> Vec<T> {
        let n = T::from_count(self.n);
        self.counts.iter().map(|&c| T::from_count(c) / n).collect()
    }

    pub fn all_singletons(&self) -> bool {
        self.f1 == self.n
    }
}

pub fn tally(labeling: &Labeling) -> CategoryCounts {
    let mut counts = vec![0usize; labeling.k()];
    for &l in labeling.labels() {
        counts[l] += 1;
    }
    // canonical labels guarantee every category is non-empty
    CategoryCounts::from_counts(counts).expect("canonical labeling has no empty categories")
}
