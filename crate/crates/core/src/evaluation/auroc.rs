use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::error::{Error, Result};
use crate::scalar::{neumaier_sum, Scalar};

/// One uncertainty score with the correctness of the corresponding answer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreRow<T> {
    pub query_id: String,
    pub method: String,
    pub score: T,
    pub correct: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScoreTable<T> {
    pub rows: Vec<ScoreRow<T>>,
}

impl<T: Scalar> ScoreTable<T> {
    pub fn new(rows: Vec<ScoreRow<T>>) -> Result<Self> {
        if rows.iter().any(|r| !r.score.is_finite()) {
            return Err(Error::NonFinite("score"));
        }
        let mut keys: Vec<(&str, &str)> = rows.iter().map(|r| (r.query_id.as_str(), r.method.as_str())).collect();
        keys.sort_unstable();
        if let Some(w) = keys.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::InvalidConfig(format!(
                "duplicate score for query {:?}, method {:?}",
                w[0].0, w[0].1
            )));
        }
        Ok(Self { rows })
    }

    /// Methods in order of first appearance.
    pub fn methods(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for r in &self.rows {
            if !out.contains(&r.method) {
                out.push(r.method.clone());
            }
        }
        out
    }

    /// Scores of incorrect and correct answers for one method.
    pub fn split(&self, method: &str) -> (Vec<T>, Vec<T>) {
        let mut incorrect = Vec::new();
        let mut correct = Vec::new();
        for r in self.rows.iter().filter(|r| r.method == method) {
            if r.correct {
                correct.push(r.score);
            } else {
                incorrect.push(r.score);
            }
        }
        (incorrect, correct)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AurocEstimate<T> {
    pub value: T,
    pub ci_low: T,
    pub ci_high: T,
    pub alpha: T,
}

impl<T: Scalar> AurocEstimate<T> {
    /// Standard deviation of the normal approximation implied by the interval.
    pub fn sigma(&self) -> T {
        let z = normal_quantile::<T>(T::one() - self.alpha / T::lit(2.0));
        (self.ci_high - self.ci_low) / (T::lit(2.0) * z)
    }
}

/// Standard normal quantile.
pub fn normal_quantile<T: Scalar>(p: T) -> T {
    let n = Normal::standard();
    T::lit(n.inverse_cdf(p.as_f64()))
}

/// Probability that a random incorrect answer scores higher than a random
/// correct one, ties counting one half.
pub fn auroc_scores<T: Scalar>(incorrect: &[T], correct: &[T]) -> Result<T> {
    if incorrect.is_empty() || correct.is_empty() {
        return Err(Error::SingleClass);
    }
    let pooled = midranks(&[incorrect, correct].concat());
    let rank_sum = neumaier_sum(pooled[..incorrect.len()].iter().copied());
    let m = T::from_count(incorrect.len());
    let n = T::from_count(correct.len());
    Ok((rank_sum - m * (m + T::one()) / T::lit(2.0)) / (m * n))
}

pub fn auroc<T: Scalar>(table: &ScoreTable<T>, method: &str) -> Result<T> {
    let (incorrect, correct) = table.split(method);
    auroc_scores(&incorrect, &correct)
}

/// 1-based ranks with ties sharing their average rank.
fn midranks<T: Scalar>(values: &[T]) -> Vec<T> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).expect("finite scores"));
    let mut ranks = vec![T::zero(); values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        // positions i..=j share the mean of ranks i+1..=j+1
        let avg = T::from_count(i + j + 2) / T::lit(2.0);
        for &o in &order[i..=j] {
            ranks[o] = avg;
        }
        i = j + 1;
    }
    ranks
}

fn sample_variance<T: Scalar>(v: &[T]) -> T {
    if v.len() < 2 {
        return T::zero();
    }
    let mean = neumaier_sum(v.iter().copied()) / T::from_count(v.len());
    neumaier_sum(v.iter().map(|&x| (x - mean) * (x - mean))) / T::from_count(v.len() - 1)
}

/// AUROC with a normal `1 - alpha` interval whose variance comes from the
/// DeLong structural components, computed through midranks in
/// `O((m + n) log(m + n))`. The interval is not clipped to `[0, 1]`.
pub fn delong_scores<T: Scalar>(incorrect: &[T], correct: &[T], alpha: T) -> Result<AurocEstimate<T>> {
    if !(alpha > T::zero() && alpha < T::one()) {
        return Err(Error::InvalidConfig(format!("alpha must lie in (0, 1), got {alpha}")));
    }
    if incorrect.is_empty() || correct.is_empty() {
        return Err(Error::SingleClass);
    }
    let m = incorrect.len();
    let n = correct.len();
    let (mf, nf) = (T::from_count(m), T::from_count(n));
    let pooled = midranks(&[incorrect, correct].concat());
    let within_x = midranks(incorrect);
    let within_y = midranks(correct);

    // v10_i: fraction of correct scores below incorrect score i (ties 1/2)
    let v10: Vec<T> = (0..m).map(|i| (pooled[i] - within_x[i]) / nf).collect();
    // v01_j: fraction of incorrect scores above correct score j
    let v01: Vec<T> = (0..n).map(|j| T::one() - (pooled[m + j] - within_y[j]) / mf).collect();

    let value = neumaier_sum(v10.iter().copied()) / mf;
    let variance = sample_variance(&v10) / mf + sample_variance(&v01) / nf;
    let half = normal_quantile::<T>(T::one() - alpha / T::lit(2.0)) * variance.max(T::zero()).sqrt();
    Ok(AurocEstimate {
        value,
        ci_low: value - half,
        ci_high: value + half,
        alpha,
    })
}

pub fn delong_ci<T: Scalar>(table: &ScoreTable<T>, method: &str, alpha: T) -> Result<AurocEstimate<T>> {
    let (incorrect, correct) = table.split(method);
    delong_scores(&incorrect, &correct, alpha)
}
