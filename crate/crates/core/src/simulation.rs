//! Synthetic populations with a known semantic alphabet and the Monte Carlo
//! experiments that measure estimator bias and error against the true entropy.

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::alphabet::{eigv_size, hybrid_from_parts, AlphabetEstimate, AlphabetMethod};
use crate::entropy::{chao_shen, hybrid_entropy, plugin_dse, shannon};
use crate::error::{Error, Result};
use crate::judgments::{EntailmentClass, JudgmentMatrix};
use crate::sample::{tally, Labeling};
use crate::scalar::{neumaier_sum, Scalar};
use crate::seed::{derive_seed, rng_from};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    Zipf,
    Uniform,
    Custom,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CategoricalDistribution<T> {
    probabilities: Vec<T>,
    family: Family,
    cdf: Vec<f64>,
}

impl<T: Scalar> CategoricalDistribution<T> {
    /// `p_r = 1 / (r H_S)` for ranks `r = 1..=S`.
    pub fn zipf(alphabet_size: usize) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(Error::InvalidDistribution("alphabet size must be >= 1".into()));
        }
        let h = harmonic::<T>(alphabet_size);
        let probs = (1..=alphabet_size).map(|r| (T::from_count(r) * h).recip()).collect();
        Ok(Self::build(probs, Family::Zipf))
    }

    pub fn uniform(alphabet_size: usize) -> Result<Self> {
        if alphabet_size == 0 {
            return Err(Error::InvalidDistribution("alphabet size must be >= 1".into()));
        }
        let p = T::from_count(alphabet_size).recip();
        Ok(Self::build(vec![p; alphabet_size], Family::Uniform))
    }

    pub fn custom(probabilities: Vec<T>) -> Result<Self> {
        if probabilities.is_empty() {
            return Err(Error::InvalidDistribution("no categories".into()));
        }
        if probabilities.iter().any(|&p| !(p > T::zero()) || !p.is_finite()) {
            return Err(Error::InvalidDistribution("probabilities must be positive".into()));
        }
        let total = neumaier_sum(probabilities.iter().copied());
        let tol = T::lit(1e-12).max(T::epsilon() * T::from_count(8 * probabilities.len()));
        if (total - T::one()).abs() > tol {
            return Err(Error::InvalidDistribution(format!("probabilities sum to {total}")));
        }
        Ok(Self::build(probabilities, Family::Custom))
    }

    fn build(probabilities: Vec<T>, family: Family) -> Self {
        let mut acc = 0.0;
        let mut cdf: Vec<f64> = probabilities
            .iter()
            .map(|p| {
                acc += p.as_f64();
                acc
            })
            .collect();
        // guard the last bucket against rounding below 1
        if let Some(last) = cdf.last_mut() {
            *last = f64::INFINITY;
        }
        Self {
            probabilities,
            family,
            cdf,
        }
    }

    pub fn probabilities(&self) -> &[T] {
        &self.probabilities
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn alphabet_size(&self) -> usize {
        self.probabilities.len()
    }

    /// Inverse-CDF draw of one category index.
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.random();
        self.cdf.partition_point(|&c| c <= u)
    }
}

pub fn harmonic<T: Scalar>(j: usize) -> T {
    neumaier_sum((1..=j).rev().map(|r| T::from_count(r).recip()))
}

pub fn true_entropy<T: Scalar>(dist: &CategoricalDistribution<T>) -> T {
    shannon(dist.probabilities())
}

/// Raw category indices of `n` i.i.d. draws.
pub fn sample_categories<T: Scalar, R: Rng + ?Sized>(
    dist: &CategoricalDistribution<T>,
    n: usize,
    rng: &mut R,
) -> Vec<usize> {
    (0..n).map(|_| dist.draw(rng)).collect()
}

pub fn sample_labels<T: Scalar>(dist: &CategoricalDistribution<T>, n: usize, seed: u64) -> Result<Labeling> {
    let mut rng = rng_from(seed);
    Labeling::new(sample_categories(dist, n, &mut rng))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SyntheticJudgments<T> {
    pub probabilistic: JudgmentMatrix<T>,
    pub categorical: JudgmentMatrix<T>,
}

/// Binary same-category judgments with each off-diagonal entry flipped
/// independently with probability `noise`. Both matrices share the flips.
pub fn synth_judgments<T: Scalar>(labeling: &Labeling, noise: T, seed: u64) -> Result<SyntheticJudgments<T>> {
    check_noise(noise)?;
    let n = labeling.n();
    let labels = labeling.labels();
    let noise = noise.as_f64();
    let mut rng = rng_from(seed);
    let mut same = vec![vec![true; n]; n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let flip = noise > 0.0 && rng.random::<f64>() < noise;
                same[i][j] = (labels[i] == labels[j]) != flip;
            }
        }
    }
    let probabilistic = JudgmentMatrix::probabilistic(
        same.iter()
            .map(|r| r.iter().map(|&s| if s { T::one() } else { T::zero() }).collect())
            .collect(),
    )?;
    let categorical = JudgmentMatrix::categorical(
        same.iter()
            .map(|r| {
                r.iter()
                    .map(|&s| {
                        if s {
                            EntailmentClass::Entailment
                        } else {
                            EntailmentClass::Contradiction
                        }
                    })
                    .collect()
            })
            .collect(),
    )?;
    Ok(SyntheticJudgments {
        probabilistic,
        categorical,
    })
}

fn check_noise<T: Scalar>(noise: T) -> Result<()> {
    if !(noise >= T::zero() && noise < T::lit(0.5)) {
        return Err(Error::InvalidNoise(noise.as_f64()));
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct TrialConfig<T> {
    pub distribution: CategoricalDistribution<T>,
    pub sample_sizes: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Flip probability for the synthetic judgment matrices.
    pub noise: T,
}

impl<T: Scalar> TrialConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidConfig("trials must be >= 1".into()));
        }
        if self.sample_sizes.is_empty() || self.sample_sizes.contains(&0) {
            return Err(Error::InvalidConfig("sample sizes must be >= 1".into()));
        }
        check_noise(self.noise)?;
        if !(true_entropy(&self.distribution) > T::zero()) {
            return Err(Error::ZeroEntropy);
        }
        Ok(())
    }
}

/// Estimator under study in the simulation tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SimEstimator {
    Plugin,
    ChaoShen,
    Hybrid,
}

impl SimEstimator {
    pub const ALL: [SimEstimator; 3] = [SimEstimator::Plugin, SimEstimator::ChaoShen, SimEstimator::Hybrid];

    pub fn name(self) -> &'static str {
        match self {
            Self::Plugin => "plugin",
            Self::ChaoShen => "chao_shen",
            Self::Hybrid => "hybrid",
        }
    }
}

/// Estimates from one simulated sample; `None` where the estimator is undefined.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrialEstimates<T> {
    pub plugin: T,
    pub chao_shen: Option<T>,
    pub hybrid: Option<T>,
}

impl<T: Copy> TrialEstimates<T> {
    pub fn get(&self, e: SimEstimator) -> Option<T> {
        match e {
            SimEstimator::Plugin => Some(self.plugin),
            SimEstimator::ChaoShen => self.chao_shen,
            SimEstimator::Hybrid => self.hybrid,
        }
    }
}

const LABEL_STREAM: u64 = 1;
const JUDGMENT_STREAM: u64 = 2;

/// Runs one trial; the sample and the judgment noise use independent streams
/// derived from `trial_seed`. Without noise the spectral estimate of the
/// synthetic block graph is exactly `k` and is not recomputed.
pub fn run_trial<T: Scalar>(
    dist: &CategoricalDistribution<T>,
    n: usize,
    noise: T,
    trial_seed: u64,
) -> Result<TrialEstimates<T>> {
    let labeling = sample_labels(dist, n, derive_seed(trial_seed, LABEL_STREAM, 0))?;
    let counts = tally(&labeling);
    let eigv = if noise == T::zero() {
        // block-diagonal all-ones graph: the spectral estimate is the block count
        AlphabetEstimate {
            value: T::from_count(counts.k()),
            method: AlphabetMethod::Eigv,
            summary: None,
        }
    } else {
        let judgments = synth_judgments(&labeling, noise, derive_seed(trial_seed, JUDGMENT_STREAM, 0))?;
        eigv_size(&judgments.probabilistic)?
    };
    let hybrid = hybrid_from_parts(&counts, &eigv)
        .and_then(|size| hybrid_entropy(&counts, &size))
        .map(|s| s.value)
        .ok();
    Ok(TrialEstimates {
        plugin: plugin_dse(&counts).value,
        chao_shen: chao_shen(&counts).ok().map(|s| s.value),
        hybrid,
    })
}

/// Per-trial estimates for every sample size, in trial order.
#[derive(Debug, Clone, PartialEq)]
pub struct TrialBatch<T> {
    pub n: usize,
    pub estimates: Vec<TrialEstimates<T>>,
}

/// Runs all trials. Trial `i` at sample size `n` is seeded with
/// `derive_seed(seed, n, i)`, so output is independent of thread scheduling.
pub fn run_trials<T: Scalar>(config: &TrialConfig<T>) -> Result<Vec<TrialBatch<T>>> {
    config.validate()?;
    config
        .sample_sizes
        .iter()
        .map(|&n| {
            let estimates = (0..config.trials)
                .into_par_iter()
                .map(|i| run_trial(&config.distribution, n, config.noise, derive_seed(config.seed, n as u64, i as u64)))
                .collect::<Result<Vec<_>>>()?;
            Ok(TrialBatch { n, estimates })
        })
        .collect()
}

/// Mean and standard error of the mean, summed in input order.
pub fn mean_sem<T: Scalar>(values: &[T]) -> (T, T) {
    let m = values.len();
    if m == 0 {
        return (T::nan(), T::nan());
    }
    let mean = neumaier_sum(values.iter().copied()) / T::from_count(m);
    if m == 1 {
        return (mean, T::zero());
    }
    let ss = neumaier_sum(values.iter().map(|&v| (v - mean) * (v - mean)));
    let sd = (ss / T::from_count(m - 1)).sqrt();
    (mean, sd / T::from_count(m).sqrt())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurveRow<T> {
    pub n: usize,
    pub method: SimEstimator,
    pub mean_ratio: T,
    pub sem: T,
    pub used: usize,
    /// Trials where the estimator was undefined.
    pub excluded: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MseRow<T> {
    pub n: usize,
    pub method: SimEstimator,
    pub mse: T,
    pub sem: T,
    pub bias: T,
    pub used: usize,
    pub excluded: usize,
}

fn defined<T: Scalar>(batch: &TrialBatch<T>, e: SimEstimator) -> Vec<T> {
    batch.estimates.iter().filter_map(|t| t.get(e)).collect()
}

pub fn curve_from_batches<T: Scalar>(batches: &[TrialBatch<T>], truth: T) -> Vec<CurveRow<T>> {
    let mut rows = Vec::new();
    for b in batches {
        for e in SimEstimator::ALL {
            let ratios: Vec<T> = defined(b, e).into_iter().map(|v| v / truth).collect();
            let (mean_ratio, sem) = mean_sem(&ratios);
            rows.push(CurveRow {
                n: b.n,
                method: e,
                mean_ratio,
                sem,
                used: ratios.len(),
                excluded: b.estimates.len() - ratios.len(),
            });
        }
    }
    rows
}

pub fn mse_from_batches<T: Scalar>(batches: &[TrialBatch<T>], truth: T) -> Vec<MseRow<T>> {
    let mut rows = Vec::new();
    for b in batches {
        for e in SimEstimator::ALL {
            let values = defined(b, e);
            let sq: Vec<T> = values.iter().map(|&v| (v - truth) * (v - truth)).collect();
            let (mse, sem) = mean_sem(&sq);
            let (mean, _) = mean_sem(&values);
            rows.push(MseRow {
                n: b.n,
                method: e,
                mse,
                sem,
                bias: mean - truth,
                used: values.len(),
                excluded: b.estimates.len() - values.len(),
            });
        }
    }
    rows
}

/// Mean ratio of each estimator to the true entropy, per sample size.
pub fn underestimation_curve<T: Scalar>(config: &TrialConfig<T>) -> Result<Vec<CurveRow<T>>> {
    let batches = run_trials(config)?;
    Ok(curve_from_batches(&batches, true_entropy(&config.distribution)))
}

/// Mean squared error against the true entropy, per sample size and estimator.
pub fn mse_experiment<T: Scalar>(config: &TrialConfig<T>) -> Result<Vec<MseRow<T>>> {
    let batches = run_trials(config)?;
    Ok(mse_from_batches(&batches, true_entropy(&config.distribution)))
}

/// Largest alphabet size `S` for which the rarest Zipf category still has
/// expected count `n / (S H_S) >= 1`. Beyond it at least one category is
/// expected to go unobserved in a sample of `n`.
pub fn unseen_threshold(n: usize) -> usize {
    let n = n as f64;
    let mut h = 0.0;
    let mut s = 0usize;
    loop {
        let next = s + 1;
        h += 1.0 / next as f64;
        if next as f64 * h > n {
            return s.max(1);
        }
        s = next;
    }
}
