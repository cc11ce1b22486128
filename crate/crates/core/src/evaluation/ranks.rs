use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::bradley_terry::bradley_terry_mm;
use super::matches::{simulate_matches, EstimateGrid};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::seed::{derive_seed, rng_from};

const RESAMPLE_STREAM: u64 = 0x4253_5452;
const REPLICATE_MATCH_STREAM: u64 = 0x424d_4154;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RankCiConfig<T> {
    pub alpha: T,
    /// Matches per method pair and cell.
    pub matches: u64,
    pub seed: u64,
    /// Bradley-Terry regularization `a`.
    pub regularization: T,
    /// Bootstrap resamples of the (model, dataset) cells.
    pub bootstrap: usize,
}

impl<T: Scalar> Default for RankCiConfig<T> {
    fn default() -> Self {
        Self {
            alpha: T::lit(0.05),
            matches: 100,
            seed: 0,
            regularization: T::lit(0.1),
            bootstrap: 2000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct StrengthEstimate<T> {
    pub methods: Vec<String>,
    /// Point estimates, summing to 1.
    pub strengths: Vec<T>,
    pub regularization: T,
    /// Conservative `1 - alpha` bootstrap intervals about each strength.
    pub strength_ci: Vec<(T, T)>,
    /// 1-based rank intervals `[lo, hi]`; rank 1 is the strongest.
    pub rank_intervals: Vec<(usize, usize)>,
    /// Simulated matches resolved by the tie rule.
    pub ties: u64,
    pub bootstrap_used: usize,
    pub bootstrap_failed: usize,
}

/// Linear-interpolation quantile of sorted data.
fn quantile<T: Scalar>(sorted: &[T], q: T) -> T {
    let h = T::from_count(sorted.len() - 1) * q;
    let lo = h.floor();
    let i = lo.to_usize().unwrap_or(0).min(sorted.len() - 1);
    let j = (i + 1).min(sorted.len() - 1);
    sorted[i] + (h - lo) * (sorted[j] - sorted[i])
}

fn interval<T: Scalar>(sorted: &[T], level: T, point: T) -> (T, T) {
    let tail = (T::one() - level) / T::lit(2.0);
    let lo = quantile(sorted, tail).min(point);
    let hi = quantile(sorted, T::one() - tail).max(point);
    (lo, hi)
}

/// Strengths from simulated matches plus rank intervals.
///
/// For each target method a `1 - alpha` interval is placed about its
/// strength and Bonferroni `1 - alpha/(m-1)` intervals about the others.
/// With `n1` intervals entirely above the target's and `n2` entirely below,
/// the rank interval is `[n1 + 1, m - n2]`. Strength intervals come from a
/// nonparametric bootstrap over grid cells and are widened to contain the
/// point estimate, so rank intervals always contain the point-estimate rank.
pub fn rank_cis<T: Scalar>(grid: &EstimateGrid<T>, config: &RankCiConfig<T>) -> Result<StrengthEstimate<T>> {
    let m = grid.num_methods();
    if m == 0 {
        return Err(Error::EmptySample);
    }
    if grid.cells.is_empty() {
        return Err(Error::InvalidConfig("estimate grid has no cells".into()));
    }
    if !(config.alpha > T::zero() && config.alpha < T::one()) {
        return Err(Error::InvalidConfig(format!("alpha must lie in (0, 1), got {}", config.alpha)));
    }
    let record = simulate_matches(grid, config.matches, config.seed)?;
    let strengths = bradley_terry_mm(&record, config.regularization)?;
    if m == 1 {
        return Ok(StrengthEstimate {
            methods: grid.methods.clone(),
            strengths,
            regularization: config.regularization,
            strength_ci: vec![(T::one(), T::one())],
            rank_intervals: vec![(1, 1)],
            ties: record.ties,
            bootstrap_used: 0,
            bootstrap_failed: 0,
        });
    }
    if config.bootstrap == 0 {
        return Err(Error::InvalidConfig("bootstrap resamples must be >= 1".into()));
    }

    let cells = grid.cells.len();
    let replicates: Vec<Option<Vec<T>>> = (0..config.bootstrap)
        .into_par_iter()
        .map(|b| {
            let mut rng = rng_from(derive_seed(config.seed, RESAMPLE_STREAM, b as u64));
            let picks: Vec<usize> = (0..cells).map(|_| rng.random_range(0..cells)).collect();
            let sub = grid.resample(&picks);
            let seed = derive_seed(config.seed, REPLICATE_MATCH_STREAM, b as u64);
            simulate_matches(&sub, config.matches, seed)
                .and_then(|r| bradley_terry_mm(&r, config.regularization))
                .ok()
        })
        .collect();
    let fitted: Vec<&Vec<T>> = replicates.iter().flatten().collect();
    if fitted.is_empty() {
        return Err(Error::InvalidConfig(
            "no bootstrap replicate could be fitted; increase regularization".into(),
        ));
    }

    let samples: Vec<Vec<T>> = (0..m)
        .map(|i| {
            let mut s: Vec<T> = fitted.iter().map(|r| r[i]).collect();
            s.sort_by(|a, b| a.partial_cmp(b).expect("finite strengths"));
            s
        })
        .collect();
    let target_level = T::one() - config.alpha;
    let other_level = T::one() - config.alpha / T::from_count(m - 1);
    let target_ci: Vec<(T, T)> = (0..m).map(|i| interval(&samples[i], target_level, strengths[i])).collect();
    let other_ci: Vec<(T, T)> = (0..m).map(|i| interval(&samples[i], other_level, strengths[i])).collect();

    let rank_intervals = (0..m)
        .map(|i| {
            let (lo_i, hi_i) = target_ci[i];
            let above = (0..m).filter(|&j| j != i && other_ci[j].0 > hi_i).count();
            let below = (0..m).filter(|&j| j != i && other_ci[j].1 < lo_i).count();
            (above + 1, m - below)
        })
        .collect();

    Ok(StrengthEstimate {
        methods: grid.methods.clone(),
        strengths,
        regularization: config.regularization,
        strength_ci: target_ci,
        rank_intervals,
        ties: record.ties,
        bootstrap_used: fitted.len(),
        bootstrap_failed: config.bootstrap - fitted.len(),
    })
}
