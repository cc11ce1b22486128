//! Entropy-style uncertainty scores, all in nats.

use serde::Serialize;

use crate::alphabet::AlphabetEstimate;
use crate::error::{Error, Result};
use crate::judgments::JudgmentMatrix;
use crate::rouge::rouge_l;
use crate::sample::{CategoryCounts, Labeling};
use crate::scalar::{neumaier_sum, xlogx, Scalar};
use crate::spectral::{heat_kernel_density, standard_laplacian, von_neumann_entropy, weights_from_classes};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EntropyMethod {
    Plugin,
    ChaoShen,
    Hybrid,
    WhiteboxSe,
    Pe,
    Snne,
    Kle,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct UncertaintyScore<T> {
    pub value: T,
    pub method: EntropyMethod,
}

impl<T> UncertaintyScore<T> {
    fn new(value: T, method: EntropyMethod) -> Self {
        Self { value, method }
    }
}

/// Shannon entropy of a probability vector.
pub fn shannon<T: Scalar>(probs: &[T]) -> T {
    let h = -neumaier_sum(probs.iter().map(|&p| xlogx(p)));
    h.max(T::zero())
}

/// Entropy of the empirical category frequencies.
pub fn plugin_dse<T: Scalar>(counts: &CategoryCounts) -> UncertaintyScore<T> {
    UncertaintyScore::new(shannon(&counts.frequencies::<T>()), EntropyMethod::Plugin)
}

/// Horvitz-Thompson weighted entropy of frequencies scaled by `scale`:
/// `-sum q ln q / (1 - (1 - q)^n)` with `q_i = scale * p_i`.
fn coverage_adjusted<T: Scalar>(counts: &CategoryCounts, scale: T) -> Result<T> {
    let n = counts.n() as i32;
    let mut terms = Vec::with_capacity(counts.k());
    for p in counts.frequencies::<T>() {
        let q = scale * p;
        if q > T::one() + T::epsilon() {
            return Err(Error::AdjustedFrequencyExceedsOne);
        }
        let q = q.min(T::one());
        let inclusion = T::one() - (T::one() - q).powi(n);
        terms.push(xlogx(q) / inclusion);
    }
    Ok((-neumaier_sum(terms)).max(T::zero()))
}

/// Chao-Shen estimator with Good-Turing coverage `1 - f1/n`.
pub fn chao_shen<T: Scalar>(counts: &CategoryCounts) -> Result<UncertaintyScore<T>> {
    if counts.all_singletons() {
        return Err(Error::ChaoShenUndefined);
    }
    let coverage = T::one() - T::from_count(counts.f1()) / T::from_count(counts.n());
    Ok(UncertaintyScore::new(
        coverage_adjusted(counts, coverage)?,
        EntropyMethod::ChaoShen,
    ))
}

/// Coverage-adjusted entropy using `k / size` as the coverage.
pub fn hybrid_entropy<T: Scalar>(
    counts: &CategoryCounts,
    size: &AlphabetEstimate<T>,
) -> Result<UncertaintyScore<T>> {
    if !(size.value > T::zero()) || !size.value.is_finite() {
        return Err(Error::NonPositive {
            name: "alphabet size",
            value: size.value.as_f64(),
        });
    }
    let coverage = T::from_count(counts.k()) / size.value;
    Ok(UncertaintyScore::new(
        coverage_adjusted(counts, coverage)?,
        EntropyMethod::Hybrid,
    ))
}

/// Semantic entropy with class probabilities aggregated from response
/// probabilities (normalized over the sample).
pub fn whitebox_se<T: Scalar>(labeling: &Labeling, response_probs: &[T]) -> Result<UncertaintyScore<T>> {
    if response_probs.len() != labeling.n() {
        return Err(Error::DimensionMismatch {
            expected: labeling.n(),
            found: response_probs.len(),
        });
    }
    if response_probs.iter().any(|p| !p.is_finite()) {
        return Err(Error::NonFinite("response probability"));
    }
    if let Some(&neg) = response_probs.iter().find(|&&p| p < T::zero()) {
        return Err(Error::NegativeProbability(neg.as_f64()));
    }
    let mut mass = vec![Vec::new(); labeling.k()];
    for (&class, &p) in labeling.labels().iter().zip(response_probs) {
        mass[class].push(p);
    }
    let total = neumaier_sum(response_probs.iter().copied());
    if !(total > T::zero()) {
        return Err(Error::AllZeroProbabilities);
    }
    let class_probs: Vec<T> = mass.into_iter().map(|m| neumaier_sum(m) / total).collect();
    Ok(UncertaintyScore::new(shannon(&class_probs), EntropyMethod::WhiteboxSe))
}

/// Monte Carlo sequence entropy: mean negative log-probability.
pub fn predictive_entropy<T: Scalar>(log_probs: &[T]) -> Result<UncertaintyScore<T>> {
    if log_probs.is_empty() {
        return Err(Error::EmptySample);
    }
    if log_probs.iter().any(|v| !v.is_finite()) {
        return Err(Error::NonFinite("log probability"));
    }
    let mean = neumaier_sum(log_probs.iter().copied()) / T::from_count(log_probs.len());
    Ok(UncertaintyScore::new(-mean, EntropyMethod::Pe))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SnneConfig<T> {
    /// Temperature dividing each similarity.
    pub tau: T,
    /// Whether `j = i` contributes `exp(f(d_i, d_i) / tau)` to the inner sum.
    pub include_self: bool,
}

impl<T: Scalar> Default for SnneConfig<T> {
    fn default() -> Self {
        Self {
            tau: T::one(),
            include_self: true,
        }
    }
}

/// `-(1/n) sum_i ln sum_j exp(rouge_l(d_i, d_j) / tau)`.
pub fn snne<T: Scalar, S: PartialEq>(responses: &[Vec<S>], config: SnneConfig<T>) -> Result<UncertaintyScore<T>> {
    if responses.is_empty() {
        return Err(Error::EmptySample);
    }
    if !(config.tau > T::zero()) || !config.tau.is_finite() {
        return Err(Error::NonPositive {
            name: "tau",
            value: config.tau.as_f64(),
        });
    }
    let n = responses.len();
    let mut outer = Vec::with_capacity(n);
    for (i, di) in responses.iter().enumerate() {
        let scaled: Vec<T> = responses
            .iter()
            .enumerate()
            .filter(|&(j, _)| config.include_self || j != i)
            .map(|(_, dj)| rouge_l::<T, S>(di, dj) / config.tau)
            .collect();
        if scaled.is_empty() {
            // n = 1 without the diagonal: empty sum, ln 0
            return Err(Error::EmptySample);
        }
        outer.push(log_sum_exp(&scaled));
    }
    let value = -neumaier_sum(outer) / T::from_count(n);
    Ok(UncertaintyScore::new(value, EntropyMethod::Snne))
}

fn log_sum_exp<T: Scalar>(xs: &[T]) -> T {
    let max = xs.iter().copied().fold(T::neg_infinity(), T::max);
    max + neumaier_sum(xs.iter().map(|&x| (x - max).exp())).ln()
}

/// Von Neumann entropy of the unit-trace heat kernel `exp(-tL)` over the
/// three-way entailment graph.
pub fn kle<T: Scalar>(judgments: &JudgmentMatrix<T>, t: T) -> Result<UncertaintyScore<T>> {
    let graph = weights_from_classes(judgments)?;
    let laplacian = standard_laplacian(&graph);
    let density = heat_kernel_density(&laplacian, t)?;
    Ok(UncertaintyScore::new(von_neumann_entropy(&density)?, EntropyMethod::Kle))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::{good_turing_size, hybrid_from_parts, AlphabetMethod};
    use crate::judgments::EntailmentClass;
    use crate::rouge::tokenize;
    use crate::sample::tally;
    use proptest::prelude::*;

    fn counts(s: &str) -> CategoryCounts {
        tally(&Labeling::from_symbols(s.chars()).unwrap())
    }

    fn size(v: f64) -> AlphabetEstimate<f64> {
        AlphabetEstimate {
            value: v,
            method: AlphabetMethod::Hybrid,
            summary: None,
        }
    }

    fn close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    /// Direct transcription of the coverage-adjusted sum, kept separate from
    /// the implementation above.
    fn horvitz_thompson_oracle(freqs: &[f64], scale: f64, n: i32) -> f64 {
        let mut h = 0.0;
        for &p in freqs {
            let q = scale * p;
            h -= q * q.ln() / (1.0 - (1.0 - q).powi(n));
        }
        h
    }

    #[test]
    fn plugin_examples() {
        close(plugin_dse::<f64>(&counts("AABB")).value, 2f64.ln(), 1e-15);
        assert_eq!(plugin_dse::<f64>(&counts("AAAA")).value, 0.0);
        let h = plugin_dse::<f64>(&counts("AAB")).value;
        close(h, -(2.0 / 3.0 * (2.0f64 / 3.0).ln() + 1.0 / 3.0 * (1.0f64 / 3.0).ln()), 1e-15);
        close(h, 0.6365, 1e-4);
    }

    #[test]
    fn chao_shen_examples() {
        assert_eq!(chao_shen::<f64>(&counts("AAAA")).unwrap().value, 0.0);
        let h = chao_shen::<f64>(&counts("AABB")).unwrap().value;
        close(h, horvitz_thompson_oracle(&[0.5, 0.5], 1.0, 4), 1e-15);
        close(h, 2.0 * 0.5 * 2f64.ln() / 0.9375, 1e-15);
        close(h, 0.7394, 1e-4);
        assert_eq!(chao_shen::<f64>(&counts("AB")), Err(Error::ChaoShenUndefined));
    }

    #[test]
    fn hybrid_examples() {
        let h = hybrid_entropy(&counts("AABB"), &size(2.0)).unwrap().value;
        close(h, chao_shen::<f64>(&counts("AABB")).unwrap().value, 1e-15);
        close(h, 0.7394, 1e-4);

        assert_eq!(hybrid_entropy(&counts("AAAA"), &size(1.0)).unwrap().value, 0.0);

        // q = {0.25, 0.125, 0.125}, n = 4
        let h = hybrid_entropy(&counts("AABC"), &size(6.0)).unwrap().value;
        let oracle = horvitz_thompson_oracle(&[0.5, 0.25, 0.25], 3.0 / 6.0, 4);
        close(h, oracle, 1e-15);
        close(h, 1.763_240_241_258_532_6, 1e-12);
    }

    #[test]
    fn hybrid_rejects_small_size() {
        // k / size = 2 / 1 doubles the frequencies
        assert_eq!(
            hybrid_entropy(&counts("AAAB"), &size(1.0)),
            Err(Error::AdjustedFrequencyExceedsOne)
        );
    }

    #[test]
    fn whitebox_examples() {
        let two = Labeling::new([0, 1, 1]).unwrap();
        close(whitebox_se(&two, &[0.5, 0.3, 0.2]).unwrap().value, 2f64.ln(), 1e-15);
        close(whitebox_se(&Labeling::new([0, 1]).unwrap(), &[0.4, 0.4]).unwrap().value, 2f64.ln(), 1e-15);
        assert_eq!(whitebox_se(&Labeling::new([0, 0]).unwrap(), &[0.1, 0.7]).unwrap().value, 0.0);
        assert_eq!(whitebox_se(&two, &[0.0, 0.0, 0.0]), Err(Error::AllZeroProbabilities));
        assert!(whitebox_se(&two, &[0.1, -0.1, 0.3]).is_err());
    }

    #[test]
    fn predictive_entropy_examples() {
        assert_eq!(predictive_entropy(&[-2.0, -2.0, -2.0]).unwrap().value, 2.0);
        assert_eq!(predictive_entropy(&[-1.0, -3.0]).unwrap().value, 2.0);
        assert_eq!(predictive_entropy(&[0.0]).unwrap().value, 0.0);
        assert!(predictive_entropy::<f64>(&[]).is_err());
    }

    #[test]
    fn snne_examples() {
        let same = vec![tokenize("paris"), tokenize("Paris.")];
        close(snne(&same, SnneConfig::default()).unwrap().value, -(1.0 + 2f64.ln()), 1e-14);

        let apart = vec![tokenize("paris"), tokenize("london")];
        let v = snne(&apart, SnneConfig::default()).unwrap().value;
        close(v, -(1f64.exp() + 1.0).ln(), 1e-14);
        close(v, -1.3133, 1e-4);

        let one = vec![tokenize("paris")];
        close(snne(&one, SnneConfig::<f64>::default()).unwrap().value, -1.0, 1e-15);

        let no_self = SnneConfig {
            tau: 1.0,
            include_self: false,
        };
        close(snne(&apart, no_self).unwrap().value, 0.0, 1e-15);
        assert!(snne(&one, SnneConfig { tau: 0.0, include_self: true }).is_err());
    }

    #[test]
    fn kle_examples() {
        use EntailmentClass::*;
        let cat = |n: usize, c: EntailmentClass| {
            JudgmentMatrix::<f64>::categorical(vec![vec![c; n]; n]).unwrap()
        };
        assert_eq!(kle(&cat(1, Entailment), 0.3).unwrap().value, 0.0);
        close(kle(&cat(4, Contradiction), 0.3).unwrap().value, 4f64.ln(), 1e-12);

        let z = 1.0 + 2.0 * (-1.8_f64).exp();
        let lams = [1.0 / z, (-1.8_f64).exp() / z, (-1.8_f64).exp() / z];
        let oracle: f64 = -lams.iter().map(|l| l * l.ln()).sum::<f64>();
        let h = kle(&cat(3, Entailment), 0.3).unwrap().value;
        close(h, oracle, 1e-12);
        close(h, 0.7328, 1e-4);
    }

    #[test]
    fn generic_over_f32() {
        let h: f32 = chao_shen(&counts("AABB")).unwrap().value;
        assert!((h - 0.7394).abs() < 1e-4);
    }

    fn sample_strategy() -> impl Strategy<Value = Vec<usize>> {
        prop::collection::vec(0usize..8, 1..40)
    }

    proptest! {
        #[test]
        fn plugin_bounds(raw in sample_strategy()) {
            let c = tally(&Labeling::new(raw).unwrap());
            let h = plugin_dse::<f64>(&c).value;
            let logk = (c.k() as f64).ln();
            prop_assert!(h >= 0.0 && h <= logk + 1e-12);
            let equal = c.counts().iter().all(|&x| x == c.counts()[0]);
            prop_assert_eq!((h - logk).abs() < 1e-12, equal);
        }

        #[test]
        fn hybrid_equals_chao_shen_at_good_turing_size(raw in sample_strategy()) {
            let c = tally(&Labeling::new(raw).unwrap());
            if let Ok(gt) = good_turing_size::<f64>(&c) {
                let cs = chao_shen::<f64>(&c).unwrap().value;
                let eigv = AlphabetEstimate { value: 1.0, method: AlphabetMethod::Eigv, summary: None };
                let hybrid = hybrid_from_parts(&c, &eigv).unwrap();
                prop_assert_eq!(hybrid.value, gt.value);
                let hy = hybrid_entropy(&c, &hybrid).unwrap().value;
                prop_assert!((hy - cs).abs() < 1e-12);
            }
        }

        #[test]
        fn whitebox_uniform_matches_plugin(raw in sample_strategy(), p in 0.01f64..3.0) {
            let l = Labeling::new(raw).unwrap();
            let probs = vec![p; l.n()];
            let wb = whitebox_se(&l, &probs).unwrap().value;
            prop_assert!((wb - plugin_dse::<f64>(&tally(&l)).value).abs() < 1e-12);
        }

        #[test]
        fn permutation_invariance(raw in sample_strategy(), rot in 0usize..40) {
            let mut perm = raw.clone();
            perm.rotate_left(rot % raw.len());
            let a = tally(&Labeling::new(raw).unwrap());
            let b = tally(&Labeling::new(perm).unwrap());
            prop_assert!((plugin_dse::<f64>(&a).value - plugin_dse::<f64>(&b).value).abs() < 1e-12);
            if let (Ok(x), Ok(y)) = (chao_shen::<f64>(&a), chao_shen::<f64>(&b)) {
                prop_assert!((x.value - y.value).abs() < 1e-12);
            }
        }
    }
}
