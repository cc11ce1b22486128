//! Semantic alphabet size estimators.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::judgments::JudgmentMatrix;
use crate::sample::CategoryCounts;
use crate::scalar::{neumaier_sum, Scalar};
use crate::spectral::{eigenvalues_sym, normalized_laplacian, weights_from_probabilities};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AlphabetMethod {
    NumSets,
    GoodTuring,
    Eigv,
    Hybrid,
}

/// Label statistics an estimate was computed from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SampleSummary {
    pub n: usize,
    pub k: usize,
    pub f1: usize,
}

impl From<&CategoryCounts> for SampleSummary {
    fn from(c: &CategoryCounts) -> Self {
        Self {
            n: c.n(),
            k: c.k(),
            f1: c.f1(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphabetEstimate<T> {
    pub value: T,
    pub method: AlphabetMethod,
    pub summary: Option<SampleSummary>,
}

/// Number of observed categories.
pub fn num_sets<T: Scalar>(counts: &CategoryCounts) -> AlphabetEstimate<T> {
    AlphabetEstimate {
        value: T::from_count(counts.k()),
        method: AlphabetMethod::NumSets,
        summary: Some(counts.into()),
    }
}

/// Observed categories divided by the Good-Turing coverage `1 - f1/n`,
/// i.e. `k n / (n - f1)`.
pub fn good_turing_size<T: Scalar>(counts: &CategoryCounts) -> Result<AlphabetEstimate<T>> {
    if counts.all_singletons() {
        return Err(Error::GoodTuringUndefined);
    }
    let (n, k, f1) = (counts.n(), counts.k(), counts.f1());
    Ok(AlphabetEstimate {
        value: T::from_count(k) * T::from_count(n) / T::from_count(n - f1),
        method: AlphabetMethod::GoodTuring,
        summary: Some(counts.into()),
    })
}

/// Spectral estimate `sum_i max(0, 1 - lambda_i)` over the normalized
/// Laplacian of the mean-entailment graph.
pub fn eigv_size<T: Scalar>(judgments: &JudgmentMatrix<T>) -> Result<AlphabetEstimate<T>> {
    let graph = weights_from_probabilities(judgments)?;
    let laplacian = normalized_laplacian(&graph)?;
    let spectrum = eigenvalues_sym(&laplacian)?;
    let value = neumaier_sum(
        spectrum
            .eigenvalues
            .iter()
            .map(|&l| (T::one() - l).max(T::zero())),
    );
    Ok(AlphabetEstimate {
        value,
        method: AlphabetMethod::Eigv,
        summary: None,
    })
}

/// Combines label counts with an already computed spectral estimate: the
/// spectral value alone when every category is a singleton, otherwise the
/// larger of Good-Turing and spectral.
pub fn hybrid_from_parts<T: Scalar>(
    counts: &CategoryCounts,
    eigv: &AlphabetEstimate<T>,
) -> Result<AlphabetEstimate<T>> {
    let value = if counts.all_singletons() {
        eigv.value
    } else {
        good_turing_size::<T>(counts)?.value.max(eigv.value)
    };
    Ok(AlphabetEstimate {
        value,
        method: AlphabetMethod::Hybrid,
        summary: Some(counts.into()),
    })
}

pub fn hybrid_size<T: Scalar>(
    counts: &CategoryCounts,
    judgments: &JudgmentMatrix<T>,
) -> Result<AlphabetEstimate<T>> {
    if judgments.dim() != counts.n() {
        return Err(Error::DimensionMismatch {
            expected: counts.n(),
            found: judgments.dim(),
        });
    }
    let eigv = eigv_size(judgments)?;
    hybrid_from_parts(counts, &eigv)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::SquareMatrix;
    use crate::sample::{tally, Labeling};
    use proptest::prelude::*;

    fn counts(s: &str) -> CategoryCounts {
        tally(&Labeling::from_symbols(s.chars()).unwrap())
    }

    fn block_matrix(labels: &[usize]) -> JudgmentMatrix<f64> {
        let n = labels.len();
        JudgmentMatrix::probabilistic(
            (0..n)
                .map(|i| (0..n).map(|j| if labels[i] == labels[j] { 1.0 } else { 0.0 }).collect())
                .collect(),
        )
        .unwrap()
    }

    fn eigv_value(v: f64) -> AlphabetEstimate<f64> {
        AlphabetEstimate {
            value: v,
            method: AlphabetMethod::Eigv,
            summary: None,
        }
    }

    #[test]
    fn num_sets_examples() {
        assert_eq!(num_sets::<f64>(&counts("AAB")).value, 2.0);
        assert_eq!(num_sets::<f64>(&counts("A")).value, 1.0);
        assert_eq!(num_sets::<f64>(&counts("ABCD")).value, 4.0);
    }

    #[test]
    fn good_turing_examples() {
        // k n / (n - f1) = 3 * 4 / 2
        assert_eq!(good_turing_size::<f64>(&counts("AABC")).unwrap().value, 6.0);
        assert_eq!(good_turing_size::<f64>(&counts("AABB")).unwrap().value, 2.0);
        assert_eq!(good_turing_size::<f64>(&counts("ABC")), Err(Error::GoodTuringUndefined));
    }

    #[test]
    fn eigv_examples() {
        let ones = JudgmentMatrix::<f64>::probabilistic(vec![vec![1.0; 3]; 3]).unwrap();
        assert!((eigv_size(&ones).unwrap().value - 1.0).abs() < 1e-12);

        let id = JudgmentMatrix::probabilistic(SquareMatrix::<f64>::identity(3).to_rows()).unwrap();
        assert!((eigv_size(&id).unwrap().value - 3.0).abs() < 1e-12);

        assert!((eigv_size(&block_matrix(&[0, 0, 1])).unwrap().value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn hybrid_examples() {
        let id = JudgmentMatrix::probabilistic(SquareMatrix::<f64>::identity(3).to_rows()).unwrap();
        let h = hybrid_size(&counts("ABC"), &id).unwrap();
        assert!((h.value - 3.0).abs() < 1e-12);

        assert_eq!(hybrid_from_parts(&counts("AABC"), &eigv_value(2.5)).unwrap().value, 6.0);
        assert_eq!(hybrid_from_parts(&counts("AABB"), &eigv_value(3.1)).unwrap().value, 3.1);
    }

    #[test]
    fn hybrid_dimension_mismatch() {
        let id = JudgmentMatrix::probabilistic(SquareMatrix::<f64>::identity(2).to_rows()).unwrap();
        assert!(matches!(hybrid_size(&counts("ABC"), &id), Err(Error::DimensionMismatch { .. })));
    }

    proptest! {
        #[test]
        fn block_matrix_eigv_counts_blocks(raw in prop::collection::vec(0usize..5, 1..25)) {
            let l = Labeling::new(raw).unwrap();
            let est = eigv_size(&block_matrix(l.labels())).unwrap();
            prop_assert!((est.value - l.k() as f64).abs() < 1e-9);
        }

        #[test]
        fn hybrid_bounds(raw in prop::collection::vec(0usize..6, 1..20), cells in prop::collection::vec(0.0f64..=1.0, 400)) {
            let l = Labeling::new(raw).unwrap();
            let c = tally(&l);
            let n = l.n();
            let m = JudgmentMatrix::probabilistic(
                (0..n).map(|i| (0..n).map(|j| cells[i * 20 + j]).collect()).collect(),
            ).unwrap();
            let h = hybrid_size(&c, &m).unwrap();
            prop_assert!(h.value >= 1.0 - 1e-9);
            if !c.all_singletons() {
                prop_assert!(h.value >= c.k() as f64);
                let gt = good_turing_size::<f64>(&c).unwrap().value;
                prop_assert_eq!(gt == c.k() as f64, c.f1() == 0);
            }
        }
    }
}
