//! Pairwise entailment judgments between responses.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SquareMatrix;
use crate::scalar::Scalar;

/// Three-way NLI outcome for an ordered pair of responses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EntailmentClass {
    Entailment,
    Neutral,
    Contradiction,
}

impl std::str::FromStr for EntailmentClass {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "entailment" => Ok(Self::Entailment),
            "neutral" => Ok(Self::Neutral),
            "contradiction" => Ok(Self::Contradiction),
            other => Err(format!("unknown entailment class {other:?}")),
        }
    }
}

/// `n x n` judgments; entry `(i, j)` describes whether response `i` entails `j`.
/// Not necessarily symmetric.
#[derive(Debug, Clone, PartialEq)]
pub enum JudgmentMatrix<T> {
    Categorical(SquareMatrix<EntailmentClass>),
    Probabilistic(SquareMatrix<T>),
}

impl<T: Scalar> JudgmentMatrix<T> {
    /// Categorical judgments. The diagonal is set to entailment.
    pub fn categorical(rows: Vec<Vec<EntailmentClass>>) -> Result<Self> {
        let mut m = SquareMatrix::from_rows(rows)?;
        if m.dim() == 0 {
            return Err(Error::EmptySample);
        }
        for i in 0..m.dim() {
            m.set(i, i, EntailmentClass::Entailment);
        }
        Ok(Self::Categorical(m))
    }

    /// Entailment probabilities in `[0, 1]`. The diagonal is set to 1: a
    /// response certainly entails itself.
    pub fn probabilistic(rows: Vec<Vec<T>>) -> Result<Self> {
        let mut m = SquareMatrix::from_rows(rows)?;
        if m.dim() == 0 {
            return Err(Error::EmptySample);
        }
        for i in 0..m.dim() {
            for j in 0..m.dim() {
                let v = m.at(i, j);
                if !(v >= T::zero() && v <= T::one()) {
                    return Err(Error::ProbabilityOutOfRange {
                        row: i,
                        col: j,
                        value: v.as_f64(),
                    });
                }
            }
            m.set(i, i, T::one());
        }
        Ok(Self::Probabilistic(m))
    }

    pub fn dim(&self) -> usize {
        match self {
            Self::Categorical(m) => m.dim(),
            Self::Probabilistic(m) => m.dim(),
        }
    }

    pub fn as_categorical(&self) -> Result<&SquareMatrix<EntailmentClass>> {
        match self {
            Self::Categorical(m) => Ok(m),
            Self::Probabilistic(_) => Err(Error::CategoricalRequired),
        }
    }

    pub fn as_probabilistic(&self) -> Result<&SquareMatrix<T>> {
        match self {
            Self::Probabilistic(m) => Ok(m),
            Self::Categorical(_) => Err(Error::ProbabilisticRequired),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use EntailmentClass::*;

    #[test]
    fn diagonal_forced() {
        let j = JudgmentMatrix::<f64>::probabilistic(vec![vec![0.2, 0.5], vec![0.5, 0.0]]).unwrap();
        let m = j.as_probabilistic().unwrap();
        assert_eq!((m.at(0, 0), m.at(1, 1)), (1.0, 1.0));

        let j = JudgmentMatrix::<f64>::categorical(vec![vec![Neutral, Neutral], vec![Neutral, Neutral]])
            .unwrap();
        assert_eq!(*j.as_categorical().unwrap().get(1, 1), Entailment);
    }

    #[test]
    fn rejects_bad_shapes_and_values() {
        assert!(matches!(
            JudgmentMatrix::<f64>::probabilistic(vec![vec![1.0, 0.5], vec![0.5]]),
            Err(Error::NotSquare { .. })
        ));
        assert!(matches!(
            JudgmentMatrix::<f64>::probabilistic(vec![vec![1.0, 1.5], vec![0.5, 1.0]]),
            Err(Error::ProbabilityOutOfRange { .. })
        ));
        assert!(JudgmentMatrix::<f64>::probabilistic(vec![vec![1.0, f64::NAN], vec![0.5, 1.0]]).is_err());
        assert_eq!(JudgmentMatrix::<f64>::probabilistic(vec![]), Err(Error::EmptySample));
    }

    #[test]
    fn parse_classes() {
        assert_eq!("Entailment".parse::<EntailmentClass>(), Ok(Entailment));
        assert!("maybe".parse::<EntailmentClass>().is_err());
    }
}
