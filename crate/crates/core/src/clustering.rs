//! Bidirectional entailment clustering.

use crate::error::Result;
use crate::judgments::JudgmentMatrix;
use crate::sample::Labeling;
use crate::scalar::Scalar;

pub use crate::judgments::EntailmentClass;

/// Two responses share a meaning only if each entails the other.
pub fn strict_equivalent(forward: EntailmentClass, backward: EntailmentClass) -> bool {
    forward == EntailmentClass::Entailment && backward == EntailmentClass::Entailment
}

/// Greedy clustering: each response joins the first class (in creation
/// order) whose first member it is strictly equivalent with, otherwise it
/// founds a new class.
pub fn bec_cluster<T: Scalar>(judgments: &JudgmentMatrix<T>) -> Result<Labeling> {
    let m = judgments.as_categorical()?;
    let n = m.dim();
    let mut representatives: Vec<usize> = Vec::new();
    let mut labels = Vec::with_capacity(n);
    for i in 0..n {
        let class = representatives
            .iter()
            .position(|&r| strict_equivalent(*m.get(r, i), *m.get(i, r)));
        match class {
            Some(c) => labels.push(c),
            None => {
                labels.push(representatives.len());
                representatives.push(i);
            }
        }
    }
    Labeling::new(labels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;
    use proptest::prelude::*;
    use EntailmentClass::*;

    fn matrix(n: usize, f: impl Fn(usize, usize) -> EntailmentClass) -> JudgmentMatrix<f64> {
        JudgmentMatrix::categorical((0..n).map(|i| (0..n).map(|j| f(i, j)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn strict_equivalence_table() {
        assert!(strict_equivalent(Entailment, Entailment));
        assert!(!strict_equivalent(Entailment, Neutral));
        assert!(!strict_equivalent(Contradiction, Contradiction));
        assert!(!strict_equivalent(Entailment, Contradiction));
    }

    #[test]
    fn examples() {
        let all = bec_cluster(&matrix(3, |_, _| Entailment)).unwrap();
        assert_eq!(all.labels(), &[0, 0, 0]);

        let none = bec_cluster(&matrix(3, |_, _| Contradiction)).unwrap();
        assert_eq!(none.labels(), &[0, 1, 2]);

        let mixed = bec_cluster(&matrix(3, |i, j| if i < 2 && j < 2 { Entailment } else { Neutral }))
            .unwrap();
        assert_eq!(mixed.labels(), &[0, 0, 1]);
    }

    #[test]
    fn compares_only_against_representative() {
        // 0~1, 1~2 but not 0~2: 2 must found its own class
        let m = matrix(3, |i, j| {
            if (i == 0 && j == 2) || (i == 2 && j == 0) {
                Neutral
            } else {
                Entailment
            }
        });
        assert_eq!(bec_cluster(&m).unwrap().labels(), &[0, 0, 1]);
    }

    #[test]
    fn probabilistic_rejected() {
        let p = JudgmentMatrix::<f64>::probabilistic(vec![vec![1.0]]).unwrap();
        assert_eq!(bec_cluster(&p), Err(Error::CategoricalRequired));
    }

    fn class_strategy() -> impl Strategy<Value = EntailmentClass> {
        prop_oneof![Just(Entailment), Just(Neutral), Just(Contradiction)]
    }

    proptest! {
        #[test]
        fn representative_property(
            n in 1usize..9,
            cells in prop::collection::vec(class_strategy(), 81),
        ) {
            let m = matrix(n, |i, j| cells[i * 9 + j]);
            let l = bec_cluster(&m).unwrap();
            prop_assert!(l.k() >= 1 && l.k() <= n);
            prop_assert_eq!(&l, &bec_cluster(&m).unwrap());
            let cat = m.as_categorical().unwrap();
            for i in 0..n {
                let first = l.labels().iter().position(|&c| c == l.labels()[i]).unwrap();
                prop_assert!(strict_equivalent(*cat.get(first, i), *cat.get(i, first)));
            }
        }
    }
}
