//! Dense square matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Row-major square matrix.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SquareMatrix<E> {
    dim: usize,
    data: Vec<E>,
}

impl<E: Clone> SquareMatrix<E> {
    pub fn filled(dim: usize, value: E) -> Self {
        Self {
            dim,
            data: vec![value; dim * dim],
        }
    }

    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != dim {
                return Err(Error::NotSquare {
                    row,
                    len: r.len(),
                    expected: dim,
                });
            }
            data.extend(r);
        }
        Ok(Self { dim, data })
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(dim * dim);
        for i in 0..dim {
            for j in 0..dim {
                data.push(f(i, j));
            }
        }
        Self { dim, data }
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        self.data.chunks(self.dim.max(1)).map(<[E]>::to_vec).take(self.dim).collect()
    }
}

impl<E> SquareMatrix<E> {
    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.dim + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: E) {
        self.data[i * self.dim + j] = value;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn map<F, G: FnMut(&E) -> F>(&self, f: G) -> SquareMatrix<F> {
        SquareMatrix {
            dim: self.dim,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Scalar> SquareMatrix<T> {
    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, |i, j| if i == j { T::one() } else { T::zero() })
    }

    pub fn at(&self, i: usize, j: usize) -> T {
        self.data[i * self.dim + j]
    }

    pub fn trace(&self) -> T {
        (0..self.dim).map(|i| self.at(i, i)).sum()
    }

    /// Largest absolute asymmetry `|m_ij - m_ji|` and where it occurs.
    pub fn max_asymmetry(&self) -> (usize, usize, T) {
        let mut worst = (0, 0, T::zero());
        for i in 0..self.dim {
            for j in (i + 1)..self.dim {
                let gap = (self.at(i, j) - self.at(j, i)).abs();
                if gap > worst.2 {
                    worst = (i, j, gap);
                }
            }
        }
        worst
    }

    pub fn max_abs(&self) -> T {
        self.data.iter().fold(T::zero(), |acc, v| acc.max(v.abs()))
    }

    pub fn ensure_symmetric(&self, tol: T) -> Result<()> {
        let (row, col, gap) = self.max_asymmetry();
        let scale = T::one().max(self.max_abs());
        if gap.is_nan() || gap > tol * scale {
            return Err(Error::NotSymmetric {
                row,
                col,
                gap: gap.as_f64(),
            });
        }
        Ok(())
    }

    pub fn ensure_finite(&self, what: &'static str) -> Result<()> {
        if self.data.iter().all(|v| v.is_finite()) {
            Ok(())
        } else {
            Err(Error::NonFinite(what))
        }
    }
}
