use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;

use super::auroc::AurocEstimate;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::seed::{derive_seed, rng_from};

const MATCH_STREAM: u64 = 0x4d41_5443;

/// AUROC estimates of every method in one (model, dataset) cell. `None`
/// marks a method without an estimate in that cell.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateCell<T> {
    pub label: String,
    pub estimates: Vec<Option<AurocEstimate<T>>>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EstimateGrid<T> {
    pub methods: Vec<String>,
    pub cells: Vec<EstimateCell<T>>,
}

impl<T: Scalar> EstimateGrid<T> {
    pub fn new(methods: Vec<String>, cells: Vec<EstimateCell<T>>) -> Result<Self> {
        for c in &cells {
            if c.estimates.len() != methods.len() {
                return Err(Error::DimensionMismatch {
                    expected: methods.len(),
                    found: c.estimates.len(),
                });
            }
            for e in c.estimates.iter().flatten() {
                if !(e.value.is_finite() && e.ci_low.is_finite() && e.ci_high.is_finite()) {
                    return Err(Error::NonFinite("AUROC estimate"));
                }
                if !(e.ci_low <= e.ci_high) {
                    return Err(Error::InvalidConfig(format!("inverted interval in cell {:?}", c.label)));
                }
            }
        }
        Ok(Self { methods, cells })
    }

    pub fn num_methods(&self) -> usize {
        self.methods.len()
    }

    /// Grid restricted to the given cells (repeats allowed).
    pub fn resample(&self, cell_indices: &[usize]) -> Self {
        Self {
            methods: self.methods.clone(),
            cells: cell_indices.iter().map(|&i| self.cells[i].clone()).collect(),
        }
    }
}

/// Pairwise win counts; `wins[i][j]` is the number of matches `i` won against `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchRecord {
    pub methods: Vec<String>,
    pub wins: Vec<Vec<u64>>,
    /// Matches decided by the lower-index tie rule.
    pub ties: u64,
}

impl MatchRecord {
    pub fn new(methods: Vec<String>, wins: Vec<Vec<u64>>) -> Result<Self> {
        let m = methods.len();
        for (i, row) in wins.iter().enumerate() {
            if row.len() != m {
                return Err(Error::NotSquare {
                    row: i,
                    len: row.len(),
                    expected: m,
                });
            }
            if row[i] != 0 {
                return Err(Error::InvalidConfig("a method cannot play itself".into()));
            }
        }
        if wins.len() != m {
            return Err(Error::DimensionMismatch {
                expected: m,
                found: wins.len(),
            });
        }
        Ok(Self { methods, wins, ties: 0 })
    }

    fn empty(methods: Vec<String>) -> Self {
        let m = methods.len();
        Self {
            methods,
            wins: vec![vec![0; m]; m],
            ties: 0,
        }
    }

    pub fn total_wins(&self, i: usize) -> u64 {
        self.wins[i].iter().sum()
    }

    pub fn games(&self, i: usize, j: usize) -> u64 {
        self.wins[i][j] + self.wins[j][i]
    }

    fn absorb(&mut self, other: &MatchRecord) {
        for (row, orow) in self.wins.iter_mut().zip(&other.wins) {
            for (w, o) in row.iter_mut().zip(orow) {
                *w += o;
            }
        }
        self.ties += other.ties;
    }
}

fn cell_matches<T: Scalar>(methods: &[String], cell: &EstimateCell<T>, l: u64, seed: u64) -> MatchRecord {
    let mut record = MatchRecord::empty(methods.to_vec());
    let mut rng = rng_from(seed);
    let params: Vec<Option<(T, T)>> = cell
        .estimates
        .iter()
        .map(|e| e.map(|e| (e.value, e.sigma())))
        .collect();
    for i in 0..params.len() {
        for j in (i + 1)..params.len() {
            let (Some((mu_i, sd_i)), Some((mu_j, sd_j))) = (params[i], params[j]) else {
                continue;
            };
            for _ in 0..l {
                let zi: f64 = StandardNormal.sample(&mut rng);
                let zj: f64 = StandardNormal.sample(&mut rng);
                let xi = mu_i + sd_i * T::lit(zi);
                let xj = mu_j + sd_j * T::lit(zj);
                if xi > xj {
                    record.wins[i][j] += 1;
                } else if xj > xi {
                    record.wins[j][i] += 1;
                } else {
                    record.wins[i][j] += 1;
                    record.ties += 1;
                }
            }
        }
    }
    record
}

/// `l` matches per method pair and cell, each comparing draws from the two
/// methods' normal AUROC uncertainty distributions. Exact ties go to the
/// lower-index method and are counted in [`MatchRecord::ties`].
pub fn simulate_matches<T: Scalar>(grid: &EstimateGrid<T>, l: u64, seed: u64) -> Result<MatchRecord> {
    if l == 0 {
        return Err(Error::InvalidConfig("matches per pair must be >= 1".into()));
    }
    let per_cell: Vec<MatchRecord> = grid
        .cells
        .par_iter()
        .enumerate()
        .map(|(c, cell)| cell_matches(&grid.methods, cell, l, derive_seed(seed, MATCH_STREAM, c as u64)))
        .collect();
    let mut record = MatchRecord::empty(grid.methods.clone());
    for r in &per_cell {
        record.absorb(r);
    }
    Ok(record)
}

/// One match per cell and pair decided by the point estimates; equal values
/// award nothing.
pub fn point_estimate_matches<T: Scalar>(grid: &EstimateGrid<T>) -> MatchRecord {
    let mut record = MatchRecord::empty(grid.methods.clone());
    for cell in &grid.cells {
        for i in 0..cell.estimates.len() {
            for j in (i + 1)..cell.estimates.len() {
                if let (Some(a), Some(b)) = (cell.estimates[i], cell.estimates[j]) {
                    if a.value > b.value {
                        record.wins[i][j] += 1;
                    } else if b.value > a.value {
                        record.wins[j][i] += 1;
                    }
                }
            }
        }
    }
    record
}
