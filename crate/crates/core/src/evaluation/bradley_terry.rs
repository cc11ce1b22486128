use super::matches::MatchRecord;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Convergence threshold on the largest relative change of any strength.
pub const BT_TOLERANCE: f64 = 1e-10;
pub const BT_MAX_ITERATIONS: usize = 100_000;

/// Every method reachable from every other along "beat" edges.
fn strongly_connected(record: &MatchRecord) -> bool {
    let m = record.methods.len();
    let reach = |forward: bool| {
        let mut seen = vec![false; m];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for j in 0..m {
                let w = if forward { record.wins[i][j] } else { record.wins[j][i] };
                if w > 0 && !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        seen.into_iter().all(|s| s)
    };
    reach(true) && reach(false)
}

/// Bradley-Terry strengths by minorization-maximization, normalized to sum 1.
///
/// With `a > 0` every method also plays `a` virtual wins and `a` virtual
/// losses against a pseudo-opponent whose strength is the mean strength
/// (`1/m` after normalization), which keeps the MLE finite on any record:
///
/// ```text
/// beta_i <- (W_i + a) / (sum_j n_ij / (beta_i + beta_j) + 2a / (beta_i + 1/m))
/// ```
pub fn bradley_terry_mm<T: Scalar>(record: &MatchRecord, a: T) -> Result<Vec<T>> {
    let m = record.methods.len();
    if m == 0 {
        return Err(Error::EmptySample);
    }
    if !(a >= T::zero()) || !a.is_finite() {
        return Err(Error::InvalidConfig(format!("regularization must be >= 0, got {a}")));
    }
    if m == 1 {
        return Ok(vec![T::one()]);
    }
    if a == T::zero() && !strongly_connected(record) {
        return Err(Error::Disconnected);
    }

    let tol = T::lit(BT_TOLERANCE).max(T::epsilon() * T::lit(16.0));
    let mean = T::from_count(m).recip();
    let two_a = a + a;
    let wins: Vec<T> = (0..m).map(|i| T::lit(record.total_wins(i) as f64)).collect();
    let games: Vec<Vec<T>> = (0..m)
        .map(|i| (0..m).map(|j| T::lit(record.games(i, j) as f64)).collect())
        .collect();

    let mut beta = vec![mean; m];
    let mut next = vec![T::zero(); m];
    for _ in 0..BT_MAX_ITERATIONS {
        for i in 0..m {
            let mut denom = two_a / (beta[i] + mean);
            for j in 0..m {
                if j != i && games[i][j] > T::zero() {
                    denom += games[i][j] / (beta[i] + beta[j]);
                }
            }
            next[i] = (wins[i] + a) / denom;
        }
        let total: T = next.iter().copied().sum();
        let mut change = T::zero();
        for i in 0..m {
            next[i] /= total;
            change = change.max((next[i] - beta[i]).abs() / beta[i]);
        }
        std::mem::swap(&mut beta, &mut next);
        if !change.is_finite() {
            break;
        }
        if change < tol {
            return Ok(beta);
        }
    }
    Err(Error::NoConvergence {
        iterations: BT_MAX_ITERATIONS,
    })
}
