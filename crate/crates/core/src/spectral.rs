//! Response graphs, Laplacians, heat-kernel densities and von Neumann entropy.

use crate::eigen::SymmetricEigen;
use crate::error::{Error, Result};
use crate::judgments::{EntailmentClass, JudgmentMatrix};
use crate::matrix::SquareMatrix;
use crate::scalar::{neumaier_sum, xlogx, Scalar};

/// Relative symmetry tolerance accepted by [`eigenvalues_sym`].
pub const SYMMETRY_TOL: f64 = 1e-10;
/// Eigenvalues in `(-CLAMP_TOL, 0)` are treated as numerical noise and set to 0.
pub const CLAMP_TOL: f64 = 1e-9;
/// Allowed deviation of a density matrix trace from 1.
pub const TRACE_TOL: f64 = 1e-8;
/// Default heat-kernel time scale.
pub const DEFAULT_HEAT_T: f64 = 0.3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    /// Mean entailment probabilities, unit diagonal.
    Eigv,
    /// Summed three-way scores, zero diagonal.
    Kle,
}

#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph<T> {
    pub weights: SquareMatrix<T>,
    pub kind: GraphKind,
}

/// Ascending eigenvalues of a symmetric matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    pub eigenvalues: Vec<T>,
}

/// Unit-trace positive semidefinite matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix<T> {
    pub matrix: SquareMatrix<T>,
}

/// `w_ij = (a_ij + a_ji) / 2`, diagonal 1.
pub fn weights_from_probabilities<T: Scalar>(judgments: &JudgmentMatrix<T>) -> Result<WeightedGraph<T>> {
    let a = judgments.as_probabilistic()?;
    let half = T::lit(0.5);
    let weights = SquareMatrix::from_fn(a.dim(), |i, j| {
        if i == j {
            T::one()
        } else {
            (a.at(i, j) + a.at(j, i)) * half
        }
    });
    Ok(WeightedGraph {
        weights,
        kind: GraphKind::Eigv,
    })
}

fn entailment_score<T: Scalar>(c: EntailmentClass) -> T {
    match c {
        EntailmentClass::Entailment => T::one(),
        EntailmentClass::Neutral => T::lit(0.5),
        EntailmentClass::Contradiction => T::zero(),
    }
}

/// `w_ij = g(i, j) + g(j, i)` with `g` = 1 / 0.5 / 0 for entailment / neutral /
/// contradiction; diagonal 0.
pub fn weights_from_classes<T: Scalar>(judgments: &JudgmentMatrix<T>) -> Result<WeightedGraph<T>> {
    let c = judgments.as_categorical()?;
    let weights = SquareMatrix::from_fn(c.dim(), |i, j| {
        if i == j {
            T::zero()
        } else {
            entailment_score::<T>(*c.get(i, j)) + entailment_score::<T>(*c.get(j, i))
        }
    });
    Ok(WeightedGraph {
        weights,
        kind: GraphKind::Kle,
    })
}

/// `I - D^{-1/2} W D^{-1/2}` with degrees including self-weights.
pub fn normalized_laplacian<T: Scalar>(g: &WeightedGraph<T>) -> Result<SquareMatrix<T>> {
    let w = &g.weights;
    let n = w.dim();
    let mut inv_sqrt = Vec::with_capacity(n);
    for i in 0..n {
        let deg = neumaier_sum(w.row(i).iter().copied());
        if !(deg > T::zero()) {
            return Err(Error::IsolatedNode(i));
        }
        inv_sqrt.push(deg.sqrt().recip());
    }
    Ok(SquareMatrix::from_fn(n, |i, j| {
        let scaled = w.at(i, j) * inv_sqrt[i] * inv_sqrt[j];
        if i == j {
            T::one() - scaled
        } else {
            -scaled
        }
    }))
}

/// `D - W` with `d_i = sum_{j != i} w_ij`.
pub fn standard_laplacian<T: Scalar>(g: &WeightedGraph<T>) -> SquareMatrix<T> {
    let w = &g.weights;
    let n = w.dim();
    let degrees: Vec<T> = (0..n)
        .map(|i| neumaier_sum((0..n).filter(|&j| j != i).map(|j| w.at(i, j))))
        .collect();
    SquareMatrix::from_fn(n, |i, j| if i == j { degrees[i] } else { -w.at(i, j) })
}

fn clamp_noise<T: Scalar>(v: T) -> T {
    if v < T::zero() && v > -T::lit(CLAMP_TOL) {
        T::zero()
    } else {
        v
    }
}

pub fn eigenvalues_sym<T: Scalar>(m: &SquareMatrix<T>) -> Result<Spectrum<T>> {
    m.ensure_finite("matrix entries")?;
    m.ensure_symmetric(T::lit(SYMMETRY_TOL))?;
    let eig = SymmetricEigen::new(m, false)?;
    Ok(Spectrum {
        eigenvalues: eig.values.into_iter().map(clamp_noise).collect(),
    })
}

/// `exp(-tL)` normalized to unit trace.
pub fn heat_kernel_density<T: Scalar>(laplacian: &SquareMatrix<T>, t: T) -> Result<DensityMatrix<T>> {
    if !(t > T::zero()) || !t.is_finite() {
        return Err(Error::NonPositive {
            name: "heat kernel t",
            value: t.as_f64(),
        });
    }
    laplacian.ensure_finite("laplacian entries")?;
    laplacian.ensure_symmetric(T::lit(SYMMETRY_TOL))?;
    let eig = SymmetricEigen::new(laplacian, true)?;
    let vecs = eig.vectors.expect("vectors requested");
    let n = laplacian.dim();
    let weights: Vec<T> = eig
        .values
        .iter()
        .map(|&l| (-t * clamp_noise(l)).exp())
        .collect();
    let total = neumaier_sum(weights.iter().copied());
    let matrix = SquareMatrix::from_fn(n, |i, j| {
        neumaier_sum((0..n).map(|c| vecs.at(i, c) * weights[c] * vecs.at(j, c))) / total
    });
    Ok(DensityMatrix { matrix })
}

/// `-sum lambda ln lambda` over the eigenvalues of `k`, in nats.
pub fn von_neumann_entropy<T: Scalar>(k: &DensityMatrix<T>) -> Result<T> {
    let trace = k.matrix.trace();
    if !((trace - T::one()).abs() <= T::lit(TRACE_TOL)) {
        return Err(Error::TraceNotUnit(trace.as_f64()));
    }
    let spectrum = eigenvalues_sym(&k.matrix)?;
    let h = -neumaier_sum(spectrum.eigenvalues.iter().map(|&l| xlogx(l.max(T::zero()))));
    Ok(h.max(T::zero()))
}
