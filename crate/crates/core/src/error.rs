use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty sample")]
    EmptySample,

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },

    #[error("categorical judgments required")]
    CategoricalRequired,

    #[error("probabilistic judgments required")]
    ProbabilisticRequired,

    #[error("entry ({row}, {col}) = {value} is outside [0, 1]")]
    ProbabilityOutOfRange { row: usize, col: usize, value: f64 },

    #[error("non-finite value: {0}")]
    NonFinite(&'static str),

    #[error("matrix is not symmetric: |m[{row}][{col}] - m[{col}][{row}]| = {gap:e}")]
    NotSymmetric { row: usize, col: usize, gap: f64 },

    #[error("isolated node {0}; normalized Laplacian undefined")]
    IsolatedNode(usize),

    #[error("eigensolver did not converge")]
    EigenNoConvergence,

    #[error("{name} must be positive, got {value}")]
    NonPositive { name: &'static str, value: f64 },

    #[error("density matrix trace {0} deviates from 1")]
    TraceNotUnit(f64),

    #[error("undefined: all categories are singletons")]
    GoodTuringUndefined,

    #[error("coverage estimate zero; Chao-Shen undefined")]
    ChaoShenUndefined,

    #[error("adjusted frequency exceeds 1")]
    AdjustedFrequencyExceedsOne,

    #[error("response probabilities are all zero")]
    AllZeroProbabilities,

    #[error("negative response probability {0}")]
    NegativeProbability(f64),

    #[error("invalid distribution: {0}")]
    InvalidDistribution(String),

    #[error("true entropy is zero; ratios undefined")]
    ZeroEntropy,

    #[error("noise must lie in [0, 0.5), got {0}")]
    InvalidNoise(f64),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("AUROC needs at least one incorrect and one correct example")]
    SingleClass,

    #[error("comparison graph is not strongly connected; unregularized MLE diverges")]
    Disconnected,

    #[error("Bradley-Terry iteration did not converge after {iterations} iterations")]
    NoConvergence { iterations: usize },
}
