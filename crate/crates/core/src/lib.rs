//! Small-sample semantic entropy and semantic alphabet size estimation for
//! black-box uncertainty quantification of sampled language-model answers.
//!
//! All numerics are generic over [`Scalar`] (`f32` or `f64`); the `*64`
//! aliases below fix the common double-precision case. Entropies are in nats.

pub mod alphabet;
pub mod clustering;
pub mod eigen;
pub mod entropy;
pub mod error;
pub mod evaluation;
pub mod judgments;
pub mod matrix;
pub mod rouge;
pub mod sample;
pub mod scalar;
pub mod seed;
pub mod simulation;
pub mod spectral;

pub use alphabet::{eigv_size, good_turing_size, hybrid_from_parts, hybrid_size, num_sets, AlphabetEstimate, AlphabetMethod};
pub use clustering::{bec_cluster, strict_equivalent};
pub use entropy::{chao_shen, hybrid_entropy, kle, plugin_dse, predictive_entropy, snne, whitebox_se, EntropyMethod, SnneConfig, UncertaintyScore};
pub use error::{Error, Result};
pub use judgments::{EntailmentClass, JudgmentMatrix};
pub use matrix::SquareMatrix;
pub use rouge::{rouge_l, tokenize, Tokenizer};
pub use sample::{tally, CategoryCounts, Labeling, ResponseSet};
pub use scalar::Scalar;
pub use simulation::{true_entropy, unseen_threshold, CategoricalDistribution, TrialConfig};
pub use spectral::{DensityMatrix, Spectrum, WeightedGraph};

pub type ResponseSet64 = ResponseSet<f64>;
pub type JudgmentMatrix64 = JudgmentMatrix<f64>;
pub type SquareMatrix64 = SquareMatrix<f64>;
pub type WeightedGraph64 = WeightedGraph<f64>;
pub type Spectrum64 = Spectrum<f64>;
pub type DensityMatrix64 = DensityMatrix<f64>;
pub type AlphabetEstimate64 = AlphabetEstimate<f64>;
pub type UncertaintyScore64 = UncertaintyScore<f64>;
pub type CategoricalDistribution64 = CategoricalDistribution<f64>;
pub type TrialConfig64 = TrialConfig<f64>;
pub type ScoreTable64 = evaluation::ScoreTable<f64>;
pub type AurocEstimate64 = evaluation::AurocEstimate<f64>;
pub type EstimateGrid64 = evaluation::EstimateGrid<f64>;
pub type StrengthEstimate64 = evaluation::StrengthEstimate<f64>;

pub type JudgmentMatrix32 = JudgmentMatrix<f32>;
pub type AlphabetEstimate32 = AlphabetEstimate<f32>;
pub type UncertaintyScore32 = UncertaintyScore<f32>;
