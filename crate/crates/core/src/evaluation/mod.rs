//! Incorrectness-detection evaluation: AUROC with DeLong intervals and
//! Bradley-Terry tournaments between uncertainty methods.

mod auroc;
mod bradley_terry;
mod matches;
mod ranks;

pub use auroc::{auroc, auroc_scores, delong_ci, delong_scores, normal_quantile, AurocEstimate, ScoreRow, ScoreTable};
pub use bradley_terry::{bradley_terry_mm, BT_MAX_ITERATIONS, BT_TOLERANCE};
pub use matches::{point_estimate_matches, simulate_matches, EstimateCell, EstimateGrid, MatchRecord};
pub use ranks::{rank_cis, RankCiConfig, StrengthEstimate};
