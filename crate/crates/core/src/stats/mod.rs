//! Summaries, rankings and regression.

mod ols;
mod ranking;
mod summary;

pub use ols::{ols_fit, RegressionResult};
pub use ranking::{rank_strategies, RankEntry, Rankings};
pub use summary::{summarize, DistributionSummary};
