//! Evolutionary dynamics over a measured payoff matrix.

mod moran;
mod payoff_matrix;
mod replicator;

pub use moran::{
    moran_fixation_analytic, moran_fixation_simulated, FixationMethod, FixationResult, MoranConfig,
};
pub use payoff_matrix::{build_payoff_matrix, PayoffMatrix};
pub use replicator::{
    replicator_field, replicator_stationary, PopulationVector, ReplicatorOptions, ReplicatorOutcome,
};
