//! Match and tournament simulation.

mod action;
pub mod catalog;
mod history;
mod payoffs;
pub mod seed;
mod strategy;
mod tournament;

pub use action::{Action, Side, Turn};
pub use catalog::NamedStrategy;
pub use history::{score_history, state_distribution, MatchHistory, MatchScore, StateDistribution};
pub use payoffs::PayoffParams;
pub use strategy::{play_match, Classic, LookupTable, StrategySpec};
pub use tournament::{
    pair_index, run_tournament, run_tournament_with_threads, InteractionRecord, TournamentConfig,
};
