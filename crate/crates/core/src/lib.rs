//! Iterated prisoner's dilemma simulation and extortion detection.
//!
//! The crate is split into four layers:
//!
//! - [`engine`]: strategies, seeded matches and round-robin tournaments.
//! - [`zd`]: zero-determinant geometry. Exact membership tests for the
//!   extortionate plane, measurement of memory-one vectors from play
//!   histories and the least-squares fit that yields `SSE` and `chi`.
//! - [`dynamics`]: payoff matrices, replicator dynamics and Moran fixation.
//! - [`stats`]: distribution summaries, rankings and ordinary least squares.
//!
//! [`report`] holds the CSV schemas shared by the command-line tool and
//! [`analysis`] chains the layers into the full pipeline.

pub mod analysis;
pub mod dynamics;
pub mod engine;
mod error;
pub mod report;
pub mod stats;
pub mod zd;

pub use error::{Error, Result};
