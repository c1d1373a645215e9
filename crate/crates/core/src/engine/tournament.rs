use rayon::prelude::*;

use super::catalog::NamedStrategy;
use super::history::{score_history, MatchHistory, MatchScore};
use super::payoffs::PayoffParams;
use super::seed;
use super::strategy::play_match;
use crate::{Error, Result};

#[derive(Clone, Debug)]
pub struct TournamentConfig {
    pub corpus: Vec<NamedStrategy>,
    pub turns: usize,
    pub repetitions: usize,
    pub master_seed: u64,
    pub payoffs: PayoffParams,
    pub include_self_interactions: bool,
}

impl TournamentConfig {
    pub const DEFAULT_TURNS: usize = 2000;
    pub const DEFAULT_REPETITIONS: usize = 60;

    /// Standard protocol: 2000 turns, 60 repetitions, payoffs (3, 0, 5, 1).
    pub fn new(corpus: Vec<NamedStrategy>, master_seed: u64) -> Self {
        TournamentConfig {
            corpus,
            turns: Self::DEFAULT_TURNS,
            repetitions: Self::DEFAULT_REPETITIONS,
            master_seed,
            payoffs: PayoffParams::STANDARD,
            include_self_interactions: false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.corpus.len() < 2 {
            return Err(Error::CorpusTooSmall(self.corpus.len()));
        }
        if self.turns == 0 {
            return Err(Error::InvalidConfig("turns must be positive".into()));
        }
        if self.repetitions == 0 {
            return Err(Error::InvalidConfig("repetitions must be positive".into()));
        }
        for entry in &self.corpus {
            entry.spec.validate()?;
        }
        Ok(())
    }

    pub fn names(&self) -> Vec<String> {
        self.corpus.iter().map(|s| s.name.clone()).collect()
    }

    /// Pairs `(i, j)` with `i <= j` in canonical order, diagonal included
    /// only when self interactions are on.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.corpus.len();
        (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.include_self_interactions || i != j)
            .collect()
    }
}

/// Position of `(i, j)`, `i <= j`, in the row-major enumeration of the upper
/// triangle of an `n x n` matrix, diagonal included.
///
/// Seeds depend on this index, so toggling self interactions leaves the
/// seeds of the off-diagonal matches unchanged.
pub fn pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < n);
    // rows before i hold n, n-1, ..., n-i+1 entries
    i * n - i * i.saturating_sub(1) / 2 + (j - i)
}

/// One played match of a tournament.
#[derive(Clone, Debug, PartialEq)]
pub struct InteractionRecord {
    pub pair_index: usize,
    pub player_a: usize,
    pub player_b: usize,
    pub repetition: usize,
    pub seed: u64,
    pub history: MatchHistory,
    pub score: MatchScore,
}

impl InteractionRecord {
    pub fn is_self_interaction(&self) -> bool {
        self.player_a == self.player_b
    }
}

/// Runs the round robin on rayon's global pool.
///
/// Records come back ordered by `(pair_index, repetition)`.
pub fn run_tournament(cfg: &TournamentConfig) -> Result<Vec<InteractionRecord>> {
    cfg.validate()?;
    let n = cfg.corpus.len();
    let jobs: Vec<(usize, usize, usize)> = cfg
        .pairs()
        .into_iter()
        .flat_map(|(i, j)| (0..cfg.repetitions).map(move |r| (i, j, r)))
        .collect();
    jobs.into_par_iter()
        .map(|(i, j, repetition)| {
            let index = pair_index(n, i, j);
            let seed = seed::match_seed(cfg.master_seed, index as u64, repetition as u64);
            let history = play_match(&cfg.corpus[i].spec, &cfg.corpus[j].spec, cfg.turns, seed);
            let score = score_history(&history, &cfg.payoffs)?;
            Ok(InteractionRecord {
                pair_index: index,
                player_a: i,
                player_b: j,
                repetition,
                seed,
                history,
                score,
            })
        })
        .collect()
}

/// Runs the round robin on a dedicated pool of `threads` workers.
pub fn run_tournament_with_threads(
    cfg: &TournamentConfig,
    threads: usize,
) -> Result<Vec<InteractionRecord>> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.max(1))
        .build()
        .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?;
    pool.install(|| run_tournament(cfg))
}
