use std::cmp::Ordering;

use crate::engine::InteractionRecord;
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct RankEntry {
    pub index: usize,
    pub name: String,
    pub mean_score_per_turn: f64,
    /// Matches with a strictly higher total score than the opponent.
    pub wins: usize,
    pub losses: usize,
    pub ties: usize,
    pub matches: usize,
}

/// Two total orders over the corpus. Ties in either key fall back to the
/// strategy name.
#[derive(Clone, Debug, PartialEq)]
pub struct Rankings {
    pub by_score: Vec<RankEntry>,
    pub by_wins: Vec<RankEntry>,
}

impl Rankings {
    /// 1-based position of strategy `index` in the score order.
    pub fn score_rank(&self, index: usize) -> Option<usize> {
        self.by_score.iter().position(|e| e.index == index).map(|p| p + 1)
    }

    pub fn wins_rank(&self, index: usize) -> Option<usize> {
        self.by_wins.iter().position(|e| e.index == index).map(|p| p + 1)
    }
}

/// Ranks strategies over all matches between distinct strategies; self
/// interactions are ignored.
pub fn rank_strategies(names: &[String], records: &[InteractionRecord]) -> Result<Rankings> {
    if records.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut entries: Vec<RankEntry> = names
        .iter()
        .enumerate()
        .map(|(index, name)| RankEntry {
            index,
            name: name.clone(),
            mean_score_per_turn: 0.0,
            wins: 0,
            losses: 0,
            ties: 0,
            matches: 0,
        })
        .collect();
    let mut totals = vec![0.0; names.len()];
    for record in records.iter().filter(|r| !r.is_self_interaction()) {
        let (a, b) = (record.player_a, record.player_b);
        if a >= names.len() || b >= names.len() {
            return Err(Error::InvalidConfig(format!("record refers to strategy {a} or {b}")));
        }
        totals[a] += record.score.focal_per_turn();
        totals[b] += record.score.opponent_per_turn();
        entries[a].matches += 1;
        entries[b].matches += 1;
        match record.score.focal.partial_cmp(&record.score.opponent) {
            Some(Ordering::Greater) => {
                entries[a].wins += 1;
                entries[b].losses += 1;
            }
            Some(Ordering::Less) => {
                entries[b].wins += 1;
                entries[a].losses += 1;
            }
            _ => {
                entries[a].ties += 1;
                entries[b].ties += 1;
            }
        }
    }
    for (entry, total) in entries.iter_mut().zip(totals) {
        if entry.matches > 0 {
            entry.mean_score_per_turn = total / entry.matches as f64;
        }
    }

    let mut by_score = entries.clone();
    by_score.sort_by(|x, y| {
        y.mean_score_per_turn.total_cmp(&x.mean_score_per_turn).then_with(|| x.name.cmp(&y.name))
    });
    let mut by_wins = entries;
    by_wins.sort_by(|x, y| y.wins.cmp(&x.wins).then_with(|| x.name.cmp(&y.name)));
    Ok(Rankings { by_score, by_wins })
}
