use super::action::{Side, Turn};
use super::payoffs::PayoffParams;
use crate::{Error, Result};

/// The ordered rounds of one match, focal player first.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MatchHistory {
    turns: Vec<Turn>,
}

impl MatchHistory {
    pub fn new(turns: Vec<Turn>) -> Self {
        MatchHistory { turns }
    }

    pub fn turns(&self) -> &[Turn] {
        &self.turns
    }

    pub fn len(&self) -> usize {
        self.turns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.turns.is_empty()
    }

    /// The history with the roles of the two players exchanged.
    pub fn transposed(&self) -> MatchHistory {
        MatchHistory::new(self.turns.iter().map(|t| t.swapped()).collect())
    }

    /// The history as seen by `side`.
    pub fn seen_from(&self, side: Side) -> MatchHistory {
        match side {
            Side::A => self.clone(),
            Side::B => self.transposed(),
        }
    }
}

impl FromIterator<Turn> for MatchHistory {
    fn from_iter<I: IntoIterator<Item = Turn>>(iter: I) -> Self {
        MatchHistory::new(iter.into_iter().collect())
    }
}

/// Total match scores of both players.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MatchScore {
    pub focal: f64,
    pub opponent: f64,
    pub turns: usize,
}

impl MatchScore {
    pub fn focal_per_turn(&self) -> f64 {
        self.focal / self.turns as f64
    }

    pub fn opponent_per_turn(&self) -> f64 {
        self.opponent / self.turns as f64
    }

    pub fn swapped(&self) -> MatchScore {
        MatchScore { focal: self.opponent, opponent: self.focal, turns: self.turns }
    }
}

pub fn score_history(history: &MatchHistory, payoffs: &PayoffParams) -> Result<MatchScore> {
    if history.is_empty() {
        return Err(Error::EmptyHistory);
    }
    let (focal, opponent) = history.turns().iter().fold((0.0, 0.0), |(f, o), &turn| {
        let (pf, po) = payoffs.payoff(turn);
        (f + pf, o + po)
    });
    Ok(MatchScore { focal, opponent, turns: history.len() })
}

/// Empirical frequencies of the joint states CC, CD, DC, DD.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct StateDistribution(pub [f64; 4]);

impl StateDistribution {
    pub fn cc(&self) -> f64 {
        self.0[0]
    }
    pub fn cd(&self) -> f64 {
        self.0[1]
    }
    pub fn dc(&self) -> f64 {
        self.0[2]
    }
    pub fn dd(&self) -> f64 {
        self.0[3]
    }
}

pub fn state_distribution(history: &MatchHistory) -> Result<StateDistribution> {
    if history.is_empty() {
        return Err(Error::EmptyHistory);
    }
    let mut counts = [0usize; 4];
    for turn in history.turns() {
        counts[turn.state_index()] += 1;
    }
    let n = history.len() as f64;
    Ok(StateDistribution(counts.map(|c| c as f64 / n)))
}
