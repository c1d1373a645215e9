use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::action::{Action, Side, Turn};
use super::history::MatchHistory;
use super::seed;
use crate::zd::MemoryOneVector;
use crate::{Error, Result};

/// Largest supported lookup-table memory depth (4^6 = 4096 entries).
pub const MAX_LOOKUP_DEPTH: usize = 6;

/// A playable strategy description.
///
/// Every variant is total: it yields an action for any history.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StrategySpec {
    MemoryOne {
        p: MemoryOneVector,
        initial_cooperation_probability: f64,
    },
    LookupTable(LookupTable),
    Classic(Classic),
}

/// The classic named strategies.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name")]
pub enum Classic {
    Cooperator,
    Defector,
    TitForTat,
    /// Opens C, then alternates its own previous move.
    Alternator,
    /// Cooperates until the opponent first defects, then defects forever.
    Grudger,
    /// Repeats its move after R or T, switches after S or P.
    WinStayLoseShift,
    /// Cooperates with probability `p` each round.
    Random { p: f64 },
}

impl StrategySpec {
    pub fn memory_one(p: [f64; 4], initial_cooperation_probability: f64) -> Result<Self> {
        let spec = StrategySpec::MemoryOne {
            p: MemoryOneVector::new(p)?,
            initial_cooperation_probability,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let check = |what: &str, value: f64| {
            if (0.0..=1.0).contains(&value) {
                Ok(())
            } else {
                Err(Error::InvalidProbability { what: what.to_string(), value })
            }
        };
        match self {
            StrategySpec::MemoryOne { p, initial_cooperation_probability } => {
                for (i, &v) in p.as_array().iter().enumerate() {
                    check(&format!("p{}", i + 1), v)?;
                }
                check("initial cooperation probability", *initial_cooperation_probability)
            }
            StrategySpec::LookupTable(table) => table.validate(),
            StrategySpec::Classic(Classic::Random { p }) => check("random cooperation", *p),
            StrategySpec::Classic(_) => Ok(()),
        }
    }

    /// True when the strategy never consumes randomness in a way that can
    /// change its play.
    pub fn is_deterministic(&self) -> bool {
        let certain = |v: f64| v == 0.0 || v == 1.0;
        match self {
            StrategySpec::MemoryOne { p, initial_cooperation_probability } => {
                p.as_array().iter().all(|&v| certain(v)) && certain(*initial_cooperation_probability)
            }
            StrategySpec::LookupTable(_) => true,
            StrategySpec::Classic(Classic::Random { p }) => certain(*p),
            StrategySpec::Classic(_) => true,
        }
    }
}

/// A deterministic strategy keyed on the last `depth` joint actions.
///
/// Windows are indexed oldest round first, each round contributing its
/// joint-state index (CC=0, CD=1, DC=2, DD=3, own action first) as one
/// base-4 digit.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "LookupTableRepr", into = "LookupTableRepr")]
pub struct LookupTable {
    depth: usize,
    table: Vec<Action>,
    opening: Vec<Action>,
}

impl LookupTable {
    pub fn new(depth: usize, table: Vec<Action>, opening: Vec<Action>) -> Result<Self> {
        let table = LookupTable { depth, table, opening };
        table.validate()?;
        Ok(table)
    }

    /// Builds the table by evaluating `rule` on every window.
    pub fn from_fn(depth: usize, opening: Vec<Action>, rule: impl Fn(&[Turn]) -> Action) -> Result<Self> {
        if depth == 0 || depth > MAX_LOOKUP_DEPTH {
            return Err(Error::InvalidStrategy(format!("lookup depth {depth} out of range")));
        }
        let table = (0..4usize.pow(depth as u32))
            .map(|index| rule(&Self::window(depth, index)))
            .collect();
        LookupTable::new(depth, table, opening)
    }

    /// Decodes a table index back to its window, oldest round first.
    pub fn window(depth: usize, index: usize) -> Vec<Turn> {
        (0..depth)
            .rev()
            .map(|k| Turn::from_state_index((index >> (2 * k)) & 3))
            .collect()
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn table(&self) -> &[Action] {
        &self.table
    }

    pub fn opening(&self) -> &[Action] {
        &self.opening
    }

    fn validate(&self) -> Result<()> {
        if self.depth == 0 || self.depth > MAX_LOOKUP_DEPTH {
            return Err(Error::InvalidStrategy(format!("lookup depth {} out of range", self.depth)));
        }
        if self.table.len() != 4usize.pow(self.depth as u32) {
            return Err(Error::InvalidStrategy(format!(
                "lookup table of depth {} needs {} entries, got {}",
                self.depth,
                4usize.pow(self.depth as u32),
                self.table.len()
            )));
        }
        if self.opening.len() != self.depth {
            return Err(Error::InvalidStrategy(format!(
                "lookup table of depth {} needs {} opening moves, got {}",
                self.depth,
                self.depth,
                self.opening.len()
            )));
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
struct LookupTableRepr {
    depth: usize,
    table: String,
    opening: String,
}

impl TryFrom<LookupTableRepr> for LookupTable {
    type Error = Error;

    fn try_from(repr: LookupTableRepr) -> Result<Self> {
        LookupTable::new(repr.depth, Action::parse_seq(&repr.table)?, Action::parse_seq(&repr.opening)?)
    }
}

impl From<LookupTable> for LookupTableRepr {
    fn from(t: LookupTable) -> Self {
        LookupTableRepr {
            depth: t.depth,
            table: t.table.iter().map(|a| a.as_char()).collect(),
            opening: t.opening.iter().map(|a| a.as_char()).collect(),
        }
    }
}

/// A strategy bound to one side of a running match.
struct Player<'a> {
    spec: &'a StrategySpec,
    side: Side,
    rng: ChaCha8Rng,
    grudge: bool,
}

impl<'a> Player<'a> {
    fn new(spec: &'a StrategySpec, side: Side, match_seed: u64) -> Self {
        Player {
            spec,
            side,
            rng: ChaCha8Rng::seed_from_u64(seed::player_seed(match_seed, side)),
            grudge: false,
        }
    }

    fn cooperate_with(&mut self, probability: f64) -> Action {
        // one draw per round so the stream position only depends on the round
        if self.rng.gen::<f64>() < probability {
            Action::C
        } else {
            Action::D
        }
    }

    /// `history` is stored from side A's point of view.
    fn decide(&mut self, history: &[Turn]) -> Action {
        let side = self.side;
        let last = history.last().map(|t| t.seen_from(side));
        match self.spec {
            StrategySpec::MemoryOne { p, initial_cooperation_probability } => {
                let probability = match last {
                    None => *initial_cooperation_probability,
                    Some(turn) => p.as_array()[turn.state_index()],
                };
                self.cooperate_with(probability)
            }
            StrategySpec::LookupTable(table) => {
                let n = history.len();
                if n < table.depth {
                    table.opening[n]
                } else {
                    let index = history[n - table.depth..]
                        .iter()
                        .fold(0usize, |acc, t| acc * 4 + t.seen_from(side).state_index());
                    table.table[index]
                }
            }
            StrategySpec::Classic(classic) => match (classic, last) {
                (Classic::Cooperator, _) => Action::C,
                (Classic::Defector, _) => Action::D,
                (Classic::Random { p }, _) => self.cooperate_with(*p),
                (_, None) => Action::C,
                (Classic::TitForTat, Some(turn)) => turn.opponent,
                (Classic::Alternator, Some(turn)) => turn.focal.flip(),
                (Classic::Grudger, Some(turn)) => {
                    self.grudge |= turn.opponent == Action::D;
                    if self.grudge {
                        Action::D
                    } else {
                        Action::C
                    }
                }
                (Classic::WinStayLoseShift, Some(turn)) => {
                    if turn.opponent == Action::C {
                        turn.focal
                    } else {
                        turn.focal.flip()
                    }
                }
            },
        }
    }
}

/// Plays `turns` rounds of `a` (focal) against `b`.
///
/// Each player draws from its own ChaCha8 stream derived from `seed` and its
/// side, so the result is a pure function of the arguments and one player's
/// strategy never shifts the other's random stream.
///
/// # Panics
///
/// Panics if `turns` is zero.
pub fn play_match(a: &StrategySpec, b: &StrategySpec, turns: usize, seed: u64) -> MatchHistory {
    assert!(turns >= 1, "a match needs at least one turn");
    let mut player_a = Player::new(a, Side::A, seed);
    let mut player_b = Player::new(b, Side::B, seed);
    let mut history = Vec::with_capacity(turns);
    for _ in 0..turns {
        let move_a = player_a.decide(&history);
        let move_b = player_b.decide(&history);
        history.push(Turn::new(move_a, move_b));
    }
    MatchHistory::new(history)
}
