use serde::{Deserialize, Serialize};

use super::action::{Action, Turn};
use crate::{Error, Result};

/// Stage-game payoffs `(R, S, T, P)` for the row player.
///
/// The column player's payoffs are the permutation `(R, T, S, P)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PayoffParams {
    r: f64,
    s: f64,
    t: f64,
    p: f64,
}

impl PayoffParams {
    pub const STANDARD: PayoffParams = PayoffParams { r: 3.0, s: 0.0, t: 5.0, p: 1.0 };

    /// Requires `T > R > P > S` and `2P != S + T`.
    pub fn new(r: f64, s: f64, t: f64, p: f64) -> Result<Self> {
        if ![r, s, t, p].iter().all(|v| v.is_finite()) {
            return Err(Error::InvalidPayoffs("payoffs must be finite".into()));
        }
        if !(t > r && r > p && p > s) {
            return Err(Error::InvalidPayoffs(format!(
                "need T > R > P > S, got R={r} S={s} T={t} P={p}"
            )));
        }
        if 2.0 * p == s + t {
            return Err(Error::InvalidPayoffs("2P must differ from S + T".into()));
        }
        Ok(PayoffParams { r, s, t, p })
    }

    /// Parses `R,S,T,P`.
    pub fn parse(text: &str) -> Result<Self> {
        let values: Vec<f64> = text
            .split(',')
            .map(|v| v.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|e| Error::InvalidPayoffs(format!("`{text}`: {e}")))?;
        match values[..] {
            [r, s, t, p] => PayoffParams::new(r, s, t, p),
            _ => Err(Error::InvalidPayoffs(format!("expected 4 values R,S,T,P, got `{text}`"))),
        }
    }

    pub fn reward(&self) -> f64 {
        self.r
    }
    pub fn sucker(&self) -> f64 {
        self.s
    }
    pub fn temptation(&self) -> f64 {
        self.t
    }
    pub fn punishment(&self) -> f64 {
        self.p
    }

    /// `(R, S, T, P)` as an array.
    pub fn as_array(&self) -> [f64; 4] {
        [self.r, self.s, self.t, self.p]
    }

    /// Payoffs `(focal, opponent)` for one round.
    pub fn payoff(&self, turn: Turn) -> (f64, f64) {
        match (turn.focal, turn.opponent) {
            (Action::C, Action::C) => (self.r, self.r),
            (Action::C, Action::D) => (self.s, self.t),
            (Action::D, Action::C) => (self.t, self.s),
            (Action::D, Action::D) => (self.p, self.p),
        }
    }
}

impl Default for PayoffParams {
    fn default() -> Self {
        PayoffParams::STANDARD
    }
}
