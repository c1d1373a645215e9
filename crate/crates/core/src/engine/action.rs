use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// A single move. `C < D` is the fixed serialization order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Action {
    C,
    D,
}

impl Action {
    pub fn flip(self) -> Action {
        match self {
            Action::C => Action::D,
            Action::D => Action::C,
        }
    }

    pub fn is_cooperate(self) -> bool {
        self == Action::C
    }

    pub fn as_char(self) -> char {
        match self {
            Action::C => 'C',
            Action::D => 'D',
        }
    }

    pub fn from_char(c: char) -> Result<Action> {
        match c {
            'C' => Ok(Action::C),
            'D' => Ok(Action::D),
            other => Err(Error::InvalidStrategy(format!("`{other}` is not an action"))),
        }
    }

    /// Parses a string of `C`/`D` characters.
    pub fn parse_seq(s: &str) -> Result<Vec<Action>> {
        s.chars().map(Action::from_char).collect()
    }

    pub(crate) fn bit(self) -> usize {
        match self {
            Action::C => 0,
            Action::D => 1,
        }
    }
}

impl fmt::Display for Action {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Selects one of the two players of a match.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Side {
    A,
    B,
}

/// One round of play: the focal player's action first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Turn {
    pub focal: Action,
    pub opponent: Action,
}

impl Turn {
    pub const fn new(focal: Action, opponent: Action) -> Self {
        Turn { focal, opponent }
    }

    /// Index of the joint state in the order CC, CD, DC, DD.
    pub fn state_index(self) -> usize {
        2 * self.focal.bit() + self.opponent.bit()
    }

    pub fn from_state_index(index: usize) -> Turn {
        let action = |bit| if bit == 0 { Action::C } else { Action::D };
        Turn::new(action((index >> 1) & 1), action(index & 1))
    }

    /// The same round seen from the other player.
    pub fn swapped(self) -> Turn {
        Turn::new(self.opponent, self.focal)
    }

    pub fn seen_from(self, side: Side) -> Turn {
        match side {
            Side::A => self,
            Side::B => self.swapped(),
        }
    }
}

impl From<(Action, Action)> for Turn {
    fn from((focal, opponent): (Action, Action)) -> Self {
        Turn::new(focal, opponent)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn state_index_order() {
        use Action::*;
        let order: Vec<usize> = [(C, C), (C, D), (D, C), (D, D)]
            .into_iter()
            .map(|t| Turn::from(t).state_index())
            .collect();
        assert_eq!(order, vec![0, 1, 2, 3]);
        for i in 0..4 {
            assert_eq!(Turn::from_state_index(i).state_index(), i);
        }
    }

    #[test]
    fn ordering_is_c_before_d() {
        assert!(Action::C < Action::D);
        assert_eq!(Action::parse_seq("CDC").unwrap(), vec![Action::C, Action::D, Action::C]);
        assert!(Action::parse_seq("CX").is_err());
    }
}
