use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Conditional cooperation probabilities after CC, CD, DC, DD (own action
/// first).
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 4]", into = "[f64; 4]")]
pub struct MemoryOneVector([f64; 4]);

impl MemoryOneVector {
    pub fn new(p: [f64; 4]) -> Result<Self> {
        for (i, &v) in p.iter().enumerate() {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::InvalidProbability { what: format!("p{}", i + 1), value: v });
            }
        }
        Ok(MemoryOneVector(p))
    }

    pub fn as_array(&self) -> [f64; 4] {
        self.0
    }

    /// `(p1 - 1, p2 - 1, p3, p4)`.
    pub fn transformed(&self) -> TransformedVector {
        let [p1, p2, p3, p4] = self.0;
        TransformedVector([p1 - 1.0, p2 - 1.0, p3, p4])
    }
}

impl TryFrom<[f64; 4]> for MemoryOneVector {
    type Error = Error;

    fn try_from(p: [f64; 4]) -> Result<Self> {
        MemoryOneVector::new(p)
    }
}

impl From<MemoryOneVector> for [f64; 4] {
    fn from(p: MemoryOneVector) -> Self {
        p.0
    }
}

/// A vector in transformed coordinates `(p1 - 1, p2 - 1, p3, p4)`.
///
/// Projections onto the extortion plane land here and may fall outside the
/// image of `[0, 1]^4`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TransformedVector(pub [f64; 4]);

impl TransformedVector {
    /// Maps back to probability coordinates, without clamping.
    pub fn to_probabilities(&self) -> [f64; 4] {
        let [a, b, c, d] = self.0;
        [a + 1.0, b + 1.0, c, d]
    }

    pub fn norm_squared(&self) -> f64 {
        self.0.iter().map(|v| v * v).sum()
    }
}
