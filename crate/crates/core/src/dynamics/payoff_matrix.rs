use crate::engine::{score_history, InteractionRecord, PayoffParams};
use crate::{Error, Result};

/// Mean per-turn score `S[i][j]` of strategy `i` against strategy `j`.
#[derive(Clone, Debug, PartialEq)]
pub struct PayoffMatrix {
    names: Vec<String>,
    values: Vec<f64>,
}

impl PayoffMatrix {
    pub fn new(names: Vec<String>, rows: Vec<Vec<f64>>) -> Result<Self> {
        let n = names.len();
        if n == 0 {
            return Err(Error::EmptyInput);
        }
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidConfig(format!("payoff matrix must be {n}x{n}")));
        }
        if rows.iter().flatten().any(|v| !v.is_finite()) {
            return Err(Error::InvalidConfig("payoff matrix entries must be finite".into()));
        }
        Ok(PayoffMatrix { names, values: rows.concat() })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.len() + j]
    }

    pub fn row(&self, i: usize) -> &[f64] {
        let n = self.len();
        &self.values[i * n..(i + 1) * n]
    }

    /// `S x`
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        (0..self.len()).map(|i| self.row(i).iter().zip(x).map(|(a, b)| a * b).sum()).collect()
    }

    /// Restriction to the given strategy indices, in that order.
    pub fn submatrix(&self, keep: &[usize]) -> PayoffMatrix {
        let names = keep.iter().map(|&i| self.names[i].clone()).collect();
        let values = keep.iter().flat_map(|&i| keep.iter().map(move |&j| (i, j))).map(|(i, j)| self.get(i, j)).collect();
        PayoffMatrix { names, values }
    }
}

/// Averages per-turn scores over repetitions. Both orientations of every
/// record are used; self interactions fill the diagonal with the mean of
/// both players.
pub fn build_payoff_matrix(
    names: &[String],
    records: &[InteractionRecord],
    payoffs: &PayoffParams,
) -> Result<PayoffMatrix> {
    let n = names.len();
    let mut sums = vec![0.0; n * n];
    let mut counts = vec![0usize; n * n];
    for record in records {
        let (a, b) = (record.player_a, record.player_b);
        if a >= n || b >= n {
            return Err(Error::InvalidConfig(format!("record refers to strategy {a} or {b} of {n}")));
        }
        let score = score_history(&record.history, payoffs)?;
        sums[a * n + b] += score.focal_per_turn();
        counts[a * n + b] += 1;
        sums[b * n + a] += score.opponent_per_turn();
        counts[b * n + a] += 1;
    }
    for i in 0..n {
        for j in 0..n {
            if counts[i * n + j] == 0 {
                return Err(Error::MissingPair(names[i].clone(), names[j].clone()));
            }
        }
    }
    let values = sums.iter().zip(&counts).map(|(s, &c)| s / c as f64).collect();
    Ok(PayoffMatrix { names: names.to_vec(), values })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{catalog, run_tournament, TournamentConfig};

    fn matrix_for(names: &[&str], turns: usize) -> PayoffMatrix {
        let corpus = names.iter().map(|n| catalog::lookup(n).unwrap()).collect();
        let mut cfg = TournamentConfig::new(corpus, 3);
        cfg.turns = turns;
        cfg.repetitions = 2;
        cfg.include_self_interactions = true;
        let records = run_tournament(&cfg).unwrap();
        build_payoff_matrix(&cfg.names(), &records, &cfg.payoffs).unwrap()
    }

    #[test]
    fn deterministic_entries() {
        let s = matrix_for(&["Cooperator", "Defector"], 50);
        assert_eq!(s.get(1, 1), 1.0);
        assert_eq!(s.get(0, 1), 0.0);
        assert_eq!(s.get(1, 0), 5.0);
        assert_eq!(s.get(0, 0), 3.0);
    }

    #[test]
    fn extort_two_against_cooperator() {
        let s = matrix_for(&["Extort-2", "Cooperator"], 20_000);
        assert!((s.get(0, 1) - 3.5).abs() < 0.05, "{}", s.get(0, 1));
        assert!((s.get(1, 0) - 2.25).abs() < 0.05, "{}", s.get(1, 0));
    }

    #[test]
    fn missing_self_play_is_reported() {
        let corpus = ["Cooperator", "Defector"].iter().map(|n| catalog::lookup(n).unwrap()).collect();
        let mut cfg = TournamentConfig::new(corpus, 3);
        cfg.turns = 5;
        cfg.repetitions = 1;
        let records = run_tournament(&cfg).unwrap();
        let err = build_payoff_matrix(&cfg.names(), &records, &cfg.payoffs).unwrap_err();
        assert!(matches!(err, Error::MissingPair(ref a, ref b) if a == "Cooperator" && b == "Cooperator"));
    }
}
