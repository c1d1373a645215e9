use super::vector::MemoryOneVector;
use crate::engine::{MatchHistory, Side};
use crate::{Error, Result};

/// How to fill in states the focal player never visited.
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub enum Imputation {
    /// The focal player's cooperation rate over every turn of the match.
    #[default]
    OverallCooperationRate,
    Fixed(f64),
}

/// Memory-one behavior observed in one match.
#[derive(Clone, Debug, PartialEq)]
pub struct MeasuredProfile {
    pub cooperation_counts: [u64; 4],
    pub visit_counts: [u64; 4],
    pub p_hat: MemoryOneVector,
    pub imputed: [bool; 4],
    pub overall_cooperation_rate: f64,
}

/// Counts, for each state of turn `t` (focal action first), how often the
/// focal player cooperates at turn `t + 1`.
pub fn measure_memory_one(
    history: &MatchHistory,
    focal: Side,
    imputation: Imputation,
) -> Result<MeasuredProfile> {
    let turns = history.turns();
    if turns.len() < 2 {
        return Err(Error::InsufficientHistory { needed: 2, got: turns.len() });
    }
    let fill = match imputation {
        Imputation::Fixed(value) => {
            if !(0.0..=1.0).contains(&value) {
                return Err(Error::InvalidProbability { what: "imputation value".into(), value });
            }
            Some(value)
        }
        Imputation::OverallCooperationRate => None,
    };

    let mut cooperation_counts = [0u64; 4];
    let mut visit_counts = [0u64; 4];
    for window in turns.windows(2) {
        let state = window[0].seen_from(focal).state_index();
        visit_counts[state] += 1;
        if window[1].seen_from(focal).focal.is_cooperate() {
            cooperation_counts[state] += 1;
        }
    }
    let cooperations = turns.iter().filter(|t| t.seen_from(focal).focal.is_cooperate()).count();
    let overall_cooperation_rate = cooperations as f64 / turns.len() as f64;
    let fill = fill.unwrap_or(overall_cooperation_rate);

    let mut p = [0.0; 4];
    let mut imputed = [false; 4];
    for i in 0..4 {
        if visit_counts[i] > 0 {
            p[i] = cooperation_counts[i] as f64 / visit_counts[i] as f64;
        } else {
            p[i] = fill;
            imputed[i] = true;
        }
    }
    Ok(MeasuredProfile {
        cooperation_counts,
        visit_counts,
        p_hat: MemoryOneVector::new(p)?,
        imputed,
        overall_cooperation_rate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{Action, Turn};

    fn history(focal: &str, opponent: &str) -> MatchHistory {
        let f = Action::parse_seq(focal).unwrap();
        let o = Action::parse_seq(opponent).unwrap();
        f.into_iter().zip(o).map(Turn::from).collect()
    }

    #[test]
    fn one_visit_per_state() {
        // (C,C),(C,D),(D,C),(D,D),(C,C)
        let h = history("CCDDC", "CDCDC");
        let m = measure_memory_one(&h, Side::A, Imputation::OverallCooperationRate).unwrap();
        assert_eq!(m.visit_counts, [1, 1, 1, 1]);
        assert_eq!(m.p_hat.as_array(), [1.0, 0.0, 0.0, 1.0]);
        assert_eq!(m.imputed, [false; 4]);
        assert_eq!(m.visit_counts.iter().sum::<u64>(), 4);
    }

    #[test]
    fn all_cooperation_imputes_rate_one() {
        let h = history(&"C".repeat(10), &"C".repeat(10));
        let m = measure_memory_one(&h, Side::A, Imputation::OverallCooperationRate).unwrap();
        assert_eq!(m.p_hat.as_array(), [1.0; 4]);
        assert_eq!(m.imputed, [false, true, true, true]);
        assert_eq!(m.visit_counts, [9, 0, 0, 0]);
    }

    #[test]
    fn side_b_sees_transposed_states() {
        // from B's view the rounds are (C,D), (D,C), (C,C)
        let h = history("DCC", "CDC");
        let m = measure_memory_one(&h, Side::B, Imputation::Fixed(0.5)).unwrap();
        assert_eq!(m.visit_counts, [0, 1, 1, 0]);
        assert_eq!(m.cooperation_counts, [0, 0, 1, 0]);
        assert_eq!(m.p_hat.as_array(), [0.5, 0.0, 1.0, 0.5]);
    }

    #[test]
    fn overall_rate_includes_first_turn() {
        let h = history("CDD", "DDD");
        let m = measure_memory_one(&h, Side::A, Imputation::OverallCooperationRate).unwrap();
        assert!((m.overall_cooperation_rate - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(m.p_hat.as_array()[0], 1.0 / 3.0);
    }

    #[test]
    fn short_history_rejected() {
        let h = history("C", "C");
        assert!(matches!(
            measure_memory_one(&h, Side::A, Imputation::OverallCooperationRate),
            Err(Error::InsufficientHistory { .. })
        ));
        let h = history("CC", "CC");
        assert!(measure_memory_one(&h, Side::A, Imputation::Fixed(1.5)).is_err());
    }
}
