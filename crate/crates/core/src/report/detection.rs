use std::io::Write;

use rayon::prelude::*;

use super::float;
use super::interactions::MatchView;
use crate::engine::{score_history, state_distribution, PayoffParams, Side};
use crate::stats::{summarize, DistributionSummary};
use crate::zd::{detect_extortion, fit_zd, measure_memory_one, Imputation, Verdict};
use crate::Result;

pub const DETECTION_HEADER: [&str; 22] = [
    "player_a",
    "player_b",
    "repetition",
    "p1",
    "p2",
    "p3",
    "p4",
    "v1",
    "v2",
    "v3",
    "v4",
    "alpha",
    "beta",
    "chi",
    "sse",
    "P_CC",
    "P_CD",
    "P_DC",
    "P_DD",
    "score_per_turn_a",
    "score_per_turn_b",
    "winner",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Winner {
    A,
    B,
    Tie,
}

impl Winner {
    pub fn as_str(&self) -> &'static str {
        match self {
            Winner::A => "a",
            Winner::B => "b",
            Winner::Tie => "tie",
        }
    }
}

/// Measured behavior of `player_a` in one match against `player_b`.
#[derive(Clone, Debug, PartialEq)]
pub struct DetectionRow {
    pub player_a: String,
    pub player_b: String,
    pub repetition: usize,
    /// Measured memory-one vector.
    pub p: [f64; 4],
    /// Nearest extortionate-subspace point, in probability coordinates.
    pub v: [f64; 4],
    pub alpha: f64,
    pub beta: f64,
    pub chi: f64,
    pub sse: f64,
    /// Fraction of turns in CC, CD, DC, DD, focal action first.
    pub states: [f64; 4],
    pub score_per_turn_a: f64,
    pub score_per_turn_b: f64,
    pub winner: Winner,
    pub verdict: Verdict,
    pub imputed: [bool; 4],
    pub visit_counts: [u64; 4],
}

fn detect_side(
    m: &MatchView<'_>,
    side: Side,
    payoffs: &PayoffParams,
    imputation: Imputation,
    sse_threshold: f64,
) -> Result<DetectionRow> {
    let history = m.history.seen_from(side);
    let profile = measure_memory_one(&history, Side::A, imputation)?;
    let fit = fit_zd(&profile.p_hat, payoffs)?;
    let score = score_history(&history, payoffs)?;
    let (player_a, player_b) = match side {
        Side::A => (m.player_a, m.player_b),
        Side::B => (m.player_b, m.player_a),
    };
    let winner = if score.focal > score.opponent {
        Winner::A
    } else if score.focal < score.opponent {
        Winner::B
    } else {
        Winner::Tie
    };
    Ok(DetectionRow {
        player_a: player_a.to_string(),
        player_b: player_b.to_string(),
        repetition: m.repetition,
        p: profile.p_hat.as_array(),
        v: fit.projected.to_probabilities(),
        alpha: fit.alpha,
        beta: fit.beta,
        chi: fit.chi,
        sse: fit.sse,
        states: state_distribution(&history)?.0,
        score_per_turn_a: score.focal_per_turn(),
        score_per_turn_b: score.opponent_per_turn(),
        winner,
        verdict: detect_extortion(&fit, sse_threshold),
        imputed: profile.imputed,
        visit_counts: profile.visit_counts,
    })
}

/// One row per side of the match, the measured player in `player_a`.
pub fn detect_match(
    m: &MatchView<'_>,
    payoffs: &PayoffParams,
    imputation: Imputation,
    sse_threshold: f64,
) -> Result<[DetectionRow; 2]> {
    Ok([
        detect_side(m, Side::A, payoffs, imputation, sse_threshold)?,
        detect_side(m, Side::B, payoffs, imputation, sse_threshold)?,
    ])
}

/// Rows for every match, in input order.
pub fn detection_rows(
    matches: &[MatchView<'_>],
    payoffs: &PayoffParams,
    imputation: Imputation,
    sse_threshold: f64,
) -> Result<Vec<DetectionRow>> {
    let pairs: Vec<[DetectionRow; 2]> = matches
        .par_iter()
        .map(|m| detect_match(m, payoffs, imputation, sse_threshold))
        .collect::<Result<_>>()?;
    Ok(pairs.into_iter().flatten().collect())
}

pub fn write_detection<W: Write>(out: W, rows: &[DetectionRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(DETECTION_HEADER)?;
    for r in rows {
        let mut fields = vec![r.player_a.clone(), r.player_b.clone(), r.repetition.to_string()];
        fields.extend(r.p.iter().chain(&r.v).map(|&x| float(x)));
        fields.extend([r.alpha, r.beta, r.chi, r.sse].map(float));
        fields.extend(r.states.iter().map(|&x| float(x)));
        fields.extend([float(r.score_per_turn_a), float(r.score_per_turn_b), r.winner.as_str().to_string()]);
        w.write_record(&fields)?;
    }
    w.flush()?;
    Ok(())
}

pub const SUMMARY_HEADER: [&str; 11] =
    ["strategy", "metric", "count", "mean", "median", "variance", "skewness", "min", "q1", "q3", "max"];

/// Per-strategy metrics, in summary CSV order. `chi` keeps finite values
/// only; `extortionate` is 1 for rows classified extortionate, else 0.
pub const SUMMARY_METRICS: [&str; 5] = ["sse", "chi", "P_DD", "score_per_turn", "extortionate"];

#[derive(Clone, Debug, PartialEq)]
pub struct MetricSummary {
    pub strategy: String,
    pub metric: &'static str,
    pub summary: DistributionSummary,
}

fn metric_value(row: &DetectionRow, metric: &str) -> f64 {
    match metric {
        "sse" => row.sse,
        "chi" => row.chi,
        "P_DD" => row.states[3],
        "score_per_turn" => row.score_per_turn_a,
        "extortionate" => f64::from(u8::from(row.verdict == Verdict::Extortionate)),
        _ => unreachable!("unknown metric {metric}"),
    }
}

/// Summaries of every metric for each strategy as the measured player,
/// in the order of `strategies`. Strategies without rows are skipped, as
/// are metrics with no finite values.
pub fn summarize_detection(rows: &[DetectionRow], strategies: &[String]) -> Result<Vec<MetricSummary>> {
    let mut out = Vec::new();
    for strategy in strategies {
        let own: Vec<&DetectionRow> = rows.iter().filter(|r| &r.player_a == strategy).collect();
        for metric in SUMMARY_METRICS {
            let values: Vec<f64> =
                own.iter().map(|r| metric_value(r, metric)).filter(|v| v.is_finite()).collect();
            if !values.is_empty() {
                out.push(MetricSummary { strategy: strategy.clone(), metric, summary: summarize(&values)? });
            }
        }
    }
    Ok(out)
}

pub fn write_summary<W: Write>(out: W, summaries: &[MetricSummary]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(SUMMARY_HEADER)?;
    for m in summaries {
        let s = &m.summary;
        let mut fields = vec![m.strategy.clone(), m.metric.to_string(), s.count.to_string()];
        fields.extend([s.mean, s.median, s.variance, s.skewness, s.min, s.q1, s.q3, s.max].map(float));
        w.write_record(&fields)?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::{Action, MatchHistory, Turn};

    fn history(a: &str, b: &str) -> MatchHistory {
        Action::parse_seq(a).unwrap().into_iter().zip(Action::parse_seq(b).unwrap()).map(Turn::from).collect()
    }

    fn rows(a: &str, b: &str) -> [DetectionRow; 2] {
        let h = history(a, b);
        let view = MatchView { player_a: "x", player_b: "y", repetition: 0, history: &h };
        detect_match(&view, &PayoffParams::STANDARD, Imputation::default(), 0.01).unwrap()
    }

    #[test]
    fn mutual_cooperation_row() {
        let [a, b] = rows("CCCCCCCCCC", "CCCCCCCCCC");
        assert_eq!(a.p, [1.0; 4]);
        assert_eq!(a.imputed, [false, true, true, true]);
        assert!((a.sse - 21.0 / 17.0).abs() < 1e-12);
        assert!((a.chi - 1.0 / 16.0).abs() < 1e-12);
        assert_eq!(a.states, [1.0, 0.0, 0.0, 0.0]);
        assert_eq!(a.winner, Winner::Tie);
        assert_eq!(a.verdict, Verdict::NotExtortionate);
        assert_eq!((b.player_a.as_str(), b.player_b.as_str()), ("y", "x"));
    }

    #[test]
    fn sides_are_mirrored() {
        let [a, b] = rows("CDDC", "DDCC");
        assert_eq!(a.states, [0.25, 0.25, 0.25, 0.25]);
        assert_eq!(a.score_per_turn_a, b.score_per_turn_b);
        assert_eq!(a.winner, Winner::Tie);
        let [a, b] = rows("DDDD", "CCCC");
        assert_eq!((a.winner, b.winner), (Winner::A, Winner::B));
        assert_eq!(a.states[2], 1.0);
        assert_eq!(b.states[1], 1.0);
        assert_eq!(a.score_per_turn_a, 5.0);
    }

    #[test]
    fn tit_for_tat_play_projects_onto_itself() {
        let [a, _] = rows("CCDDCCCDD", "CDDCCCDDC");
        assert_eq!(a.p, [1.0, 0.0, 1.0, 0.0]);
        assert_eq!(a.imputed, [false; 4]);
        for (v, p) in a.v.iter().zip(a.p) {
            assert!((v - p).abs() < 1e-12);
        }
        assert_eq!(a.verdict, Verdict::Boundary);
    }

    #[test]
    fn csv_layout() {
        let r = rows("CCCCCCCCCC", "CCCCCCCCCC");
        let mut out = Vec::new();
        write_detection(&mut out, &r).unwrap();
        let text = String::from_utf8(out).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), DETECTION_HEADER.join(","));
        let first: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert_eq!(first.len(), 22);
        assert_eq!(&first[..7], ["x", "y", "0", "1", "1", "1", "1"]);
        assert_eq!(first[15..19], ["1", "0", "0", "0"]);
        assert_eq!(first[21], "tie");
    }

    #[test]
    fn summaries_skip_non_finite_chi() {
        let mut all = rows("CCCCCCCCCC", "CCCCCCCCCC").to_vec();
        all[0].chi = f64::INFINITY;
        let s = summarize_detection(&all, &["x".into(), "y".into(), "z".into()]).unwrap();
        let metrics: Vec<_> = s.iter().map(|m| (m.strategy.as_str(), m.metric)).collect();
        assert_eq!(
            metrics,
            [
                ("x", "sse"),
                ("x", "P_DD"),
                ("x", "score_per_turn"),
                ("x", "extortionate"),
                ("y", "sse"),
                ("y", "chi"),
                ("y", "P_DD"),
                ("y", "score_per_turn"),
                ("y", "extortionate"),
            ]
        );
        let mut out = Vec::new();
        write_summary(&mut out, &s).unwrap();
        let text = String::from_utf8(out).unwrap();
        assert!(text.starts_with("strategy,metric,count,mean,median,variance,skewness,min,q1,q3,max\nx,sse,1,"));
    }
}
