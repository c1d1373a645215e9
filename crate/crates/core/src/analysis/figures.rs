use std::io::Write;

use super::{EvolutionStudy, TournamentAnalysis};
use crate::report::{float, DetectionRow};
use crate::stats::DistributionSummary;
use crate::Result;

pub const FIG1_HEADER: [&str; 8] =
    ["strategy", "opponent", "repetition", "score_rank", "wins_rank", "sse", "chi", "verdict"];

/// One row per detection row, with the measured player's ranks.
pub fn write_fig1<W: Write>(out: W, analysis: &TournamentAnalysis) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(FIG1_HEADER)?;
    let ranks = ranks(analysis);
    for r in &analysis.detection {
        let (score_rank, wins_rank) = ranks[analysis.index_of(&r.player_a).unwrap_or_default()];
        w.write_record([
            r.player_a.clone(),
            r.player_b.clone(),
            r.repetition.to_string(),
            score_rank.to_string(),
            wins_rank.to_string(),
            float(r.sse),
            float(r.chi),
            r.verdict.as_str().to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

fn ranks(analysis: &TournamentAnalysis) -> Vec<(usize, usize)> {
    (0..analysis.names.len())
        .map(|i| (analysis.rankings.score_rank(i).unwrap_or(0), analysis.rankings.wins_rank(i).unwrap_or(0)))
        .collect()
}

pub const FIG2_HEADER: [&str; 9] =
    ["strategy", "opponent", "score_rank", "wins_rank", "sse_mean", "P_CC", "P_CD", "P_DC", "P_DD"];

/// Means over repetitions for every ordered pair present in the detection
/// rows.
pub fn write_fig2<W: Write>(out: W, analysis: &TournamentAnalysis) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(FIG2_HEADER)?;
    let ranks = ranks(analysis);
    for (i, focal) in analysis.names.iter().enumerate() {
        for opponent in &analysis.names {
            let rows: Vec<&DetectionRow> = analysis.rows_between(focal, opponent).collect();
            if rows.is_empty() {
                continue;
            }
            let n = rows.len() as f64;
            let sse = rows.iter().map(|r| r.sse).sum::<f64>() / n;
            let states: Vec<f64> = (0..4).map(|s| rows.iter().map(|r| r.states[s]).sum::<f64>() / n).collect();
            let mut fields = vec![focal.clone(), opponent.clone(), ranks[i].0.to_string(), ranks[i].1.to_string()];
            fields.push(float(sse));
            fields.extend(states.into_iter().map(float));
            w.write_record(&fields)?;
        }
    }
    w.flush()?;
    Ok(())
}

fn sse_fields(s: &DistributionSummary) -> [String; 4] {
    [s.mean, s.median, s.variance, s.skewness].map(float)
}

pub const FIG3_HEADER: [&str; 7] =
    ["strategy", "score_rank", "stationary_probability", "sse_mean", "sse_median", "sse_variance", "sse_skewness"];

pub fn write_fig3<W: Write>(out: W, study: &EvolutionStudy) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(FIG3_HEADER)?;
    for (k, name) in study.names.iter().enumerate() {
        let mut fields =
            vec![name.clone(), study.score_ranks[k].to_string(), float(study.replicator.population.as_slice()[k])];
        fields.extend(sse_fields(&study.sse[k]));
        w.write_record(&fields)?;
    }
    w.flush()?;
    Ok(())
}

pub const FIG4_HEADER: [&str; 8] = [
    "strategy",
    "score_rank",
    "mean_normalized_fixation",
    "mean_normalized_fixation_n2",
    "sse_mean",
    "sse_median",
    "sse_variance",
    "sse_skewness",
];

pub fn write_fig4<W: Write>(out: W, study: &EvolutionStudy) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(FIG4_HEADER)?;
    for (k, name) in study.names.iter().enumerate() {
        let mut fields = vec![
            name.clone(),
            study.score_ranks[k].to_string(),
            float(study.mean_normalized_fixation[k]),
            float(study.mean_normalized_fixation_n2[k]),
        ];
        fields.extend(sse_fields(&study.sse[k]));
        w.write_record(&fields)?;
    }
    w.flush()?;
    Ok(())
}
