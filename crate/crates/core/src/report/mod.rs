//! CSV artifacts. Column sets are stable; floats use Rust's shortest
//! round-trip formatting so equal values always produce equal bytes.

mod detection;
mod interactions;
mod tables;

pub use detection::{
    detect_match, detection_rows, summarize_detection, write_detection, write_summary, DetectionRow,
    MetricSummary, Winner, DETECTION_HEADER, SUMMARY_HEADER, SUMMARY_METRICS,
};
pub use interactions::{
    read_interactions, record_views, write_interactions, LabeledMatch, MatchView, INTERACTION_HEADER,
};
pub use tables::{
    format_regression, read_payoff_matrix, write_fixation, write_payoff_matrix, write_stationary, FixationRow,
    FIXATION_HEADER, STATIONARY_HEADER,
};

/// Shortest round-trip formatting, with negative zero written as `0`.
pub(crate) fn float(v: f64) -> String {
    if v == 0.0 {
        "0".to_string()
    } else {
        format!("{v}")
    }
}
