//! The full pipeline: tournament, detection, rankings, then evolutionary
//! dynamics on the measured payoff matrix and regressions of dynamics
//! outcomes on per-strategy `SSE` summaries.

mod figures;

use std::ops::RangeInclusive;

pub use figures::{write_fig1, write_fig2, write_fig3, write_fig4, FIG1_HEADER, FIG2_HEADER, FIG3_HEADER, FIG4_HEADER};

use crate::dynamics::{
    build_payoff_matrix, moran_fixation_analytic, replicator_stationary, PayoffMatrix, PopulationVector,
    ReplicatorOptions, ReplicatorOutcome,
};
use crate::engine::{run_tournament, InteractionRecord, TournamentConfig};
use crate::report::{
    detection_rows, record_views, summarize_detection, DetectionRow, FixationRow, MatchView, MetricSummary,
};
use crate::stats::{ols_fit, rank_strategies, summarize, DistributionSummary, Rankings, RegressionResult};
use crate::zd::{Imputation, DEFAULT_SSE_THRESHOLD};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AnalysisOptions {
    pub imputation: Imputation,
    pub sse_threshold: f64,
    /// Worker threads; `None` uses rayon's global pool.
    pub threads: Option<usize>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions { imputation: Imputation::default(), sse_threshold: DEFAULT_SSE_THRESHOLD, threads: None }
    }
}

/// Runs `job` on a dedicated pool of `threads` workers, or on the global
/// pool for `None`.
pub fn with_threads<T: Send>(threads: Option<usize>, job: impl FnOnce() -> Result<T> + Send) -> Result<T> {
    match threads {
        None => job(),
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::InvalidConfig(format!("thread pool: {e}")))?
            .install(job),
    }
}

/// A tournament with everything measured from it.
///
/// Self play always runs so the payoff matrix has a diagonal; whether it
/// shows up in `detection` and [`visible_records`](Self::visible_records)
/// follows `config.include_self_interactions`. Rankings never count it.
#[derive(Clone, Debug)]
pub struct TournamentAnalysis {
    pub config: TournamentConfig,
    pub names: Vec<String>,
    pub records: Vec<InteractionRecord>,
    pub detection: Vec<DetectionRow>,
    pub rankings: Rankings,
    pub summaries: Vec<MetricSummary>,
    pub matrix: PayoffMatrix,
}

impl TournamentAnalysis {
    pub fn run(config: &TournamentConfig, options: &AnalysisOptions) -> Result<Self> {
        with_threads(options.threads, || {
            let mut full = config.clone();
            full.include_self_interactions = true;
            let records = run_tournament(&full)?;
            let names = config.names();
            let views: Vec<MatchView<'_>> = record_views(&names, &records)
                .into_iter()
                .zip(&records)
                .filter(|(_, r)| config.include_self_interactions || !r.is_self_interaction())
                .map(|(v, _)| v)
                .collect();
            let detection = detection_rows(&views, &config.payoffs, options.imputation, options.sse_threshold)?;
            let rankings = rank_strategies(&names, &records)?;
            let summaries = summarize_detection(&detection, &names)?;
            let matrix = build_payoff_matrix(&names, &records, &config.payoffs)?;
            Ok(TournamentAnalysis { config: config.clone(), names, records, detection, rankings, summaries, matrix })
        })
    }

    pub fn visible_records(&self) -> Vec<&InteractionRecord> {
        self.records
            .iter()
            .filter(|r| self.config.include_self_interactions || !r.is_self_interaction())
            .collect()
    }

    /// The visible records labeled by strategy name.
    pub fn visible_views(&self) -> Vec<MatchView<'_>> {
        self.visible_records()
            .into_iter()
            .map(|r| MatchView {
                player_a: &self.names[r.player_a],
                player_b: &self.names[r.player_b],
                repetition: r.repetition,
                history: &r.history,
            })
            .collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// SSE values with `strategy` as the measured player.
    pub fn sse_values(&self, strategy: usize) -> Vec<f64> {
        let name = &self.names[strategy];
        self.detection.iter().filter(|r| &r.player_a == name).map(|r| r.sse).collect()
    }

    pub fn sse_summary(&self, strategy: usize) -> Result<DistributionSummary> {
        summarize(&self.sse_values(strategy))
    }

    pub fn rows_between<'a>(&'a self, focal: &'a str, opponent: &'a str) -> impl Iterator<Item = &'a DetectionRow> {
        self.detection.iter().filter(move |r| r.player_a == focal && r.player_b == opponent)
    }
}

pub const SSE_FEATURES: [&str; 4] = ["sse_mean", "sse_median", "sse_variance", "sse_skewness"];

fn features(s: &DistributionSummary) -> Vec<f64> {
    vec![s.mean, s.median, s.variance, s.skewness]
}

/// Dynamics over the strategies of an analysis that do not use the match
/// length.
#[derive(Debug)]
pub struct EvolutionStudy {
    /// Corpus indices of the strategies in `matrix`, in corpus order.
    pub strategies: Vec<usize>,
    pub names: Vec<String>,
    pub matrix: PayoffMatrix,
    /// 1-based rank by mean score among `strategies`.
    pub score_ranks: Vec<usize>,
    pub replicator: ReplicatorOutcome,
    /// Ordered by invader, resident, then population size.
    pub fixation: Vec<FixationRow>,
    pub sse: Vec<DistributionSummary>,
    /// Mean of `N x1` over residents and population sizes above 2.
    pub mean_normalized_fixation: Vec<f64>,
    /// Mean of `N x1` over residents at `N = 2`.
    pub mean_normalized_fixation_n2: Vec<f64>,
    pub replicator_regression: Result<RegressionResult>,
    pub fixation_regression: Result<RegressionResult>,
    pub fixation_regression_n2: Result<RegressionResult>,
}

impl EvolutionStudy {
    pub fn run(
        analysis: &TournamentAnalysis,
        replicator: &ReplicatorOptions,
        population_sizes: RangeInclusive<usize>,
    ) -> Result<Self> {
        if *population_sizes.start() < 2 || population_sizes.is_empty() {
            return Err(Error::InvalidConfig("population sizes must start at 2 or more".into()));
        }
        let strategies: Vec<usize> =
            (0..analysis.names.len()).filter(|&i| !analysis.config.corpus[i].uses_match_length).collect();
        if strategies.len() < 2 {
            return Err(Error::CorpusTooSmall(strategies.len()));
        }
        let matrix = analysis.matrix.submatrix(&strategies);
        let names = matrix.names().to_vec();
        let order: Vec<usize> =
            analysis.rankings.by_score.iter().map(|e| e.index).filter(|i| strategies.contains(i)).collect();
        let score_ranks = strategies.iter().map(|i| order.iter().position(|o| o == i).unwrap() + 1).collect();

        let outcome = replicator_stationary(&matrix, &PopulationVector::uniform(strategies.len()), replicator)?;

        let k = strategies.len();
        let mut fixation = Vec::new();
        let mut sums = vec![(0.0, 0usize); k];
        let mut sums_n2 = vec![(0.0, 0usize); k];
        for i in 0..k {
            for j in (0..k).filter(|&j| j != i) {
                let (a, b, c, d) = (matrix.get(i, i), matrix.get(i, j), matrix.get(j, i), matrix.get(j, j));
                for n in population_sizes.clone() {
                    let r = moran_fixation_analytic(a, b, c, d, n)?;
                    let bucket = if n == 2 { &mut sums_n2[i] } else { &mut sums[i] };
                    bucket.0 += r.normalized;
                    bucket.1 += 1;
                    fixation.push(FixationRow {
                        strategy_a: names[i].clone(),
                        strategy_b: names[j].clone(),
                        population_size: n,
                        x1: r.x1,
                        standard_error: r.standard_error,
                        normalized: r.normalized,
                    });
                }
            }
        }
        let mean = |(s, c): &(f64, usize)| if *c == 0 { f64::NAN } else { s / *c as f64 };
        let mean_normalized_fixation: Vec<f64> = sums.iter().map(mean).collect();
        let mean_normalized_fixation_n2: Vec<f64> = sums_n2.iter().map(mean).collect();

        let sse = strategies.iter().map(|&i| analysis.sse_summary(i)).collect::<Result<Vec<_>>>()?;
        let rows: Vec<Vec<f64>> = sse.iter().map(features).collect();
        let regress = |target: &[f64]| {
            if target.iter().any(|v| !v.is_finite()) {
                Err(Error::EmptyInput)
            } else {
                ols_fit(&rows, target)
            }
        };
        let replicator_regression = regress(outcome.population.as_slice());
        let fixation_regression = regress(&mean_normalized_fixation);
        let fixation_regression_n2 = regress(&mean_normalized_fixation_n2);

        Ok(EvolutionStudy {
            strategies,
            names,
            matrix,
            score_ranks,
            replicator: outcome,
            fixation,
            sse,
            mean_normalized_fixation,
            mean_normalized_fixation_n2,
            replicator_regression,
            fixation_regression,
            fixation_regression_n2,
        })
    }

    /// Strategies with stationary mass above `threshold`.
    pub fn survivors(&self, threshold: f64) -> Vec<usize> {
        (0..self.names.len()).filter(|&i| self.replicator.population.as_slice()[i] > threshold).collect()
    }
}
