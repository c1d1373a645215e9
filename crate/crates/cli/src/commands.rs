use std::collections::BTreeMap;
use std::fs::{self, File};
use std::io::{BufReader, Write};
use std::ops::RangeInclusive;
use std::path::Path;

use clap::{ArgGroup, Args};
use serde::Serialize;
use zdscan::analysis::{
    with_threads, write_fig1, write_fig2, write_fig3, write_fig4, AnalysisOptions, EvolutionStudy,
    TournamentAnalysis, SSE_FEATURES,
};
use zdscan::dynamics::{
    moran_fixation_analytic, moran_fixation_simulated, replicator_stationary, MoranConfig, PayoffMatrix,
    PopulationVector, ReplicatorOptions, ReplicatorOutcome,
};
use zdscan::engine::catalog::{self, NamedStrategy, CATALOG_VERSION};
use zdscan::engine::{play_match, score_history, seed, PayoffParams, TournamentConfig};
use zdscan::report::{
    detection_rows, format_regression, read_interactions, read_payoff_matrix, write_detection, write_fixation,
    write_interactions, write_payoff_matrix, write_stationary, write_summary, FixationRow, LabeledMatch,
};
use zdscan::stats::RegressionResult;
use zdscan::zd::Imputation;

use crate::output::{sha256_file, Manifest, OutputDir};
use crate::{Failure, GlobalArgs};

#[derive(Args, Debug, Serialize)]
pub struct TournamentArgs {
    /// Also write fig1/fig2 tables and the payoff matrix.
    #[arg(long)]
    pub figures: bool,
}

#[derive(Args, Debug, Serialize)]
pub struct DetectArgs {
    /// Interaction CSV.
    #[arg(long)]
    pub input: std::path::PathBuf,
}

#[derive(Args, Debug, Serialize)]
pub struct ReplicatorArgs {
    /// Payoff matrix CSV.
    #[arg(long)]
    pub matrix: std::path::PathBuf,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long = "t-max", default_value_t = 1e5)]
    pub t_max: f64,
}

#[derive(Args, Debug, Serialize)]
#[command(group(ArgGroup::new("method").required(true).args(["analytic", "simulate"])))]
pub struct MoranArgs {
    /// Evaluate the closed-form fixation probability.
    #[arg(long)]
    pub analytic: bool,
    /// Estimate fixation by simulating the process.
    #[arg(long)]
    pub simulate: bool,
    /// Mean payoffs a,b,c,d of A vs A, A vs B, B vs A, B vs B.
    #[arg(long = "payoffs-abcd", conflicts_with_all = ["strategy_a", "same_strategy", "simulate"])]
    pub payoffs_abcd: Option<String>,
    /// Invading strategy.
    #[arg(long = "strategy-a", requires = "strategy_b", conflicts_with = "same_strategy")]
    pub strategy_a: Option<String>,
    /// Resident strategy.
    #[arg(long = "strategy-b", requires = "strategy_a")]
    pub strategy_b: Option<String>,
    /// Use one strategy on both sides (neutral case).
    #[arg(long = "same-strategy")]
    pub same_strategy: Option<String>,
    /// Population size or inclusive range `LOW..HIGH`.
    #[arg(long = "N", default_value = "2..20")]
    pub population: String,
    /// Simulated trials per population size.
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct EvolveArgs {
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long = "t-max", default_value_t = 1e5)]
    pub t_max: f64,
    /// Population sizes for analytic fixation, `LOW..HIGH`.
    #[arg(long = "N", default_value = "2..20")]
    pub population: String,
}

fn flags<A: Serialize>(global: &GlobalArgs, args: &A) -> serde_json::Value {
    let mut merged = serde_json::to_value(global).expect("flags serialize");
    if let (Some(target), serde_json::Value::Object(extra)) =
        (merged.as_object_mut(), serde_json::to_value(args).expect("flags serialize"))
    {
        target.extend(extra);
    }
    merged
}

fn manifest<A: Serialize>(command: &str, global: &GlobalArgs, args: &A, digests: BTreeMap<String, String>) -> Manifest {
    Manifest {
        command: command.to_string(),
        version: env!("CARGO_PKG_VERSION").to_string(),
        flags: flags(global, args),
        seed: global.seed,
        catalog_version: CATALOG_VERSION.to_string(),
        input_digests: digests,
        outputs: Vec::new(),
    }
}

fn payoffs(global: &GlobalArgs) -> Result<PayoffParams, Failure> {
    PayoffParams::parse(&global.payoffs).map_err(|e| Failure::Input(format!("--payoffs: {e}")))
}

fn imputation(global: &GlobalArgs) -> Result<Imputation, Failure> {
    if global.impute == "rate" {
        return Ok(Imputation::OverallCooperationRate);
    }
    match global.impute.parse::<f64>() {
        Ok(v) if (0.0..=1.0).contains(&v) => Ok(Imputation::Fixed(v)),
        _ => Err(Failure::Input(format!("--impute must be `rate` or a probability, got {:?}", global.impute))),
    }
}

fn analysis_options(global: &GlobalArgs) -> Result<AnalysisOptions, Failure> {
    if !(global.sse_threshold >= 0.0) {
        return Err(Failure::Input("--sse-threshold must be nonnegative".into()));
    }
    Ok(AnalysisOptions { imputation: imputation(global)?, sse_threshold: global.sse_threshold, threads: global.threads })
}

fn read_text(path: &Path, digests: &mut BTreeMap<String, String>) -> Result<String, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    digests.insert(path.display().to_string(), sha256_file(path)?);
    Ok(text)
}

fn corpus(global: &GlobalArgs, digests: &mut BTreeMap<String, String>) -> Result<Vec<NamedStrategy>, Failure> {
    if let Some(path) = &global.corpus_file {
        let text = read_text(path, digests)?;
        return catalog::parse_corpus_json(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())));
    }
    if global.corpus.is_empty() {
        Ok(catalog::default_catalog())
    } else {
        Ok(catalog::resolve(&global.corpus)?)
    }
}

fn find_strategy(
    global: &GlobalArgs,
    name: &str,
    digests: &mut BTreeMap<String, String>,
) -> Result<NamedStrategy, Failure> {
    match &global.corpus_file {
        Some(_) => corpus(global, digests)?
            .into_iter()
            .find(|s| s.name == name)
            .ok_or_else(|| Failure::Input(format!("strategy `{name}` is not in the corpus file"))),
        None => Ok(catalog::lookup(name)?),
    }
}

fn tournament_config(global: &GlobalArgs, corpus: Vec<NamedStrategy>) -> Result<TournamentConfig, Failure> {
    let mut cfg = TournamentConfig::new(corpus, global.seed);
    cfg.turns = global.turns;
    cfg.repetitions = global.repetitions;
    cfg.payoffs = payoffs(global)?;
    cfg.include_self_interactions = global.include_self;
    cfg.validate()?;
    Ok(cfg)
}

fn population_sizes(text: &str) -> Result<RangeInclusive<usize>, Failure> {
    let bad = || Failure::Input(format!("--N expects `N` or `LOW..HIGH` with values of at least 2, got {text:?}"));
    let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
    let (low, high) = match text.split_once("..") {
        Some((low, high)) => (parse(low)?, parse(high.trim_start_matches('='))?),
        None => {
            let n = parse(text)?;
            (n, n)
        }
    };
    if low < 2 || high < low {
        return Err(bad());
    }
    Ok(low..=high)
}

fn write_tables(out: &mut OutputDir, analysis: &TournamentAnalysis, interactions: bool) -> Result<(), Failure> {
    if interactions {
        let views = analysis.visible_views();
        out.write("interactions.csv", |w| write_interactions(w, &views))?;
    }
    out.write("detection.csv", |w| write_detection(w, &analysis.detection))?;
    out.write("summary.csv", |w| write_summary(w, &analysis.summaries))?;
    Ok(())
}

fn write_figure_tables(out: &mut OutputDir, analysis: &TournamentAnalysis) -> Result<(), Failure> {
    out.write("fig1_sse_by_strategy.csv", |w| write_fig1(w, analysis))?;
    out.write("fig2_states.csv", |w| write_fig2(w, analysis))?;
    out.write("payoff_matrix.csv", |w| write_payoff_matrix(w, &analysis.matrix))
}

pub fn tournament(global: &GlobalArgs, args: &TournamentArgs) -> Result<(), Failure> {
    let mut digests = BTreeMap::new();
    let cfg = tournament_config(global, corpus(global, &mut digests)?)?;
    let analysis = TournamentAnalysis::run(&cfg, &analysis_options(global)?)?;
    let mut out = OutputDir::create(&global.out)?;
    write_tables(&mut out, &analysis, true)?;
    if args.figures {
        write_figure_tables(&mut out, &analysis)?;
    }
    manifest("tournament", global, args, digests).write(&mut out)
}

pub fn detect(global: &GlobalArgs, args: &DetectArgs) -> Result<(), Failure> {
    let mut digests = BTreeMap::new();
    let path = &args.input;
    let file = File::open(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let matches = read_interactions(BufReader::new(file))
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    digests.insert(path.display().to_string(), sha256_file(path)?);
    let views: Vec<_> = matches.iter().map(LabeledMatch::view).collect();
    let options = analysis_options(global)?;
    let payoffs = payoffs(global)?;
    let rows = with_threads(global.threads, || {
        detection_rows(&views, &payoffs, options.imputation, options.sse_threshold)
    })
    .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let mut out = OutputDir::create(&global.out)?;
    out.write("detection.csv", |w| write_detection(w, &rows))?;
    manifest("detect", global, args, digests).write(&mut out)
}

/// 1-based ranks by mean row payoff, ties by name.
fn ranks_by_mean_payoff(matrix: &PayoffMatrix) -> Vec<usize> {
    let n = matrix.len();
    let means: Vec<f64> = (0..n).map(|i| matrix.row(i).iter().sum::<f64>() / n as f64).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| means[b].total_cmp(&means[a]).then_with(|| matrix.names()[a].cmp(&matrix.names()[b])));
    let mut ranks = vec![0; n];
    for (position, &i) in order.iter().enumerate() {
        ranks[i] = position + 1;
    }
    ranks
}

fn replicator_options(tol: f64, t_max: f64) -> ReplicatorOptions {
    ReplicatorOptions { tol, t_max, ..ReplicatorOptions::default() }
}

fn convergence(outcome: &ReplicatorOutcome) -> Result<(), Failure> {
    if outcome.converged {
        Ok(())
    } else {
        Err(Failure::NotConverged(format!(
            "replicator dynamics did not converge by t = {} (max rate {:e})",
            outcome.time, outcome.max_rate
        )))
    }
}

pub fn replicator(global: &GlobalArgs, args: &ReplicatorArgs) -> Result<(), Failure> {
    let mut digests = BTreeMap::new();
    let path = &args.matrix;
    let file = File::open(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    let matrix =
        read_payoff_matrix(BufReader::new(file)).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    digests.insert(path.display().to_string(), sha256_file(path)?);
    let outcome = replicator_stationary(
        &matrix,
        &PopulationVector::uniform(matrix.len()),
        &replicator_options(args.tol, args.t_max),
    )?;
    let ranks = ranks_by_mean_payoff(&matrix);
    let mut out = OutputDir::create(&global.out)?;
    out.write("stationary.csv", |w| write_stationary(w, matrix.names(), &ranks, outcome.population.as_slice()))?;
    manifest("replicator", global, args, digests).write(&mut out)?;
    convergence(&outcome)
}

/// Mean per-turn payoffs `(a, b, c, d)` of the four pairings, averaged over
/// the configured repetitions.
fn pairing_payoffs(global: &GlobalArgs, a: &NamedStrategy, b: &NamedStrategy) -> Result<[f64; 4], Failure> {
    let payoffs = payoffs(global)?;
    if global.turns == 0 || global.repetitions == 0 {
        return Err(Failure::Input("--turns and --repetitions must be positive".into()));
    }
    let mean = |x: &NamedStrategy, y: &NamedStrategy, pair: u64| -> Result<(f64, f64), Failure> {
        let (mut sx, mut sy) = (0.0, 0.0);
        for r in 0..global.repetitions {
            let history = play_match(&x.spec, &y.spec, global.turns, seed::match_seed(global.seed, pair, r as u64));
            let score = score_history(&history, &payoffs)?;
            sx += score.focal_per_turn();
            sy += score.opponent_per_turn();
        }
        let n = global.repetitions as f64;
        Ok((sx / n, sy / n))
    };
    let (aa, _) = mean(a, a, 0)?;
    let (ab, ba) = mean(a, b, 1)?;
    let (bb, _) = mean(b, b, 2)?;
    Ok([aa, ab, ba, bb])
}

fn moran_pair(
    global: &GlobalArgs,
    args: &MoranArgs,
    digests: &mut BTreeMap<String, String>,
) -> Result<(NamedStrategy, NamedStrategy), Failure> {
    match (&args.same_strategy, &args.strategy_a, &args.strategy_b) {
        (Some(name), _, _) => {
            let s = find_strategy(global, name, digests)?;
            Ok((s.clone(), s))
        }
        (None, Some(a), Some(b)) => Ok((find_strategy(global, a, digests)?, find_strategy(global, b, digests)?)),
        _ => Err(Failure::Input("give --strategy-a and --strategy-b, or --same-strategy".into())),
    }
}

pub fn moran(global: &GlobalArgs, args: &MoranArgs) -> Result<(), Failure> {
    let mut digests = BTreeMap::new();
    let sizes = population_sizes(&args.population)?;
    let mut rows = Vec::new();
    if args.analytic {
        let (label_a, label_b, [a, b, c, d]) = match &args.payoffs_abcd {
            Some(text) => {
                let values: Vec<f64> = text
                    .split(',')
                    .map(|v| v.trim().parse::<f64>())
                    .collect::<Result<_, _>>()
                    .map_err(|_| Failure::Input(format!("--payoffs-abcd expects four numbers, got {text:?}")))?;
                let values: [f64; 4] = values
                    .try_into()
                    .map_err(|_| Failure::Input(format!("--payoffs-abcd expects four numbers, got {text:?}")))?;
                ("A".to_string(), "B".to_string(), values)
            }
            None => {
                let (sa, sb) = moran_pair(global, args, &mut digests)?;
                let values = pairing_payoffs(global, &sa, &sb)?;
                (sa.name, sb.name, values)
            }
        };
        for n in sizes {
            let r = moran_fixation_analytic(a, b, c, d, n)?;
            rows.push(FixationRow {
                strategy_a: label_a.clone(),
                strategy_b: label_b.clone(),
                population_size: n,
                x1: r.x1,
                standard_error: r.standard_error,
                normalized: r.normalized,
            });
        }
    } else {
        let (sa, sb) = moran_pair(global, args, &mut digests)?;
        let payoffs = payoffs(global)?;
        for n in sizes {
            let cfg = MoranConfig {
                population_size: n,
                turns: global.turns,
                trials: args.trials,
                seed: seed::derive(global.seed, n as u64),
                payoffs,
            };
            let r = with_threads(global.threads, || moran_fixation_simulated(&sa.spec, &sb.spec, &cfg))?;
            rows.push(FixationRow {
                strategy_a: sa.name.clone(),
                strategy_b: sb.name.clone(),
                population_size: n,
                x1: r.x1,
                standard_error: r.standard_error,
                normalized: r.normalized,
            });
        }
    }
    let mut out = OutputDir::create(&global.out)?;
    out.write("fixation.csv", |w| write_fixation(w, &rows))?;
    manifest("moran", global, args, digests).write(&mut out)
}

fn regression_section(title: &str, fit: &zdscan::Result<RegressionResult>) -> String {
    match fit {
        Ok(fit) => format_regression(title, &SSE_FEATURES, fit),
        Err(e) => format!("{title}\nnot estimated: {e}\n"),
    }
}

pub fn evolve(global: &GlobalArgs, args: &EvolveArgs) -> Result<(), Failure> {
    let mut digests = BTreeMap::new();
    let sizes = population_sizes(&args.population)?;
    let cfg = tournament_config(global, corpus(global, &mut digests)?)?;
    let analysis = TournamentAnalysis::run(&cfg, &analysis_options(global)?)?;
    let study = EvolutionStudy::run(&analysis, &replicator_options(args.tol, args.t_max), sizes)?;

    let mut out = OutputDir::create(&global.out)?;
    write_tables(&mut out, &analysis, false)?;
    write_figure_tables(&mut out, &analysis)?;
    out.write("stationary.csv", |w| {
        write_stationary(w, &study.names, &study.score_ranks, study.replicator.population.as_slice())
    })?;
    out.write("fixation.csv", |w| write_fixation(w, &study.fixation))?;
    out.write("fig3_replicator.csv", |w| write_fig3(w, &study))?;
    out.write("fig4_fixation.csv", |w| write_fig4(w, &study))?;
    let report = [
        regression_section("stationary_probability ~ SSE summaries", &study.replicator_regression),
        regression_section("mean N*x1 over N > 2 ~ SSE summaries", &study.fixation_regression),
        regression_section("mean N*x1 at N = 2 ~ SSE summaries", &study.fixation_regression_n2),
    ]
    .join("\n");
    out.write_text("regression.txt", &report)?;
    manifest("evolve", global, args, digests).write(&mut out)?;
    convergence(&study.replicator)
}

pub fn catalog(global: &GlobalArgs) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(&catalog::default_catalog())
        .map_err(|e| Failure::Output(e.to_string()))?;
    let mut out = OutputDir::create(&global.out)?;
    out.write("catalog.json", |w| Ok(writeln!(w, "{text}")?))?;
    manifest("catalog", global, &serde_json::json!({}), BTreeMap::new()).write(&mut out)
}
