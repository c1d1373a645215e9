//! `zdscan`: run tournaments, detect extortion and evaluate evolutionary
//! dynamics from the command line.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

#[derive(Parser, Debug)]
#[command(name = "zdscan", version, about = "Iterated prisoner's dilemma tournaments and extortion detection")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone, Serialize)]
pub struct GlobalArgs {
    /// Turns per match.
    #[arg(long, global = true, default_value_t = 2000)]
    pub turns: usize,
    /// Repetitions of every pairing.
    #[arg(long, global = true, default_value_t = 60)]
    pub repetitions: usize,
    /// Master seed.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Payoffs as R,S,T,P.
    #[arg(long, global = true, default_value = "3,0,5,1")]
    pub payoffs: String,
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Output directory.
    #[arg(long, global = true, default_value = "zdscan-out")]
    pub out: PathBuf,
    /// SSE at or below which a fit counts as extortionate.
    #[arg(long = "sse-threshold", global = true, default_value_t = 0.01)]
    pub sse_threshold: f64,
    /// Comma-separated catalog names (defaults to the whole catalog).
    #[arg(long, global = true, value_delimiter = ',', conflicts_with = "corpus_file")]
    pub corpus: Vec<String>,
    /// JSON array of catalog names or full strategy definitions.
    #[arg(long = "corpus-file", global = true)]
    pub corpus_file: Option<PathBuf>,
    /// Value for unvisited states: `rate` (overall cooperation rate) or a
    /// probability.
    #[arg(long, global = true, default_value = "rate")]
    pub impute: String,
    /// Keep self interactions in interaction and detection tables.
    #[arg(long = "include-self", global = true)]
    pub include_self: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a round robin and write interactions, detection and summaries.
    Tournament(commands::TournamentArgs),
    /// Measure and fit every match of an interaction CSV.
    Detect(commands::DetectArgs),
    /// Integrate the replicator equation on a payoff matrix CSV.
    Replicator(commands::ReplicatorArgs),
    /// Pairwise Moran fixation probabilities.
    Moran(commands::MoranArgs),
    /// Tournament followed by replicator, fixation and regression reports.
    Evolve(commands::EvolveArgs),
    /// Write the built-in catalog as JSON.
    Catalog,
}

#[derive(Debug, thiserror::Error)]
pub enum Failure {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    NotConverged(String),
    #[error("{0}")]
    Output(String),
}

impl From<zdscan::Error> for Failure {
    fn from(e: zdscan::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Input(_) => 2,
            Failure::NotConverged(_) => 3,
            Failure::Output(_) => 1,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Tournament(args) => commands::tournament(&cli.global, args),
        Command::Detect(args) => commands::detect(&cli.global, args),
        Command::Replicator(args) => commands::replicator(&cli.global, args),
        Command::Moran(args) => commands::moran(&cli.global, args),
        Command::Evolve(args) => commands::evolve(&cli.global, args),
        Command::Catalog => commands::catalog(&cli.global),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("zdscan: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
