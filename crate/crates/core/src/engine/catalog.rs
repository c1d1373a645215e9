//! The built-in strategy catalog, addressable by stable names.

use serde::{Deserialize, Serialize};

use super::action::{Action, Turn};
use super::strategy::{Classic, LookupTable, StrategySpec};
use crate::{Error, Result};

/// Bumped whenever an entry of [`default_catalog`] changes behavior.
pub const CATALOG_VERSION: &str = "1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct NamedStrategy {
    pub name: String,
    #[serde(rename = "strategy")]
    pub spec: StrategySpec,
    /// Set for strategies that condition on the match length; those are
    /// dropped from evolutionary analyses.
    #[serde(default)]
    pub uses_match_length: bool,
}

impl NamedStrategy {
    pub fn new(name: impl Into<String>, spec: StrategySpec) -> Self {
        NamedStrategy { name: name.into(), spec, uses_match_length: false }
    }
}

fn classic(name: &str, c: Classic) -> NamedStrategy {
    NamedStrategy::new(name, StrategySpec::Classic(c))
}

fn memory_one(name: &str, p: [f64; 4], opening: f64) -> NamedStrategy {
    NamedStrategy::new(name, StrategySpec::memory_one(p, opening).expect("catalog vector"))
}

fn table(name: &str, depth: usize, opening: &str, rule: impl Fn(&[Turn]) -> Action) -> NamedStrategy {
    let opening = Action::parse_seq(opening).expect("catalog opening");
    let lookup = LookupTable::from_fn(depth, opening, rule).expect("catalog table");
    NamedStrategy::new(name, StrategySpec::LookupTable(lookup))
}

fn trained(name: &str, depth: usize, opening: &str, entries: &str) -> NamedStrategy {
    let lookup = LookupTable::new(
        depth,
        Action::parse_seq(entries).expect("catalog table"),
        Action::parse_seq(opening).expect("catalog opening"),
    )
    .expect("catalog table");
    NamedStrategy::new(name, StrategySpec::LookupTable(lookup))
}

fn defect_if(cond: bool) -> Action {
    if cond {
        Action::D
    } else {
        Action::C
    }
}

/// Defects whenever the opponent failed to answer one of its defections
/// inside the window; otherwise plays tit for tat.
fn probe_then_tit_for_tat(w: &[Turn]) -> Action {
    let unanswered = w
        .windows(2)
        .any(|pair| pair[0].focal == Action::D && pair[1].opponent == Action::C);
    if unanswered {
        Action::D
    } else {
        w[w.len() - 1].opponent
    }
}

/// The default corpus.
pub fn default_catalog() -> Vec<NamedStrategy> {
    vec![
        classic("Cooperator", Classic::Cooperator),
        classic("Defector", Classic::Defector),
        classic("TitForTat", Classic::TitForTat),
        classic("Alternator", Classic::Alternator),
        classic("Grudger", Classic::Grudger),
        classic("WinStayLoseShift", Classic::WinStayLoseShift),
        classic("Random", Classic::Random { p: 0.5 }),
        memory_one("Extort-2", [8.0 / 9.0, 0.5, 1.0 / 3.0, 0.0], 1.0),
        memory_one("ZD-Extort-2-v2", [7.0 / 8.0, 7.0 / 16.0, 3.0 / 8.0, 0.0], 1.0),
        memory_one("ZD-Extort-4", [11.0 / 17.0, 0.0, 8.0 / 17.0, 0.0], 1.0),
        memory_one("ZD-GTFT-2", [1.0, 0.125, 1.0, 0.25], 1.0),
        memory_one("ZD-SET-2", [0.75, 0.25, 0.5, 0.25], 1.0),
        memory_one("ZD-Mischief", [0.8, 0.6, 0.1, 0.0], 1.0),
        memory_one("GTFT", [1.0, 1.0 / 3.0, 1.0, 1.0 / 3.0], 1.0),
        memory_one("Joss", [0.9, 0.0, 0.9, 0.0], 1.0),
        memory_one("SuspiciousTitForTat", [1.0, 0.0, 1.0, 0.0], 0.0),
        memory_one("Bully", [0.0, 1.0, 0.0, 1.0], 0.0),
        trained("EvolvedLookup-2", 2, "CC", "CDDDCDDCCDDDDCDC"),
        table("Prober", 3, "DCC", probe_then_tit_for_tat),
        table("Aggravater", 3, "DDD", |w| w[2].opponent),
        table("CyclerCCD", 2, "CC", |w| defect_if(w.iter().all(|t| t.focal == Action::C))),
        table("CyclerCCCD", 3, "CCC", |w| defect_if(w.iter().all(|t| t.focal == Action::C))),
    ]
}

pub fn catalog_names() -> Vec<String> {
    default_catalog().into_iter().map(|s| s.name).collect()
}

/// Finds a catalog entry by name.
pub fn lookup(name: &str) -> Result<NamedStrategy> {
    default_catalog()
        .into_iter()
        .find(|s| s.name == name)
        .ok_or_else(|| Error::UnknownStrategy(name.to_string()))
}

/// Resolves a list of catalog names, keeping the given order.
pub fn resolve(names: &[String]) -> Result<Vec<NamedStrategy>> {
    names.iter().map(|n| lookup(n.trim())).collect()
}

/// A corpus file entry: either a catalog name or a full definition.
#[derive(Deserialize)]
#[serde(untagged)]
enum CorpusEntry {
    Name(String),
    Full(NamedStrategy),
}

/// Parses a JSON corpus file: an array whose items are catalog names or
/// `{"name": ..., "strategy": {...}}` objects.
pub fn parse_corpus_json(text: &str) -> Result<Vec<NamedStrategy>> {
    let entries: Vec<CorpusEntry> = serde_json::from_str(text)?;
    let corpus = entries
        .into_iter()
        .map(|entry| match entry {
            CorpusEntry::Name(name) => lookup(&name),
            CorpusEntry::Full(s) => s.spec.validate().map(|_| s),
        })
        .collect::<Result<Vec<_>>>()?;
    let mut seen = std::collections::HashSet::new();
    for s in &corpus {
        if !seen.insert(s.name.as_str()) {
            return Err(Error::InvalidConfig(format!("duplicate strategy name `{}`", s.name)));
        }
    }
    Ok(corpus)
}
