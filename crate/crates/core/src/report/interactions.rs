use std::io::{Read, Write};

use crate::engine::{Action, InteractionRecord, MatchHistory, Turn};
use crate::{Error, Result};

pub const INTERACTION_HEADER: [&str; 6] = ["player_a", "player_b", "repetition", "turn", "action_a", "action_b"];

/// A match identified by strategy names rather than corpus indices.
#[derive(Clone, Debug, PartialEq)]
pub struct LabeledMatch {
    pub player_a: String,
    pub player_b: String,
    pub repetition: usize,
    pub history: MatchHistory,
}

impl LabeledMatch {
    pub fn view(&self) -> MatchView<'_> {
        MatchView {
            player_a: &self.player_a,
            player_b: &self.player_b,
            repetition: self.repetition,
            history: &self.history,
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct MatchView<'a> {
    pub player_a: &'a str,
    pub player_b: &'a str,
    pub repetition: usize,
    pub history: &'a MatchHistory,
}

pub fn record_views<'a>(names: &'a [String], records: &'a [InteractionRecord]) -> Vec<MatchView<'a>> {
    records
        .iter()
        .map(|r| MatchView {
            player_a: &names[r.player_a],
            player_b: &names[r.player_b],
            repetition: r.repetition,
            history: &r.history,
        })
        .collect()
}

/// One row per turn; turns are numbered from 1.
pub fn write_interactions<W: Write>(out: W, matches: &[MatchView<'_>]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(INTERACTION_HEADER)?;
    for m in matches {
        let rep = m.repetition.to_string();
        for (t, turn) in m.history.turns().iter().enumerate() {
            let t = (t + 1).to_string();
            w.write_record([m.player_a, m.player_b, &rep, &t, letter(turn.focal), letter(turn.opponent)])?;
        }
    }
    w.flush()?;
    Ok(())
}

fn letter(a: Action) -> &'static str {
    match a {
        Action::C => "C",
        Action::D => "D",
    }
}

fn parse_error(line: u64, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

fn parse_action(field: &str, line: u64) -> Result<Action> {
    match field {
        "C" => Ok(Action::C),
        "D" => Ok(Action::D),
        _ => Err(parse_error(line, format!("action must be C or D, got {field:?}"))),
    }
}

/// Reads an interaction CSV back into matches. Rows of one match must be
/// contiguous with turns numbered 1, 2, ...
pub fn read_interactions<R: Read>(input: R) -> Result<Vec<LabeledMatch>> {
    let mut reader = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(input);
    let mut records = reader.records();
    let header = match records.next() {
        None => return Err(Error::EmptyInput),
        Some(h) => h.map_err(|e| parse_error(1, e.to_string()))?,
    };
    if header.iter().ne(INTERACTION_HEADER) {
        return Err(parse_error(1, format!("expected header {}", INTERACTION_HEADER.join(","))));
    }

    let mut matches: Vec<LabeledMatch> = Vec::new();
    let mut turns: Vec<Turn> = Vec::new();
    for row in records {
        let row = row.map_err(|e| {
            let line = e.position().map_or(0, |p| p.line());
            parse_error(line, e.to_string())
        })?;
        let line = row.position().map_or(0, |p| p.line());
        if row.len() != INTERACTION_HEADER.len() {
            return Err(parse_error(line, format!("expected 6 fields, got {}", row.len())));
        }
        let repetition: usize =
            row[2].parse().map_err(|_| parse_error(line, format!("bad repetition {:?}", &row[2])))?;
        let turn: usize = row[3].parse().map_err(|_| parse_error(line, format!("bad turn {:?}", &row[3])))?;
        let action = Turn { focal: parse_action(&row[4], line)?, opponent: parse_action(&row[5], line)? };

        let continues = matches.last().is_some_and(|m| {
            m.player_a == row[0] && m.player_b == row[1] && m.repetition == repetition && turn != 1
        });
        if continues {
            if turn != turns.len() + 1 {
                return Err(parse_error(line, format!("expected turn {}, got {turn}", turns.len() + 1)));
            }
            turns.push(action);
        } else {
            if turn != 1 {
                return Err(parse_error(line, format!("match must start at turn 1, got {turn}")));
            }
            if let Some(last) = matches.last_mut() {
                last.history = MatchHistory::new(std::mem::take(&mut turns));
            }
            matches.push(LabeledMatch {
                player_a: row[0].to_string(),
                player_b: row[1].to_string(),
                repetition,
                history: MatchHistory::default(),
            });
            turns.push(action);
        }
    }
    match matches.last_mut() {
        None => Err(Error::EmptyInput),
        Some(last) => {
            last.history = MatchHistory::new(turns);
            Ok(matches)
        }
    }
}
