use std::fmt::Write as _;
use std::io::{Read, Write};

use super::float;
use crate::dynamics::PayoffMatrix;
use crate::stats::RegressionResult;
use crate::{Error, Result};

/// Header row and first column hold strategy names; cell `(i, j)` is the
/// mean per-turn payoff of row strategy `i` against column strategy `j`.
pub fn write_payoff_matrix<W: Write>(out: W, matrix: &PayoffMatrix) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec![String::new()];
    header.extend(matrix.names().iter().cloned());
    w.write_record(&header)?;
    for (i, name) in matrix.names().iter().enumerate() {
        let mut fields = vec![name.clone()];
        fields.extend(matrix.row(i).iter().map(|&v| float(v)));
        w.write_record(&fields)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_payoff_matrix<R: Read>(input: R) -> Result<PayoffMatrix> {
    let mut reader = csv::ReaderBuilder::new().has_headers(false).flexible(true).from_reader(input);
    let mut rows = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| Error::Parse {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        rows.push(row);
    }
    let Some((header, body)) = rows.split_first() else {
        return Err(Error::EmptyInput);
    };
    let names: Vec<String> = header.iter().skip(1).map(str::to_string).collect();
    if names.is_empty() {
        return Err(Error::EmptyInput);
    }
    if body.len() != names.len() {
        return Err(Error::Parse {
            line: body.last().or(Some(header)).and_then(|r| r.position()).map_or(1, |p| p.line()),
            message: format!("expected {} rows, got {}", names.len(), body.len()),
        });
    }
    let mut values = Vec::with_capacity(names.len());
    for (i, row) in body.iter().enumerate() {
        let line = row.position().map_or(0, |p| p.line());
        if row.len() != names.len() + 1 {
            return Err(Error::Parse { line, message: format!("expected {} fields", names.len() + 1) });
        }
        if row[0] != names[i] {
            return Err(Error::Parse {
                line,
                message: format!("row name {:?} does not match column {:?}", &row[0], names[i]),
            });
        }
        let parsed = row
            .iter()
            .skip(1)
            .map(|f| {
                f.trim()
                    .parse::<f64>()
                    .map_err(|_| Error::Parse { line, message: format!("not a number: {f:?}") })
            })
            .collect::<Result<Vec<f64>>>()?;
        values.push(parsed);
    }
    PayoffMatrix::new(names, values)
}

pub const STATIONARY_HEADER: [&str; 3] = ["strategy", "score_rank", "stationary_probability"];

/// Rows in the given order; `score_ranks` are 1-based.
pub fn write_stationary<W: Write>(out: W, names: &[String], score_ranks: &[usize], x: &[f64]) -> Result<()> {
    if names.len() != x.len() || score_ranks.len() != x.len() {
        return Err(Error::InvalidConfig("stationary columns differ in length".into()));
    }
    let mut w = csv::Writer::from_writer(out);
    w.write_record(STATIONARY_HEADER)?;
    for ((name, rank), p) in names.iter().zip(score_ranks).zip(x) {
        w.write_record([name.clone(), rank.to_string(), float(*p)])?;
    }
    w.flush()?;
    Ok(())
}

pub const FIXATION_HEADER: [&str; 6] = ["strategy_a", "strategy_b", "N", "x1", "stderr", "normalized"];

/// Fixation of a single `strategy_a` among `N - 1` of `strategy_b`.
#[derive(Clone, Debug, PartialEq)]
pub struct FixationRow {
    pub strategy_a: String,
    pub strategy_b: String,
    pub population_size: usize,
    pub x1: f64,
    pub standard_error: f64,
    pub normalized: f64,
}

pub fn write_fixation<W: Write>(out: W, rows: &[FixationRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(FIXATION_HEADER)?;
    for r in rows {
        w.write_record([
            r.strategy_a.clone(),
            r.strategy_b.clone(),
            r.population_size.to_string(),
            float(r.x1),
            float(r.standard_error),
            float(r.normalized),
        ])?;
    }
    w.flush()?;
    Ok(())
}

/// Plain-text coefficient table.
pub fn format_regression(title: &str, features: &[&str], fit: &RegressionResult) -> String {
    let width = features.iter().map(|f| f.len()).max().unwrap_or(0).max("intercept".len());
    let mut out = String::new();
    let _ = writeln!(out, "{title}");
    let _ = writeln!(out, "{:<width$}  {:>14}  {:>14}", "term", "coefficient", "std_error");
    let _ = writeln!(out, "{:<width$}  {:>14.6e}  {:>14.6e}", "intercept", fit.intercept, fit.intercept_standard_error);
    for ((name, c), se) in features.iter().zip(&fit.coefficients).zip(&fit.standard_errors) {
        let _ = writeln!(out, "{name:<width$}  {c:>14.6e}  {se:>14.6e}");
    }
    let _ = writeln!(out, "R^2 = {:.6}", fit.r_squared);
    let _ = writeln!(out, "observations = {}", fit.residuals.len());
    out
}
