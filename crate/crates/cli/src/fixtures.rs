//! Published result tables (mean errors over 25 runs, 30 functions, eight
//! algorithms) and the statistics reported for them, bundled as CSV.

use std::fmt;
use std::str::FromStr;

use mcs_hms_core::ResultTable;

use crate::error::{HarnessError, Result};

const RESULTS_D30: &str = include_str!("../fixtures/results_d30.csv");
const RESULTS_D50: &str = include_str!("../fixtures/results_d50.csv");
const RESULTS_D100: &str = include_str!("../fixtures/results_d100.csv");
const REFERENCE_RANKS: &str = include_str!("../fixtures/reference_ranks.csv");
const REFERENCE_PAIRWISE: &str = include_str!("../fixtures/reference_pairwise.csv");
const REFERENCE_WILCOXON: &str = include_str!("../fixtures/reference_wilcoxon.csv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FixtureId {
    D30,
    D50,
    D100,
}

impl FixtureId {
    pub const ALL: [FixtureId; 3] = [FixtureId::D30, FixtureId::D50, FixtureId::D100];

    pub fn dim(self) -> usize {
        match self {
            FixtureId::D30 => 30,
            FixtureId::D50 => 50,
            FixtureId::D100 => 100,
        }
    }

    pub fn file_name(self) -> &'static str {
        match self {
            FixtureId::D30 => "results_d30.csv",
            FixtureId::D50 => "results_d50.csv",
            FixtureId::D100 => "results_d100.csv",
        }
    }

    pub fn text(self) -> &'static str {
        match self {
            FixtureId::D30 => RESULTS_D30,
            FixtureId::D50 => RESULTS_D50,
            FixtureId::D100 => RESULTS_D100,
        }
    }

    pub fn table(self) -> Result<ResultTable> {
        parse_wide_table(self.text(), self.file_name())
    }
}

impl fmt::Display for FixtureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{}", self.dim())
    }
}

impl FromStr for FixtureId {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "D30" | "30" => Ok(FixtureId::D30),
            "D50" | "50" => Ok(FixtureId::D50),
            "D100" | "100" => Ok(FixtureId::D100),
            other => Err(HarnessError::Config(format!("unknown fixture `{other}` (expected D30, D50 or D100)"))),
        }
    }
}

fn csv_err(source_name: &str, source: csv::Error) -> HarnessError {
    HarnessError::Csv {
        source_name: source_name.to_string(),
        source,
    }
}

pub(crate) fn parse_err(source_name: &str, row: usize, column: &str, message: impl Into<String>) -> HarnessError {
    HarnessError::Parse {
        source_name: source_name.to_string(),
        row,
        column: column.to_string(),
        message: message.into(),
    }
}

pub(crate) fn parse_cell<T: FromStr>(source_name: &str, row: usize, column: &str, cell: &str) -> Result<T> {
    cell.trim()
        .parse()
        .map_err(|_| parse_err(source_name, row, column, format!("cannot parse `{cell}`")))
}

/// Header plus `(line, cells)` rows.
pub(crate) type Records = (Vec<String>, Vec<(usize, Vec<String>)>);

/// Reads a headered CSV into (header, rows), keeping the 1-based file line of
/// each row for error messages.
pub(crate) fn read_records(text: &str, source_name: &str) -> Result<Records> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| csv_err(source_name, e))?
        .iter()
        .map(str::to_string)
        .collect();
    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| csv_err(source_name, e))?;
        let line = record.position().map_or(0, |p| p.line() as usize);
        if record.iter().all(str::is_empty) {
            continue;
        }
        if record.len() != header.len() {
            let column = header.get(record.len().min(header.len().saturating_sub(1))).cloned().unwrap_or_default();
            return Err(parse_err(
                source_name,
                line,
                &column,
                format!("expected {} fields, found {}", header.len(), record.len()),
            ));
        }
        rows.push((line, record.iter().map(str::to_string).collect()));
    }
    Ok((header, rows))
}

/// Parses `function,<alg1>,<alg2>,...` with one row per function.
pub fn parse_wide_table(text: &str, source_name: &str) -> Result<ResultTable> {
    let (header, rows) = read_records(text, source_name)?;
    if header.len() < 2 {
        return Err(parse_err(source_name, 1, "header", "need a function column and at least one algorithm"));
    }
    let algorithms = header[1..].to_vec();
    let mut functions = Vec::with_capacity(rows.len());
    let mut values = Vec::with_capacity(rows.len());
    for (line, row) in rows {
        functions.push(row[0].clone());
        let parsed = row[1..]
            .iter()
            .zip(&algorithms)
            .map(|(cell, alg)| {
                let v: f64 = parse_cell(source_name, line, alg, cell)?;
                if !v.is_finite() || v < 0.0 {
                    return Err(parse_err(source_name, line, alg, format!("`{cell}` is not a non-negative error")));
                }
                Ok(v)
            })
            .collect::<Result<Vec<_>>>()?;
        values.push(parsed);
    }
    Ok(ResultTable::new(functions, algorithms, values)?)
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceRank {
    pub dim: usize,
    pub algorithm: String,
    pub avg_rank: f64,
    pub best_rank: f64,
    pub worst_rank: f64,
    pub std_dev: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferencePairwise {
    pub dim: usize,
    pub opponent: String,
    pub better: usize,
    pub worse: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceWilcoxon {
    pub dim: usize,
    pub opponent: String,
    pub p_value: f64,
}

pub fn reference_ranks() -> Result<Vec<ReferenceRank>> {
    let name = "reference_ranks.csv";
    let (header, rows) = read_records(REFERENCE_RANKS, name)?;
    rows.into_iter()
        .map(|(line, r)| {
            Ok(ReferenceRank {
                dim: parse_cell(name, line, &header[0], &r[0])?,
                algorithm: r[1].clone(),
                avg_rank: parse_cell(name, line, &header[2], &r[2])?,
                best_rank: parse_cell(name, line, &header[3], &r[3])?,
                worst_rank: parse_cell(name, line, &header[4], &r[4])?,
                std_dev: parse_cell(name, line, &header[5], &r[5])?,
            })
        })
        .collect()
}

pub fn reference_pairwise() -> Result<Vec<ReferencePairwise>> {
    let name = "reference_pairwise.csv";
    let (header, rows) = read_records(REFERENCE_PAIRWISE, name)?;
    rows.into_iter()
        .map(|(line, r)| {
            Ok(ReferencePairwise {
                dim: parse_cell(name, line, &header[0], &r[0])?,
                opponent: r[1].clone(),
                better: parse_cell(name, line, &header[2], &r[2])?,
                worse: parse_cell(name, line, &header[3], &r[3])?,
            })
        })
        .collect()
}

pub fn reference_wilcoxon() -> Result<Vec<ReferenceWilcoxon>> {
    let name = "reference_wilcoxon.csv";
    let (header, rows) = read_records(REFERENCE_WILCOXON, name)?;
    rows.into_iter()
        .map(|(line, r)| {
            Ok(ReferenceWilcoxon {
                dim: parse_cell(name, line, &header[0], &r[0])?,
                opponent: r[1].clone(),
                p_value: parse_cell(name, line, &header[2], &r[2])?,
            })
        })
        .collect()
}
