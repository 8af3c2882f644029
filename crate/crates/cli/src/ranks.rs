//! Per-function rank report, enough to redraw rank bar charts elsewhere.
//!
//! Accepts either a run summary (`function,algorithm,dim,mean_error,...`)
//! or a wide table with one column per algorithm.

use std::collections::BTreeSet;

use mcs_hms_core::stats::rank_row;
use mcs_hms_core::ResultTable;

use crate::error::{HarnessError, Result};
use crate::experiment::format_float;
use crate::fixtures::{parse_cell, parse_err, parse_wide_table, read_records};

pub const RANKS_HEADER: &str = "function,algorithm,rank";

#[derive(Debug, Clone, PartialEq)]
pub struct RankRow {
    pub function: String,
    pub algorithm: String,
    pub rank: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankReport {
    pub algorithms: Vec<String>,
    pub rows: Vec<RankRow>,
}

impl RankReport {
    pub fn from_table(table: &ResultTable) -> Self {
        let rows = table
            .functions()
            .iter()
            .zip(table.rank_matrix())
            .flat_map(|(function, ranks)| {
                table.algorithms().iter().zip(ranks).map(move |(algorithm, rank)| RankRow {
                    function: function.clone(),
                    algorithm: algorithm.clone(),
                    rank,
                })
            })
            .collect();
        RankReport { algorithms: table.algorithms().to_vec(), rows }
    }

    pub fn ranks_of(&self, algorithm: &str) -> Vec<f64> {
        self.rows.iter().filter(|r| r.algorithm == algorithm).map(|r| r.rank).collect()
    }

    /// Functions on which `algorithm` ranks at most `threshold` (ties count).
    pub fn count_at_most(&self, algorithm: &str, threshold: f64) -> usize {
        self.ranks_of(algorithm).into_iter().filter(|&r| r <= threshold).count()
    }

    pub fn rank_one_count(&self, algorithm: &str) -> usize {
        self.count_at_most(algorithm, 1.0)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(RANKS_HEADER);
        out.push('\n');
        for r in &self.rows {
            out.push_str(&format!("{},{},{}\n", r.function, r.algorithm, format_float(r.rank)));
        }
        out
    }
}

/// Builds the rank report from CSV text. Summaries holding several
/// dimensions need `dim` to pick one.
pub fn report_ranks(text: &str, source_name: &str, dim: Option<usize>) -> Result<RankReport> {
    let (header, rows) = read_records(text, source_name)?;
    let col = |name: &str| header.iter().position(|h| h == name);
    if col("mean_error").is_none() {
        return Ok(RankReport::from_table(&parse_wide_table(text, source_name)?));
    }

    let missing = |name: &str| parse_err(source_name, 1, name, "required column is missing");
    let f_col = col("function").ok_or_else(|| missing("function"))?;
    let a_col = col("algorithm").ok_or_else(|| missing("algorithm"))?;
    let m_col = col("mean_error").expect("checked above");
    let d_col = col("dim");

    let mut dims = BTreeSet::new();
    let mut parsed = Vec::with_capacity(rows.len());
    for (line, row) in &rows {
        let d: Option<usize> = d_col.map(|c| parse_cell(source_name, *line, "dim", &row[c])).transpose()?;
        let mean: f64 = parse_cell(source_name, *line, "mean_error", &row[m_col])?;
        if let Some(d) = d {
            dims.insert(d);
        }
        parsed.push((d, row[f_col].clone(), row[a_col].clone(), mean));
    }
    let selected = match (dim, dims.len()) {
        (Some(d), _) if !dims.contains(&d) => {
            return Err(HarnessError::Config(format!("{source_name} has no rows for dim {d}")))
        }
        (Some(d), _) => Some(d),
        (None, 0 | 1) => None,
        (None, _) => {
            return Err(HarnessError::Config(format!(
                "{source_name} holds dims {dims:?}; choose one with --dim"
            )))
        }
    };
    parsed.retain(|p| selected.is_none() || p.0 == selected);

    let mut algorithms: Vec<String> = Vec::new();
    let mut functions: Vec<String> = Vec::new();
    for (_, f, a, _) in &parsed {
        if !algorithms.contains(a) {
            algorithms.push(a.clone());
        }
        if !functions.contains(f) {
            functions.push(f.clone());
        }
    }
    let mut out = Vec::with_capacity(parsed.len());
    for function in &functions {
        let means = algorithms
            .iter()
            .map(|a| {
                parsed
                    .iter()
                    .find(|p| &p.1 == function && &p.2 == a)
                    .map(|p| p.3)
                    .ok_or_else(|| {
                        HarnessError::Config(format!("{source_name}: no `{a}` row for function {function}"))
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        for (algorithm, rank) in algorithms.iter().zip(rank_row(&means)) {
            out.push(RankRow { function: function.clone(), algorithm: algorithm.clone(), rank });
        }
    }
    Ok(RankReport { algorithms, rows: out })
}
