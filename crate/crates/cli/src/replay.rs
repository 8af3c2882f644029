//! Recomputes rank summaries, head-to-head counts and Wilcoxon tests from a
//! published result table and sets them beside the published values.

use std::fmt::{self, Write as _};

use mcs_hms_core::stats::{pairwise_compare, rank_summary, wilcoxon_signed_rank, AlgorithmRanks, Pairwise};
use mcs_hms_core::{ResultTable, WilcoxonResult};

use crate::error::Result;
use crate::fixtures::{reference_pairwise, reference_ranks, reference_wilcoxon, FixtureId, ReferenceRank};

/// Column that every comparison is made against.
pub const FOCUS_ALGORITHM: &str = "MCS-HMS";

#[derive(Debug, Clone)]
pub struct RankLine {
    pub computed: AlgorithmRanks,
    pub reference: Option<ReferenceRank>,
}

#[derive(Debug, Clone)]
pub struct PairwiseLine {
    pub opponent: String,
    pub computed: Pairwise,
    pub reference: Option<(usize, usize)>,
}

#[derive(Debug, Clone)]
pub struct WilcoxonLine {
    pub opponent: String,
    pub computed: WilcoxonResult,
    pub reference: Option<f64>,
}

#[derive(Debug, Clone)]
pub struct ReplayReport {
    pub label: String,
    pub ranks: Vec<RankLine>,
    pub pairwise: Vec<PairwiseLine>,
    pub wilcoxon: Vec<WilcoxonLine>,
}

impl ReplayReport {
    pub fn rank(&self, algorithm: &str) -> Option<&RankLine> {
        self.ranks.iter().find(|l| l.computed.algorithm == algorithm)
    }

    pub fn pairwise_against(&self, opponent: &str) -> Option<&PairwiseLine> {
        self.pairwise.iter().find(|l| l.opponent == opponent)
    }

    pub fn wilcoxon_against(&self, opponent: &str) -> Option<&WilcoxonLine> {
        self.wilcoxon.iter().find(|l| l.opponent == opponent)
    }
}

/// Replays a table. Reference values are attached when `dim` matches a
/// bundled reference set.
pub fn replay_table(table: &ResultTable, label: &str, dim: Option<usize>) -> Result<ReplayReport> {
    let summary = rank_summary(table)?;
    let ref_ranks = if dim.is_some() { reference_ranks()? } else { Vec::new() };
    let ref_pairs = if dim.is_some() { reference_pairwise()? } else { Vec::new() };
    let ref_wil = if dim.is_some() { reference_wilcoxon()? } else { Vec::new() };
    let in_dim = |d: usize| dim == Some(d);

    let ranks = summary
        .entries
        .into_iter()
        .map(|computed| {
            let reference = ref_ranks
                .iter()
                .find(|r| in_dim(r.dim) && r.algorithm == computed.algorithm)
                .cloned();
            RankLine { computed, reference }
        })
        .collect();

    let focus = table.column(FOCUS_ALGORITHM)?;
    let mut pairwise = Vec::new();
    let mut wilcoxon = Vec::new();
    for opponent in table.algorithms().iter().filter(|a| *a != FOCUS_ALGORITHM) {
        pairwise.push(PairwiseLine {
            opponent: opponent.clone(),
            computed: pairwise_compare(table, FOCUS_ALGORITHM, opponent)?,
            reference: ref_pairs
                .iter()
                .find(|r| in_dim(r.dim) && &r.opponent == opponent)
                .map(|r| (r.better, r.worse)),
        });
        wilcoxon.push(WilcoxonLine {
            opponent: opponent.clone(),
            computed: wilcoxon_signed_rank(&focus, &table.column(opponent)?)?,
            reference: ref_wil
                .iter()
                .find(|r| in_dim(r.dim) && &r.opponent == opponent)
                .map(|r| r.p_value),
        });
    }

    Ok(ReplayReport { label: label.to_string(), ranks, pairwise, wilcoxon })
}

pub fn replay_fixtures(id: FixtureId) -> Result<ReplayReport> {
    replay_table(&id.table()?, &id.to_string(), Some(id.dim()))
}

fn opt(v: Option<f64>, digits: usize) -> String {
    v.map_or_else(|| "-".to_string(), |x| format!("{x:.digits$}"))
}

impl fmt::Display for ReplayReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut s = String::new();
        writeln!(s, "# {} rank summary", self.label)?;
        writeln!(s, "algorithm,avg_rank,published_avg,delta_avg,best,published_best,worst,published_worst,std_dev,published_std,delta_std")?;
        for line in &self.ranks {
            let c = &line.computed;
            let r = line.reference.as_ref();
            writeln!(
                s,
                "{},{:.3},{},{},{},{},{},{},{:.3},{},{}",
                c.algorithm,
                c.avg_rank,
                opt(r.map(|r| r.avg_rank), 2),
                opt(r.map(|r| c.avg_rank - r.avg_rank), 3),
                c.best_rank,
                opt(r.map(|r| r.best_rank), 0),
                c.worst_rank,
                opt(r.map(|r| r.worst_rank), 0),
                c.std_dev,
                opt(r.map(|r| r.std_dev), 2),
                opt(r.map(|r| c.std_dev - r.std_dev), 3),
            )?;
        }
        writeln!(s)?;
        writeln!(s, "# {} {FOCUS_ALGORITHM} head-to-head", self.label)?;
        writeln!(s, "opponent,better,worse,ties,published_better,published_worse")?;
        for line in &self.pairwise {
            let (pb, pw) = line
                .reference
                .map_or(("-".into(), "-".into()), |(b, w)| (b.to_string(), w.to_string()));
            writeln!(
                s,
                "{},{},{},{},{pb},{pw}",
                line.opponent, line.computed.better, line.computed.worse, line.computed.ties
            )?;
        }
        writeln!(s)?;
        writeln!(s, "# {} Wilcoxon signed-rank {FOCUS_ALGORITHM} vs opponent", self.label)?;
        writeln!(s, "opponent,p_value,published_p_value,w_plus,w_minus,n,method,favors_{FOCUS_ALGORITHM}")?;
        for line in &self.wilcoxon {
            let c = &line.computed;
            writeln!(
                s,
                "{},{:.3e},{},{},{},{},{:?},{}",
                line.opponent,
                c.p_value,
                line.reference.map_or_else(|| "-".to_string(), |p| format!("{p:.3e}")),
                c.w_plus,
                c.w_minus,
                c.n_effective,
                c.method,
                c.favors_first_lower()
            )?;
        }
        f.write_str(&s)
    }
}
