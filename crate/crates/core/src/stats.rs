//! Comparison statistics over result tables: per-function rankings, rank
//! summaries, pairwise better/worse counts and the Wilcoxon signed-rank test.

use statrs::distribution::{ContinuousCDF, Normal};

use crate::config::RunResult;
use crate::error::{Error, Result};

/// Largest effective sample size for which the exact null distribution is used.
pub const EXACT_CUTOFF: usize = 25;

/// Functions x algorithms matrix of mean errors.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultTable {
    functions: Vec<String>,
    algorithms: Vec<String>,
    values: Vec<Vec<f64>>,
}

impl ResultTable {
    pub fn new(functions: Vec<String>, algorithms: Vec<String>, values: Vec<Vec<f64>>) -> Result<Self> {
        if values.len() != functions.len() {
            return Err(Error::Table(format!(
                "{} function names for {} rows",
                functions.len(),
                values.len()
            )));
        }
        if algorithms.is_empty() {
            return Err(Error::Table("no algorithm columns".into()));
        }
        for (f, row) in functions.iter().zip(&values) {
            if row.len() != algorithms.len() {
                return Err(Error::Table(format!(
                    "row {f} has {} values, expected {}",
                    row.len(),
                    algorithms.len()
                )));
            }
            if let Some((a, v)) = algorithms.iter().zip(row).find(|(_, v)| !v.is_finite() || **v < -1e-12) {
                return Err(Error::Table(format!("row {f}, column {a}: value {v} is not a finite error")));
            }
        }
        Ok(Self {
            functions,
            algorithms,
            values,
        })
    }

    pub fn functions(&self) -> &[String] {
        &self.functions
    }

    pub fn algorithms(&self) -> &[String] {
        &self.algorithms
    }

    pub fn rows(&self) -> &[Vec<f64>] {
        &self.values
    }

    pub fn algorithm_index(&self, name: &str) -> Result<usize> {
        self.algorithms
            .iter()
            .position(|a| a == name)
            .ok_or_else(|| Error::UnknownAlgorithm(name.to_string()))
    }

    pub fn column(&self, name: &str) -> Result<Vec<f64>> {
        let j = self.algorithm_index(name)?;
        Ok(self.values.iter().map(|r| r[j]).collect())
    }

    /// Per-function ranks, same shape as the table.
    pub fn rank_matrix(&self) -> Vec<Vec<f64>> {
        self.values.iter().map(|r| rank_row(r)).collect()
    }
}

/// Ascending ranks starting at 1; tied values share the average of the
/// ranks they cover.
pub fn rank_row(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && values[order[end]] == values[order[start]] {
            end += 1;
        }
        // Positions start..end hold ranks start+1 ..= end.
        let shared = (start + 1 + end) as f64 / 2.0;
        for &i in &order[start..end] {
            ranks[i] = shared;
        }
        start = end;
    }
    ranks
}

#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmRanks {
    pub algorithm: String,
    pub avg_rank: f64,
    pub best_rank: f64,
    pub worst_rank: f64,
    /// Population standard deviation of the per-function ranks.
    pub std_dev: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RankSummary {
    pub entries: Vec<AlgorithmRanks>,
}

impl RankSummary {
    pub fn get(&self, algorithm: &str) -> Option<&AlgorithmRanks> {
        self.entries.iter().find(|e| e.algorithm == algorithm)
    }
}

pub fn rank_summary(table: &ResultTable) -> Result<RankSummary> {
    if table.functions.is_empty() {
        return Err(Error::Table("rank summary needs at least one function".into()));
    }
    let ranks = table.rank_matrix();
    let n = ranks.len() as f64;
    let entries = table
        .algorithms
        .iter()
        .enumerate()
        .map(|(j, name)| {
            let col: Vec<f64> = ranks.iter().map(|r| r[j]).collect();
            let avg = col.iter().sum::<f64>() / n;
            let var = col.iter().map(|r| (r - avg).powi(2)).sum::<f64>() / n;
            AlgorithmRanks {
                algorithm: name.clone(),
                avg_rank: avg,
                best_rank: col.iter().copied().fold(f64::INFINITY, f64::min),
                worst_rank: col.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                std_dev: var.sqrt(),
            }
        })
        .collect();
    Ok(RankSummary { entries })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Pairwise {
    /// Functions where `a` has the lower value.
    pub better: usize,
    pub worse: usize,
    pub ties: usize,
}

pub fn pairwise_compare(table: &ResultTable, a: &str, b: &str) -> Result<Pairwise> {
    let ia = table.algorithm_index(a)?;
    let ib = table.algorithm_index(b)?;
    let mut out = Pairwise {
        better: 0,
        worse: 0,
        ties: 0,
    };
    for row in &table.values {
        match row[ia].partial_cmp(&row[ib]) {
            Some(std::cmp::Ordering::Less) => out.better += 1,
            Some(std::cmp::Ordering::Greater) => out.worse += 1,
            _ => out.ties += 1,
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WilcoxonMethod {
    Exact,
    /// Normal approximation with tie and continuity corrections.
    Normal,
    /// Every difference was zero; `p = 1`.
    Degenerate,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WilcoxonResult {
    /// `min(w_plus, w_minus)`.
    pub statistic: f64,
    pub p_value: f64,
    pub w_plus: f64,
    pub w_minus: f64,
    /// Number of non-zero differences.
    pub n_effective: usize,
    pub method: WilcoxonMethod,
}

impl WilcoxonResult {
    /// True when the first sample tends to be smaller (`x < y`).
    pub fn favors_first_lower(&self) -> bool {
        self.w_minus > self.w_plus
    }

    pub fn is_degenerate(&self) -> bool {
        self.method == WilcoxonMethod::Degenerate
    }
}

/// Two-sided paired Wilcoxon signed-rank test on `x - y`. Zero differences
/// are dropped. Exact null distribution for up to [`EXACT_CUTOFF`] non-zero
/// differences, normal approximation above.
pub fn wilcoxon_signed_rank(x: &[f64], y: &[f64]) -> Result<WilcoxonResult> {
    wilcoxon_with(x, y, None)
}

/// As [`wilcoxon_signed_rank`] but forcing the p-value method.
pub fn wilcoxon_signed_rank_with(x: &[f64], y: &[f64], method: WilcoxonMethod) -> Result<WilcoxonResult> {
    wilcoxon_with(x, y, Some(method))
}

fn wilcoxon_with(x: &[f64], y: &[f64], forced: Option<WilcoxonMethod>) -> Result<WilcoxonResult> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    if x.len() < 5 {
        return Err(Error::TooFewSamples { needed: 5, got: x.len() });
    }
    let diffs: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - b).filter(|d| *d != 0.0).collect();
    let n = diffs.len();
    if n == 0 {
        return Ok(WilcoxonResult {
            statistic: 0.0,
            p_value: 1.0,
            w_plus: 0.0,
            w_minus: 0.0,
            n_effective: 0,
            method: WilcoxonMethod::Degenerate,
        });
    }
    let abs: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    let ranks = rank_row(&abs);
    let w_plus = diffs.iter().zip(&ranks).filter(|(d, _)| **d > 0.0).fold(0.0, |acc, (_, r)| acc + r);
    let w_minus = diffs.iter().zip(&ranks).filter(|(d, _)| **d < 0.0).fold(0.0, |acc, (_, r)| acc + r);
    let statistic = w_plus.min(w_minus);

    let method = match forced {
        Some(WilcoxonMethod::Degenerate) | None => {
            if n <= EXACT_CUTOFF {
                WilcoxonMethod::Exact
            } else {
                WilcoxonMethod::Normal
            }
        }
        Some(m) => m,
    };
    let p_value = match method {
        WilcoxonMethod::Exact => exact_p(&ranks, statistic),
        _ => normal_p(&abs, statistic),
    };
    Ok(WilcoxonResult {
        statistic,
        p_value,
        w_plus,
        w_minus,
        n_effective: n,
        method,
    })
}

/// `min(1, 2 P(T <= t))` under the null where each rank enters the positive
/// sum with probability 1/2. Ranks are multiples of 1/2, so the sum
/// distribution is tabulated over doubled ranks.
fn exact_p(ranks: &[f64], statistic: f64) -> f64 {
    let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
    let total: usize = doubled.iter().sum();
    let mut counts = vec![0f64; total + 1];
    counts[0] = 1.0;
    let mut reach = 0;
    for &r in &doubled {
        for s in (0..=reach).rev() {
            if counts[s] != 0.0 {
                counts[s + r] += counts[s];
            }
        }
        reach += r;
    }
    let t = (2.0 * statistic).round() as usize;
    let tail: f64 = counts[..=t].iter().sum();
    let p = 2.0 * tail / 2f64.powi(ranks.len() as i32);
    p.min(1.0)
}

fn normal_p(abs_diffs: &[f64], statistic: f64) -> f64 {
    let n = abs_diffs.len() as f64;
    let mean = n * (n + 1.0) / 4.0;
    let mut sorted = abs_diffs.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i + 1;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        let t = (j - i) as f64;
        tie_term += t * t * t - t;
        i = j;
    }
    let var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
    if var <= 0.0 {
        return 1.0;
    }
    // statistic <= mean, so the continuity correction moves it up.
    let z = ((statistic - mean + 0.5) / var.sqrt()).min(0.0);
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    (2.0 * normal.cdf(z)).min(1.0)
}

/// Mean and sample standard deviation of the run errors.
pub fn mean_error(runs: &[RunResult]) -> Result<(f64, f64)> {
    let errors: Vec<f64> = runs.iter().map(|r| r.error).collect();
    mean_and_sample_std(&errors)
}

pub fn mean_and_sample_std(values: &[f64]) -> Result<(f64, f64)> {
    if values.is_empty() {
        return Err(Error::TooFewSamples { needed: 1, got: 0 });
    }
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    if values.len() == 1 {
        return Ok((mean, 0.0));
    }
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
    Ok((mean, var.sqrt()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    /// Brute-force enumeration of all 2^n sign patterns.
    fn enumerate_p(ranks: &[f64], statistic: f64) -> f64 {
        let n = ranks.len();
        let mut hits = 0u64;
        for mask in 0u64..(1 << n) {
            let s: f64 = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| ranks[i]).sum();
            if s <= statistic + 1e-9 {
                hits += 1;
            }
        }
        (2.0 * hits as f64 / (1u64 << n) as f64).min(1.0)
    }

    fn table(rows: &[&[f64]], algs: &[&str]) -> ResultTable {
        ResultTable::new(
            (0..rows.len()).map(|i| format!("F{}", i + 1)).collect(),
            algs.iter().map(|s| s.to_string()).collect(),
            rows.iter().map(|r| r.to_vec()).collect(),
        )
        .unwrap()
    }

    #[test]
    fn rank_row_examples() {
        let f1 = [7.16e7, 2.11e10, 2.91e7, 1.75e9, 8.80e9, 8.43e7, 4.55e6, 1.37e4];
        assert_eq!(rank_row(&f1), vec![4.0, 8.0, 3.0, 6.0, 7.0, 5.0, 2.0, 1.0]);
        assert_eq!(rank_row(&[5.0, 5.0]), vec![1.5, 1.5]);
        assert_eq!(rank_row(&[1.0, 2.0, 3.0]), vec![1.0, 2.0, 3.0]);
        assert_eq!(rank_row(&[3.0, 1.0, 3.0, 3.0]), vec![3.0, 1.0, 3.0, 3.0]);
        assert!(rank_row(&[]).is_empty());
    }

    #[test]
    fn single_row_summary() {
        let t = table(&[&[3.0, 1.0, 2.0]], &["a", "b", "c"]);
        let s = rank_summary(&t).unwrap();
        let a = s.get("a").unwrap();
        assert_eq!((a.avg_rank, a.best_rank, a.worst_rank, a.std_dev), (3.0, 3.0, 3.0, 0.0));
        assert_eq!(s.get("b").unwrap().avg_rank, 1.0);
    }

    #[test]
    fn summary_statistics() {
        let t = table(&[&[1.0, 2.0], &[2.0, 1.0], &[1.0, 2.0], &[1.0, 2.0]], &["a", "b"]);
        let a = rank_summary(&t).unwrap().get("a").unwrap().clone();
        assert_eq!(a.avg_rank, 1.25);
        assert_eq!((a.best_rank, a.worst_rank), (1.0, 2.0));
        assert_relative_eq!(a.std_dev, (0.1875f64).sqrt());
    }

    #[test]
    fn pairwise_counts() {
        let t = table(&[&[1.0, 2.0], &[2.0, 1.0], &[3.0, 3.0]], &["a", "b"]);
        assert_eq!(pairwise_compare(&t, "a", "b").unwrap(), Pairwise { better: 1, worse: 1, ties: 1 });
        assert_eq!(pairwise_compare(&t, "a", "a").unwrap(), Pairwise { better: 0, worse: 0, ties: 3 });
        assert!(matches!(pairwise_compare(&t, "a", "z"), Err(Error::UnknownAlgorithm(_))));
    }

    #[test]
    fn table_validation() {
        let names = vec!["F1".to_string()];
        let algs = vec!["a".to_string(), "b".to_string()];
        assert!(ResultTable::new(names.clone(), algs.clone(), vec![vec![1.0]]).is_err());
        assert!(ResultTable::new(names.clone(), algs.clone(), vec![vec![1.0, f64::NAN]]).is_err());
        assert!(ResultTable::new(names.clone(), algs.clone(), vec![vec![1.0, -3.0]]).is_err());
        assert!(ResultTable::new(names, vec![], vec![vec![]]).is_err());
    }

    #[test]
    fn wilcoxon_all_positive_five() {
        let x = [2.0, 4.0, 6.0, 8.0, 10.0];
        let y = [1.0, 2.0, 3.0, 4.0, 5.0];
        let r = wilcoxon_signed_rank(&x, &y).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.method, WilcoxonMethod::Exact);
        assert_relative_eq!(r.p_value, 0.0625, max_relative = 1e-15);
        assert!(!r.favors_first_lower());
    }

    #[test]
    fn wilcoxon_identical_samples() {
        let x = [1.0, 2.0, 3.0, 4.0, 5.0];
        let r = wilcoxon_signed_rank(&x, &x).unwrap();
        assert!(r.is_degenerate());
        assert_eq!(r.p_value, 1.0);
    }

    #[test]
    fn wilcoxon_input_errors() {
        assert_eq!(
            wilcoxon_signed_rank(&[1.0; 5], &[1.0; 6]).unwrap_err(),
            Error::LengthMismatch(5, 6)
        );
        assert!(matches!(
            wilcoxon_signed_rank(&[1.0; 4], &[2.0; 4]),
            Err(Error::TooFewSamples { .. })
        ));
    }

    #[test]
    fn exact_matches_enumeration_with_ties() {
        let mut rng = crate::rng::RngStream::from_seed(13);
        for _ in 0..200 {
            let n = 5 + rng.index(8);
            // Coarse integer values produce ties and zeros.
            let x: Vec<f64> = (0..n).map(|_| rng.index(7) as f64).collect();
            let y: Vec<f64> = (0..n).map(|_| rng.index(7) as f64).collect();
            let r = wilcoxon_signed_rank(&x, &y).unwrap();
            if r.is_degenerate() {
                continue;
            }
            let diffs: Vec<f64> = x.iter().zip(&y).map(|(a, b)| (a - b).abs()).filter(|d| *d != 0.0).collect();
            let expected = enumerate_p(&rank_row(&diffs), r.statistic);
            assert_relative_eq!(r.p_value, expected, max_relative = 1e-12);
        }
    }

    #[test]
    fn large_samples_use_normal_approximation() {
        let x: Vec<f64> = (0..30).map(|i| i as f64).collect();
        let y: Vec<f64> = (0..30).map(|i| i as f64 + 1.0 + 0.01 * i as f64).collect();
        let r = wilcoxon_signed_rank(&x, &y).unwrap();
        assert_eq!(r.method, WilcoxonMethod::Normal);
        assert_eq!(r.statistic, 0.0);
        assert!(r.favors_first_lower());
        // W = 0, n = 30: z = (0.5 - 232.5) / sqrt(2363.75); scipy gives 1.825371456e-6.
        assert_relative_eq!(r.p_value, 1.825_371_456e-6, max_relative = 1e-6);
    }

    #[test]
    fn mean_error_examples() {
        let run = |e: f64| RunResult {
            best_value: e,
            best_position: vec![],
            error: e,
            nfe_used: 1,
            history: vec![],
        };
        let (m, s) = mean_error(&[run(1.0), run(3.0)]).unwrap();
        assert_eq!(m, 2.0);
        assert_relative_eq!(s, 2f64.sqrt());
        assert_eq!(mean_error(&[run(4.5)]).unwrap(), (4.5, 0.0));
        let same: Vec<RunResult> = (0..25).map(|_| run(0.25)).collect();
        assert_eq!(mean_error(&same).unwrap(), (0.25, 0.0));
        assert!(mean_error(&[]).is_err());
    }
}
