//! Runs the (dim, function, algorithm, run) matrix and writes the CSVs.

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use mcs_hms_core::stats::{mean_and_sample_std, rank_row};
use mcs_hms_core::{derive_stream, make_suite, Algorithm, Objective};
use rayon::prelude::*;

use crate::config::ExperimentConfig;
use crate::error::{HarnessError, Result};

pub const RAW_HEADER: &str = "function,algorithm,dim,run,seed,best_error,nfe_used,wall_ms";
pub const SUMMARY_HEADER: &str = "function,algorithm,dim,mean_error,std_error,rank";
pub const RAW_FILE: &str = "raw.csv";
pub const SUMMARY_FILE: &str = "summary.csv";

#[derive(Debug, Clone, PartialEq)]
pub struct RawRow {
    pub function: String,
    pub algorithm: Algorithm,
    pub dim: usize,
    pub run: usize,
    pub seed: u64,
    pub best_error: f64,
    pub nfe_used: u64,
    pub wall_ms: u128,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryRow {
    pub function: String,
    pub algorithm: Algorithm,
    pub dim: usize,
    pub mean_error: f64,
    pub std_error: f64,
    pub rank: f64,
}

#[derive(Debug, Clone)]
pub struct ExperimentOutput {
    pub raw: Vec<RawRow>,
    pub summary: Vec<SummaryRow>,
    pub raw_path: PathBuf,
    pub summary_path: PathBuf,
}

/// Round-trip exact float formatting (17 significant digits).
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Seed-space id of a suite member; folds the dimension into the function id.
pub fn function_id(dim: usize, index: usize) -> u64 {
    ((dim as u64) << 16) | index as u64
}

struct Job<'a> {
    dim: usize,
    function_index: usize,
    objective: &'a Objective,
    algorithm: Algorithm,
    run: usize,
}

/// Executes every run in the matrix. Rows come back in matrix order
/// regardless of `parallelism`.
pub fn execute(cfg: &ExperimentConfig) -> Result<(Vec<RawRow>, Vec<SummaryRow>)> {
    cfg.validate()?;
    let suites = cfg
        .dims
        .iter()
        .map(|&dim| make_suite(&cfg.suite, dim, cfg.master_seed))
        .collect::<mcs_hms_core::Result<Vec<_>>>()?;

    let mut jobs = Vec::new();
    for (&dim, suite) in cfg.dims.iter().zip(&suites) {
        for (function_index, objective) in suite.iter().enumerate() {
            for &algorithm in &cfg.algorithms {
                for run in 0..cfg.runs {
                    jobs.push(Job { dim, function_index, objective, algorithm, run });
                }
            }
        }
    }

    let base = cfg.run_config();
    let run_one = |job: &Job| -> Result<RawRow> {
        let mut rng = derive_stream(
            cfg.master_seed,
            job.algorithm.id(),
            function_id(job.dim, job.function_index),
            job.run as u64,
        );
        let seed = rng.seed();
        let run_cfg = mcs_hms_core::RunConfig { seed, ..base.clone() };
        let start = Instant::now();
        let result = job.algorithm.run(job.objective, &run_cfg, &mut rng)?;
        Ok(RawRow {
            function: job.objective.name().to_string(),
            algorithm: job.algorithm,
            dim: job.dim,
            run: job.run,
            seed,
            best_error: result.error,
            nfe_used: result.nfe_used,
            wall_ms: start.elapsed().as_millis(),
        })
    };

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.parallelism)
        .build()
        .map_err(|e| HarnessError::Config(format!("thread pool: {e}")))?;
    // Indexed parallel collect preserves job order.
    let raw = pool.install(|| jobs.par_iter().map(run_one).collect::<Result<Vec<_>>>())?;

    let summary = summarize(&raw, cfg)?;
    Ok((raw, summary))
}

fn summarize(raw: &[RawRow], cfg: &ExperimentConfig) -> Result<Vec<SummaryRow>> {
    let mut summary = Vec::new();
    // Rows for one (dim, function) are contiguous: algorithms x runs.
    for block in raw.chunks(cfg.algorithms.len() * cfg.runs) {
        let stats = block
            .chunks(cfg.runs)
            .map(|runs| {
                let errors: Vec<f64> = runs.iter().map(|r| r.best_error).collect();
                mean_and_sample_std(&errors)
            })
            .collect::<mcs_hms_core::Result<Vec<_>>>()?;
        let means: Vec<f64> = stats.iter().map(|s| s.0).collect();
        let ranks = rank_row(&means);
        for ((runs, (mean, std)), rank) in block.chunks(cfg.runs).zip(stats).zip(ranks) {
            let first = &runs[0];
            summary.push(SummaryRow {
                function: first.function.clone(),
                algorithm: first.algorithm,
                dim: first.dim,
                mean_error: mean,
                std_error: std,
                rank,
            });
        }
    }
    Ok(summary)
}

pub fn raw_csv(rows: &[RawRow]) -> String {
    let mut out = String::from(RAW_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.function,
            r.algorithm,
            r.dim,
            r.run,
            r.seed,
            format_float(r.best_error),
            r.nfe_used,
            r.wall_ms
        ));
    }
    out
}

pub fn summary_csv(rows: &[SummaryRow]) -> String {
    let mut out = String::from(SUMMARY_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.function,
            r.algorithm,
            r.dim,
            format_float(r.mean_error),
            format_float(r.std_error),
            format_float(r.rank)
        ));
    }
    out
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| HarnessError::io(path, e))
}

/// Runs the experiment and writes `raw.csv` and `summary.csv` into the
/// configured output directory.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentOutput> {
    let (raw, summary) = execute(cfg)?;
    fs::create_dir_all(&cfg.output).map_err(|e| HarnessError::io(&cfg.output, e))?;
    let raw_path = cfg.output.join(RAW_FILE);
    let summary_path = cfg.output.join(SUMMARY_FILE);
    write_file(&raw_path, &raw_csv(&raw))?;
    write_file(&summary_path, &summary_csv(&summary))?;
    Ok(ExperimentOutput { raw, summary, raw_path, summary_path })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small(parallelism: usize) -> ExperimentConfig {
        ExperimentConfig {
            dims: vec![2],
            algorithms: vec![Algorithm::McsHms, Algorithm::Pso],
            runs: 2,
            nfe_max: 300,
            pop_size: 10,
            parallelism,
            ..Default::default()
        }
    }

    #[test]
    fn float_format_round_trips() {
        for v in [0.0, 1.0, 0.1, 1e-300, 123456.789, f64::MAX, 5e-324] {
            let s = format_float(v);
            assert_eq!(s.parse::<f64>().unwrap(), v, "{s}");
        }
        assert_eq!(format_float(0.1), "1.0000000000000001e-1");
    }

    #[test]
    fn matrix_order_and_counts() {
        let (raw, summary) = execute(&small(1)).unwrap();
        assert_eq!(raw.len(), 10 * 2 * 2);
        assert_eq!(summary.len(), 10 * 2);
        assert_eq!(raw[0].algorithm, Algorithm::McsHms);
        assert_eq!((raw[1].run, raw[2].algorithm), (1, Algorithm::Pso));
        assert_eq!(raw[3].function, raw[0].function);
        assert_ne!(raw[4].function, raw[0].function);
        for r in &raw {
            assert!(r.best_error >= 0.0);
            assert!(r.nfe_used <= 300);
        }
        for pair in summary.chunks(2) {
            assert_eq!(pair[0].rank + pair[1].rank, 3.0);
        }
    }

    #[test]
    fn parallel_matches_sequential() {
        let (a, _) = execute(&small(1)).unwrap();
        let (b, _) = execute(&small(3)).unwrap();
        let strip = |rows: Vec<RawRow>| rows.into_iter().map(|r| RawRow { wall_ms: 0, ..r }).collect::<Vec<_>>();
        assert_eq!(strip(a), strip(b));
    }

    #[test]
    fn seeds_depend_on_fixed_algorithm_id_not_listing_order() {
        let (a, _) = execute(&small(1)).unwrap();
        let mut cfg = small(1);
        cfg.algorithms.reverse();
        let (b, _) = execute(&cfg).unwrap();
        let find = |rows: &[RawRow], alg| rows.iter().find(|r| r.algorithm == alg && r.run == 1).unwrap().clone();
        assert_eq!(find(&a, Algorithm::Pso).seed, find(&b, Algorithm::Pso).seed);
        assert_eq!(find(&a, Algorithm::Pso).best_error, find(&b, Algorithm::Pso).best_error);
    }

    #[test]
    fn invalid_config_fails_before_running() {
        let cfg = ExperimentConfig { suite: "nope".into(), ..small(1) };
        assert!(execute(&cfg).is_err());
    }
}
