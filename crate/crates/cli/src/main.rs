use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use mcs_hms_harness::ranks::report_ranks;
use mcs_hms_harness::replay::replay_table;
use mcs_hms_harness::{fixtures, replay_fixtures, run_experiment, ExperimentConfig, FixtureId, HarnessError};

#[derive(Parser)]
#[command(name = "mcs-hms", version, about = "Run and analyse HMS / MCS-HMS optimizer experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an experiment and write raw.csv and summary.csv.
    Run(RunArgs),
    /// Recompute rank, head-to-head and Wilcoxon tables from a result table.
    Replay {
        /// D30, D50, D100, or a path to a wide CSV (function,<alg>,...).
        table: String,
    },
    /// Per-function ranks from a summary or wide CSV.
    Ranks {
        /// Summary CSV, wide CSV, or D30/D50/D100 for a bundled table.
        input: String,
        /// Dimension to report when the summary holds several.
        #[arg(long)]
        dim: Option<usize>,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct RunArgs {
    /// Flat `key = value` config file; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    suite: Option<String>,
    /// Comma-separated dimensions.
    #[arg(long)]
    dims: Option<String>,
    /// Comma-separated subset of hms, mcs-hms, pso.
    #[arg(long)]
    algorithms: Option<String>,
    #[arg(long)]
    runs: Option<String>,
    #[arg(long)]
    nfe_max: Option<String>,
    #[arg(long)]
    seed: Option<String>,
    #[arg(long)]
    pop_size: Option<String>,
    #[arg(long)]
    out: Option<String>,
    #[arg(long)]
    parallelism: Option<String>,
}

impl RunArgs {
    fn resolve(&self) -> Result<ExperimentConfig, HarnessError> {
        let mut cfg = match &self.config {
            Some(path) => ExperimentConfig::from_file(path)?,
            None => ExperimentConfig::default(),
        };
        let flags = [
            ("suite", &self.suite),
            ("dims", &self.dims),
            ("algorithms", &self.algorithms),
            ("runs", &self.runs),
            ("nfe_max", &self.nfe_max),
            ("master_seed", &self.seed),
            ("pop_size", &self.pop_size),
            ("output", &self.out),
            ("parallelism", &self.parallelism),
        ];
        for (key, value) in flags {
            if let Some(value) = value {
                cfg.set(key, value)?;
            }
        }
        Ok(cfg)
    }
}

fn fail(stage: &str, err: HarnessError) -> ExitCode {
    eprintln!("error [{stage}]: {err}");
    ExitCode::FAILURE
}

fn read_input(input: &str) -> Result<(String, String), HarnessError> {
    if let Ok(id) = input.parse::<FixtureId>() {
        return Ok((id.text().to_string(), id.file_name().to_string()));
    }
    let text = std::fs::read_to_string(input).map_err(|source| HarnessError::Io { path: input.into(), source })?;
    Ok((text, input.to_string()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Run(args) => {
            let cfg = match args.resolve().and_then(|c| c.validate().map(|_| c)) {
                Ok(cfg) => cfg,
                Err(e) => return fail("config", e),
            };
            match run_experiment(&cfg) {
                Ok(out) => {
                    println!("wrote {} rows to {}", out.raw.len(), out.raw_path.display());
                    println!("wrote {} rows to {}", out.summary.len(), out.summary_path.display());
                    ExitCode::SUCCESS
                }
                Err(e) => fail("run", e),
            }
        }
        Command::Replay { table } => {
            let report = match table.parse::<FixtureId>() {
                Ok(id) => replay_fixtures(id),
                Err(_) => read_input(&table).and_then(|(text, name)| {
                    let parsed = fixtures::parse_wide_table(&text, &name)?;
                    replay_table(&parsed, &name, None)
                }),
            };
            match report {
                Ok(report) => {
                    print!("{report}");
                    ExitCode::SUCCESS
                }
                Err(e) => fail("replay", e),
            }
        }
        Command::Ranks { input, dim, out } => {
            let report = match read_input(&input).and_then(|(text, name)| report_ranks(&text, &name, dim)) {
                Ok(r) => r,
                Err(e) => return fail("ranks", e),
            };
            let csv = report.to_csv();
            match out {
                Some(path) => {
                    if let Err(source) = std::fs::write(&path, csv) {
                        return fail("ranks", HarnessError::Io { path, source });
                    }
                }
                None => print!("{csv}"),
            }
            for alg in &report.algorithms {
                eprintln!("{alg}: rank-1 on {} of {} functions", report.rank_one_count(alg), report.ranks_of(alg).len());
            }
            ExitCode::SUCCESS
        }
    }
}
