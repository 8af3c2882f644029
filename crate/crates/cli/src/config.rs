//! Experiment configuration and its flat `key = value` file format.
//!
//! ```text
//! # comments and blank lines are ignored
//! suite = classic10
//! dims = 10, 30
//! algorithms = hms, mcs-hms, pso
//! runs = 25
//! nfe_max = 100000
//! master_seed = 42
//! output = results
//! parallelism = 4
//! ```

use std::path::{Path, PathBuf};
use std::str::FromStr;

use mcs_hms_core::{Algorithm, RunConfig};

use crate::error::{HarnessError, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub suite: String,
    pub dims: Vec<usize>,
    pub algorithms: Vec<Algorithm>,
    pub runs: usize,
    pub nfe_max: u64,
    pub master_seed: u64,
    pub pop_size: usize,
    pub output: PathBuf,
    pub parallelism: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self {
            suite: "classic10".into(),
            dims: vec![10],
            algorithms: Algorithm::ALL.to_vec(),
            runs: 25,
            nfe_max: 100_000,
            master_seed: 42,
            pop_size: 50,
            output: PathBuf::from("results"),
            parallelism: 1,
        }
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value
        .trim()
        .parse()
        .map_err(|_| HarnessError::Config(format!("invalid value `{value}` for `{key}`")))
}

fn parse_list<T: FromStr>(key: &str, value: &str) -> Result<Vec<T>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| parse_value(key, s))
        .collect()
}

impl ExperimentConfig {
    /// Applies one `key = value` setting.
    pub fn set(&mut self, key: &str, value: &str) -> Result<()> {
        let value = value.trim();
        match key.trim().replace('-', "_").as_str() {
            "suite" => self.suite = value.to_string(),
            "dims" => self.dims = parse_list(key, value)?,
            "algorithms" => {
                self.algorithms = value
                    .split(',')
                    .map(str::trim)
                    .filter(|s| !s.is_empty())
                    .map(|s| s.parse::<Algorithm>().map_err(HarnessError::from))
                    .collect::<Result<_>>()?
            }
            "runs" => self.runs = parse_value(key, value)?,
            "nfe_max" => self.nfe_max = parse_value(key, value)?,
            "master_seed" | "seed" => self.master_seed = parse_value(key, value)?,
            "pop_size" => self.pop_size = parse_value(key, value)?,
            "output" | "out" => self.output = PathBuf::from(value),
            "parallelism" => self.parallelism = parse_value(key, value)?,
            other => return Err(HarnessError::Config(format!("unknown key `{other}`"))),
        }
        Ok(())
    }

    pub fn apply_text(&mut self, text: &str) -> Result<()> {
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .or_else(|| line.split_once(':'))
                .ok_or_else(|| HarnessError::Config(format!("line {}: expected `key = value`", lineno + 1)))?;
            self.set(key, value)?;
        }
        Ok(())
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))?;
        let mut cfg = Self::default();
        cfg.apply_text(&text)?;
        Ok(cfg)
    }

    pub fn run_config(&self) -> RunConfig {
        RunConfig {
            pop_size: self.pop_size,
            nfe_max: self.nfe_max,
            seed: self.master_seed,
            ..RunConfig::default()
        }
    }

    /// Checks everything that can fail before any run starts.
    pub fn validate(&self) -> Result<()> {
        if self.runs == 0 {
            return Err(HarnessError::Config("runs must be at least 1".into()));
        }
        if self.algorithms.is_empty() {
            return Err(HarnessError::Config("no algorithms selected".into()));
        }
        if self.dims.is_empty() {
            return Err(HarnessError::Config("no dimensions selected".into()));
        }
        if self.parallelism == 0 {
            return Err(HarnessError::Config("parallelism must be at least 1".into()));
        }
        self.run_config().validate()?;
        for &dim in &self.dims {
            mcs_hms_core::make_suite(&self.suite, dim, self.master_seed)?;
        }
        Ok(())
    }
}
