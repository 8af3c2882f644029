use std::fmt;
use std::str::FromStr;

use crate::config::{RunConfig, RunResult};
use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::pso::{run_pso, PsoConfig};
use crate::rng::RngStream;
use crate::{hms, mcs};

/// The runnable optimizers.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Hms,
    McsHms,
    Pso,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Hms, Algorithm::McsHms, Algorithm::Pso];

    /// Fixed id used for stream derivation; independent of listing order.
    pub fn id(self) -> u64 {
        match self {
            Algorithm::Hms => 0,
            Algorithm::McsHms => 1,
            Algorithm::Pso => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Hms => "hms",
            Algorithm::McsHms => "mcs-hms",
            Algorithm::Pso => "pso",
        }
    }

    /// Runs the algorithm. PSO takes population, budget and seed from `cfg`
    /// and keeps its own defaults for everything else.
    pub fn run(self, objective: &Objective, cfg: &RunConfig, rng: &mut RngStream) -> Result<RunResult> {
        match self {
            Algorithm::Hms => hms::run_hms(objective, cfg, rng),
            Algorithm::McsHms => mcs::run_mcs_hms(objective, cfg, rng),
            Algorithm::Pso => {
                let pso = PsoConfig {
                    pop_size: cfg.pop_size,
                    nfe_max: cfg.nfe_max,
                    seed: cfg.seed,
                    ..PsoConfig::default()
                };
                run_pso(objective, &pso, rng)
            }
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "hms" => Ok(Algorithm::Hms),
            "mcs-hms" | "mcs_hms" | "mcshms" => Ok(Algorithm::McsHms),
            "pso" => Ok(Algorithm::Pso),
            _ => Err(Error::UnknownAlgorithm(s.to_string())),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
