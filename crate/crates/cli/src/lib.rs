//! Experiment harness for the HMS family of optimizers.
//!
//! * [`experiment`] runs algorithms x functions x runs with derived seeds and
//!   writes raw and summary CSVs.
//! * [`replay`] recomputes rankings, pairwise counts and Wilcoxon tests from
//!   the published result tables shipped in `fixtures/`.
//! * [`ranks`] turns a summary (or a fixture table) into a per-function rank
//!   CSV.

pub mod config;
pub mod error;
pub mod experiment;
pub mod fixtures;
pub mod ranks;
pub mod replay;

pub use config::ExperimentConfig;
pub use error::{HarnessError, Result};
pub use experiment::{run_experiment, ExperimentOutput};
pub use fixtures::FixtureId;
pub use replay::{replay_fixtures, ReplayReport};
