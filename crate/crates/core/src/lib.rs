//! Human Mental Search (HMS) and its multi-cluster selection variant
//! (MCS-HMS) for bound-constrained continuous minimization.
//!
//! The crate is organised bottom-up:
//!
//! * [`rng`], [`objective`] and [`config`] hold the shared plumbing: seeded
//!   random streams, objectives with box bounds and an evaluation budget,
//!   run configuration and results.
//! * [`levy`] generates the Levy-flight steps used by mental search.
//! * [`clustering`] groups the population with full or one-step k-means.
//! * [`hms`] and [`mcs`] are the two optimizers, [`pso`] a particle swarm
//!   baseline run on the same budget axis.
//! * [`benchmarks`] provides shifted/rotated test functions and
//!   [`stats`] the ranking and Wilcoxon machinery used to compare results.

pub mod algorithm;
pub mod benchmarks;
pub mod clustering;
pub mod config;
pub mod error;
pub mod hms;
pub mod levy;
pub mod mcs;
pub mod objective;
pub mod pso;
pub mod rng;
pub mod stats;

pub use algorithm::Algorithm;
pub use benchmarks::{make_suite, BaseFunction, TransformedObjective};
pub use clustering::ClusterAssignment;
pub use config::{RunConfig, RunResult};
pub use error::{Error, Result};
pub use hms::run_hms;
pub use mcs::run_mcs_hms;
pub use objective::{clamp, Bid, Budget, Objective};
pub use pso::{run_pso, PsoConfig};
pub use rng::{derive_stream, RngStream};
pub use stats::{RankSummary, ResultTable, WilcoxonResult};
