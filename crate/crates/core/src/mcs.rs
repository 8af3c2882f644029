//! Multi-cluster selection HMS.
//!
//! Grouping uses one-step k-means. The best bid of every cluster goes into a
//! memory `M`, rebuilt each iteration, and the movement target is drawn
//! uniformly from `M`. The cluster it came from is the promising area and its
//! members stay put; everything else moves toward the target exactly as in
//! standard HMS.

use crate::clustering::{self, ClusterAssignment};
use crate::config::{RunConfig, RunResult};
use crate::error::{Error, Result};
use crate::hms::{best_in_cluster, run_loop, Grouping, HmsState};
use crate::objective::{Bid, Objective};
use crate::rng::RngStream;

#[derive(Debug, Clone, PartialEq)]
pub struct MemoryEntry {
    pub cluster: usize,
    pub bid: Bid,
}

/// Best bid of each cluster, in cluster order.
#[derive(Debug, Clone, PartialEq)]
pub struct ClusterMemory {
    entries: Vec<MemoryEntry>,
}

impl ClusterMemory {
    pub fn entries(&self) -> &[MemoryEntry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Per-cluster argmin of the population; ties go to the lowest index.
pub fn build_memory(assignment: &ClusterAssignment, population: &[Bid]) -> Result<ClusterMemory> {
    if assignment.labels().len() != population.len() {
        return Err(Error::LengthMismatch(assignment.labels().len(), population.len()));
    }
    let entries = (0..assignment.k())
        .filter(|&c| assignment.labels().contains(&c))
        .map(|c| MemoryEntry {
            cluster: c,
            bid: population[best_in_cluster(population, assignment, c)].clone(),
        })
        .collect();
    Ok(ClusterMemory { entries })
}

/// Uniform pick from the memory. A single entry is returned without
/// touching the stream.
pub fn select_target(memory: &ClusterMemory, rng: &mut RngStream) -> Result<(Bid, usize)> {
    let entry = match memory.entries.len() {
        0 => return Err(Error::EmptyMemory),
        1 => &memory.entries[0],
        n => &memory.entries[rng.index(n)],
    };
    Ok((entry.bid.clone(), entry.cluster))
}

/// One-step k-means, memory construction and random target selection.
pub fn grouping_phase_mcs(state: &HmsState, cfg: &RunConfig, rng: &mut RngStream) -> Result<Grouping> {
    let assignment = clustering::one_step_kmeans(&state.population, cfg.k_clusters, rng)?;
    let memory = build_memory(&assignment, &state.population)?;
    let (target, cluster) = select_target(&memory, rng)?;
    Ok(Grouping {
        cluster,
        target,
        assignment,
    })
}

pub fn run_mcs_hms(objective: &Objective, cfg: &RunConfig, rng: &mut RngStream) -> Result<RunResult> {
    run_loop(objective, cfg, rng, |state, rng| grouping_phase_mcs(state, cfg, rng))
}
