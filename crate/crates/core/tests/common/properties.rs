//! Randomized property checks shared by the core property tests and the
//! acceptance runner. Each check runs `cases` seeded cases and reports the
//! first counterexample.

use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use mcs_hms_core::clustering::{full_kmeans_from_seeds, one_step_kmeans_from_seeds, sample_seeds, within_cluster_ss};
use mcs_hms_core::hms::{grouping_phase_hms, mental_search_phase, movement_phase, HmsState};
use mcs_hms_core::mcs::grouping_phase_mcs;
use mcs_hms_core::stats::rank_row;
use mcs_hms_core::{derive_stream, make_suite, Algorithm, Objective, RngStream, RunConfig};

pub type Check = Result<(), String>;

const PROPERTY_STREAM: u64 = 0x5052_4f50;

fn case_rng(property: u64, case: u64) -> RngStream {
    derive_stream(0xACCE_5500, PROPERTY_STREAM, property, case)
}

fn random_points(rng: &mut RngStream, n: usize, dim: usize) -> Vec<Vec<f64>> {
    (0..n).map(|_| (0..dim).map(|_| rng.uniform_range(-10.0, 10.0)).collect()).collect()
}

fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

/// No point is strictly closer to another seed than to its own; centroids
/// are member means; Lloyd iterations never raise the within-cluster SS.
pub fn clustering_assignment_optimality(cases: u64) -> Check {
    for case in 0..cases {
        let mut rng = case_rng(1, case);
        let n = 2 + rng.index(39);
        let dim = 1 + rng.index(5);
        let k = 1 + rng.index(n.min(6));
        let points = random_points(&mut rng, n, dim);
        let seeds = sample_seeds(n, k, &mut rng);
        let a = one_step_kmeans_from_seeds(&points, &seeds).map_err(|e| format!("case {case}: {e}"))?;

        for (i, p) in points.iter().enumerate() {
            let own = dist2(p, &points[seeds[a.labels()[i]]]);
            for &s in &seeds {
                if dist2(p, &points[s]) < own {
                    return Err(format!("case {case}: point {i} is closer to seed {s} than to its own"));
                }
            }
        }
        for c in 0..k {
            let members = a.members(c);
            if members.is_empty() {
                return Err(format!("case {case}: cluster {c} empty"));
            }
            for j in 0..dim {
                let mean = members.iter().map(|&i| points[i][j]).sum::<f64>() / members.len() as f64;
                if (mean - a.centroids()[c][j]).abs() > 1e-9 {
                    return Err(format!("case {case}: centroid {c} is not its members' mean"));
                }
            }
        }

        let mut previous = f64::INFINITY;
        for iters in 1..=6 {
            let full = full_kmeans_from_seeds(&points, &seeds, iters, 0.0).map_err(|e| e.to_string())?;
            let ss = within_cluster_ss(&points, &full);
            if ss > previous * (1.0 + 1e-12) + 1e-12 {
                return Err(format!("case {case}: within-cluster SS rose from {previous} to {ss} at {iters} iterations"));
            }
            previous = ss;
        }
    }
    Ok(())
}

/// Ranks sum to n(n+1)/2 and ignore strictly monotone transforms.
pub fn rank_row_sum(cases: u64) -> Check {
    for case in 0..cases {
        let mut rng = case_rng(2, case);
        let n = 1 + rng.index(20);
        let tied = rng.uniform() < 0.5;
        let row: Vec<f64> = (0..n)
            .map(|_| if tied { rng.index(4) as f64 } else { rng.uniform_range(0.0, 100.0) })
            .collect();
        let ranks = rank_row(&row);
        let sum: f64 = ranks.iter().sum();
        let expected = (n * (n + 1)) as f64 / 2.0;
        if (sum - expected).abs() > 1e-9 {
            return Err(format!("case {case}: ranks of {row:?} sum to {sum}, expected {expected}"));
        }
        let transformed: Vec<f64> = row.iter().map(|v| (0.1 * v).exp() * 3.0 + 1.0).collect();
        if rank_row(&transformed) != ranks {
            return Err(format!("case {case}: ranks changed under a monotone transform"));
        }
    }
    Ok(())
}

fn small_problem(rng: &mut RngStream, case: u64) -> (Objective, RunConfig, Algorithm) {
    let suite = make_suite("classic10", 2, case).expect("suite");
    let objective = suite[rng.index(suite.len())].clone();
    let pop_size = 4 + rng.index(12);
    let cfg = RunConfig {
        pop_size,
        k_clusters: 1 + rng.index(pop_size.min(5)),
        nfe_max: (pop_size + rng.index(400)) as u64,
        seed: case,
        ..RunConfig::default()
    };
    let algorithm = Algorithm::ALL[rng.index(3)];
    (objective, cfg, algorithm)
}

/// The recorded best-so-far never increases and ends at the reported best.
pub fn monotone_best_so_far(cases: u64) -> Check {
    for case in 0..cases {
        let mut rng = case_rng(3, case);
        let (objective, cfg, algorithm) = small_problem(&mut rng, case);
        let result = algorithm.run(&objective, &cfg, &mut rng).map_err(|e| format!("case {case}: {e}"))?;
        for w in result.history.windows(2) {
            if w[1].1 > w[0].1 || w[1].0 < w[0].0 {
                return Err(format!("case {case} ({algorithm}): history not monotone: {:?} then {:?}", w[0], w[1]));
            }
        }
        match result.history.last() {
            Some(&(_, v)) if v == result.best_value => {}
            other => return Err(format!("case {case}: last history entry {other:?} != best {}", result.best_value)),
        }
    }
    Ok(())
}

/// Every objective call is counted, and the count stays within budget.
pub fn nfe_accounting(cases: u64) -> Check {
    for case in 0..cases {
        let mut rng = case_rng(4, case);
        let (inner, cfg, algorithm) = small_problem(&mut rng, case);
        let calls = Arc::new(AtomicU64::new(0));
        let counter = Arc::clone(&calls);
        let counted_inner = inner.clone();
        let objective = Objective::new(
            inner.name(),
            inner.lower().to_vec(),
            inner.upper().to_vec(),
            inner.optimum_value(),
            move |x| {
                counter.fetch_add(1, Ordering::Relaxed);
                counted_inner.eval(x)
            },
        )
        .map_err(|e| e.to_string())?;
        let result = algorithm.run(&objective, &cfg, &mut rng).map_err(|e| format!("case {case}: {e}"))?;
        let seen = calls.load(Ordering::Relaxed);
        if seen != result.nfe_used {
            return Err(format!("case {case} ({algorithm}): {seen} calls but nfe_used = {}", result.nfe_used));
        }
        if result.nfe_used > cfg.nfe_max || result.nfe_used < cfg.pop_size as u64 {
            return Err(format!(
                "case {case} ({algorithm}): nfe_used {} outside [{}, {}]",
                result.nfe_used, cfg.pop_size, cfg.nfe_max
            ));
        }
    }
    Ok(())
}

/// Bids stay inside the box through every phase, including targets far
/// outside it.
pub fn bounds_preservation(cases: u64) -> Check {
    for case in 0..cases {
        let mut rng = case_rng(5, case);
        let (objective, mut cfg, algorithm) = small_problem(&mut rng, case);
        cfg.nfe_max = cfg.nfe_max.max(cfg.pop_size as u64 * 4);
        cfg.c = rng.uniform_range(0.5, 3.0);
        let inside = |state: &HmsState, phase: &str| -> Check {
            match state.population.iter().position(|b| !objective.contains(&b.position)) {
                Some(i) => Err(format!("case {case}: bid {i} out of bounds after {phase}")),
                None => Ok(()),
            }
        };
        let mut state = HmsState::initialize(&objective, &cfg, &mut rng).map_err(|e| e.to_string())?;
        inside(&state, "initialization")?;
        for _ in 0..3 {
            if state.budget.is_exhausted() {
                break;
            }
            mental_search_phase(&mut state, &cfg, &objective, &mut rng).map_err(|e| e.to_string())?;
            inside(&state, "mental search")?;
            if state.budget.is_exhausted() {
                break;
            }
            let grouping = if rng.uniform() < 0.5 {
                grouping_phase_hms(&state, &cfg, &mut rng)
            } else {
                grouping_phase_mcs(&state, &cfg, &mut rng)
            }
            .map_err(|e| e.to_string())?;
            let exempt = grouping.assignment.members(grouping.cluster);
            movement_phase(&mut state, &grouping.target, &exempt, cfg.c, &mut rng, &objective)
                .map_err(|e| e.to_string())?;
            inside(&state, "movement")?;
        }
        let result = algorithm.run(&objective, &cfg, &mut rng).map_err(|e| e.to_string())?;
        if !objective.contains(&result.best_position) {
            return Err(format!("case {case} ({algorithm}): best position out of bounds"));
        }
    }
    Ok(())
}

pub const CASES: u64 = 1000;

#[allow(dead_code)]
pub const ALL: [(&str, fn(u64) -> Check); 5] = [
    ("clustering assignment optimality", clustering_assignment_optimality),
    ("rank row sum n(n+1)/2", rank_row_sum),
    ("monotone best-so-far", monotone_best_so_far),
    ("NFE accounting", nfe_accounting),
    ("bounds preservation", bounds_preservation),
];
