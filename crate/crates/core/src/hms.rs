//! Standard Human Mental Search.
//!
//! Each iteration runs three phases:
//!
//! 1. **Mental search**: every bid spawns `q` Levy-flight candidates around
//!    itself (`q` uniform in `[q_min, q_max]`) and keeps the best one if it
//!    improves the bid.
//! 2. **Grouping**: k-means on positions; the cluster with the lowest mean
//!    objective value wins and its best bid becomes the target `W`.
//! 3. **Movement**: bids outside the winner cluster move by
//!    `x_n += C * (r * W_n - x_n)` with a fresh `r ~ U[0, 1)` per coordinate.
//!
//! The loop ends when the evaluation budget is spent.

use crate::clustering::{self, ClusterAssignment};
use crate::config::{RunConfig, RunResult};
use crate::error::{Error, Result};
use crate::levy::mental_step;
use crate::objective::{Bid, Budget, Objective};
use crate::rng::RngStream;

#[derive(Debug, Clone)]
pub struct HmsState {
    pub population: Vec<Bid>,
    /// Best bid seen so far (`x*`).
    pub best: Bid,
    pub budget: Budget,
    pub iteration: usize,
    history: Vec<(u64, f64)>,
}

impl HmsState {
    /// Uniform initial population; every initial bid is a counted evaluation.
    pub fn initialize(objective: &Objective, cfg: &RunConfig, rng: &mut RngStream) -> Result<Self> {
        cfg.validate()?;
        let mut budget = Budget::new(cfg.nfe_max);
        let mut population = Vec::with_capacity(cfg.pop_size);
        let mut history = Vec::new();
        let mut best: Option<Bid> = None;
        for _ in 0..cfg.pop_size {
            let bid = Bid::evaluated(objective, objective.sample_uniform(rng), &mut budget)?;
            if best.as_ref().is_none_or(|b| bid.value < b.value) {
                history.push((budget.used(), bid.value));
                best = Some(bid.clone());
            }
            population.push(bid);
        }
        Ok(Self {
            population,
            best: best.expect("pop_size >= 1"),
            budget,
            iteration: 0,
            history,
        })
    }

    pub fn from_population(population: Vec<Bid>, budget: Budget) -> Self {
        let best = population
            .iter()
            .min_by(|a, b| a.value.total_cmp(&b.value))
            .cloned()
            .expect("population must not be empty");
        Self {
            history: vec![(budget.used(), best.value)],
            population,
            best,
            budget,
            iteration: 0,
        }
    }

    pub fn nfe(&self) -> u64 {
        self.budget.used()
    }

    pub fn history(&self) -> &[(u64, f64)] {
        &self.history
    }

    pub fn values(&self) -> Vec<f64> {
        self.population.iter().map(|b| b.value).collect()
    }

    /// Evaluates `position` (already in bounds) and updates the best-so-far.
    /// Returns `None` once the budget is spent.
    fn evaluate(&mut self, objective: &Objective, position: Vec<f64>) -> Option<Bid> {
        match Bid::evaluated(objective, position, &mut self.budget) {
            Ok(bid) => {
                if bid.value < self.best.value {
                    self.best = bid.clone();
                    self.history.push((self.budget.used(), bid.value));
                }
                Some(bid)
            }
            Err(Error::BudgetExhausted(_)) => None,
            Err(e) => unreachable!("positions are built with the objective's dimension: {e}"),
        }
    }

    pub fn into_result(self, objective: &Objective) -> RunResult {
        RunResult {
            error: self.best.value - objective.optimum_value(),
            best_value: self.best.value,
            best_position: self.best.position,
            nfe_used: self.budget.used(),
            history: self.history,
        }
    }
}

/// Mental search with greedy replacement. Stops early if the budget runs
/// out mid-phase.
pub fn mental_search_phase(
    state: &mut HmsState,
    cfg: &RunConfig,
    objective: &Objective,
    rng: &mut RngStream,
) -> Result<()> {
    for i in 0..state.population.len() {
        if state.budget.is_exhausted() {
            break;
        }
        let q = rng.int_inclusive(cfg.q_min, cfg.q_max);
        let mut best_candidate: Option<Bid> = None;
        for _ in 0..q {
            let nfe = state.nfe();
            let x = &state.population[i].position;
            let step = mental_step(x, &state.best.position, nfe, cfg.nfe_max, rng, cfg.beta_range())?;
            let candidate: Vec<f64> = x.iter().zip(&step).map(|(a, s)| a + s).collect();
            let Some(bid) = state.evaluate(objective, candidate) else {
                break;
            };
            if best_candidate.as_ref().is_none_or(|b| bid.value < b.value) {
                best_candidate = Some(bid);
            }
        }
        if let Some(candidate) = best_candidate {
            if candidate.value < state.population[i].value {
                state.population[i] = candidate;
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Grouping {
    /// The promising cluster; its members do not move.
    pub cluster: usize,
    /// Movement target `W`.
    pub target: Bid,
    pub assignment: ClusterAssignment,
}

/// Lowest-value member of `cluster`; ties go to the lowest population index.
pub(crate) fn best_in_cluster(population: &[Bid], assignment: &ClusterAssignment, cluster: usize) -> usize {
    assignment
        .members(cluster)
        .into_iter()
        .fold(None, |best: Option<usize>, i| match best {
            Some(b) if population[b].value <= population[i].value => Some(b),
            _ => Some(i),
        })
        .expect("clusters are non-empty after repair")
}

/// Winner selection given an existing clustering: the cluster with the
/// lowest mean value (lowest index on ties) and its best bid.
pub fn select_winner(population: &[Bid], assignment: ClusterAssignment) -> Result<Grouping> {
    let values: Vec<f64> = population.iter().map(|b| b.value).collect();
    let means = clustering::cluster_mean_values(&assignment, &values)?;
    let cluster = means
        .iter()
        .enumerate()
        .fold(0, |best, (c, m)| if *m < means[best] { c } else { best });
    let target = population[best_in_cluster(population, &assignment, cluster)].clone();
    Ok(Grouping {
        cluster,
        target,
        assignment,
    })
}

/// Full k-means grouping followed by winner selection.
pub fn grouping_phase_hms(state: &HmsState, cfg: &RunConfig, rng: &mut RngStream) -> Result<Grouping> {
    let assignment = clustering::full_kmeans(
        &state.population,
        cfg.k_clusters,
        rng,
        clustering::DEFAULT_MAX_ITER,
        clustering::DEFAULT_TOL,
    )?;
    select_winner(&state.population, assignment)
}

/// `x + C * (r ⊙ W - x)` for explicit `r`.
pub fn move_toward(x: &[f64], target: &[f64], c: f64, r: &[f64]) -> Vec<f64> {
    x.iter()
        .zip(target)
        .zip(r)
        .map(|((xn, wn), rn)| xn + c * (rn * wn - xn))
        .collect()
}

/// Moves every bid not listed in `exempt` toward `target`, clamps and
/// re-evaluates it. Moved bids are replaced unconditionally.
pub fn movement_phase(
    state: &mut HmsState,
    target: &Bid,
    exempt: &[usize],
    c: f64,
    rng: &mut RngStream,
    objective: &Objective,
) -> Result<()> {
    objective.check_dim(&target.position)?;
    let mut stays = vec![false; state.population.len()];
    for &i in exempt {
        stays[i] = true;
    }
    for i in 0..state.population.len() {
        if stays[i] {
            continue;
        }
        if state.budget.is_exhausted() {
            break;
        }
        let r: Vec<f64> = (0..objective.dim()).map(|_| rng.uniform()).collect();
        let moved = move_toward(&state.population[i].position, &target.position, c, &r);
        match state.evaluate(objective, moved) {
            Some(bid) => state.population[i] = bid,
            None => break,
        }
    }
    Ok(())
}

/// The grouping strategy is the only difference between HMS and MCS-HMS.
pub(crate) fn run_loop<G>(
    objective: &Objective,
    cfg: &RunConfig,
    rng: &mut RngStream,
    mut group: G,
) -> Result<RunResult>
where
    G: FnMut(&HmsState, &mut RngStream) -> Result<Grouping>,
{
    let mut state = HmsState::initialize(objective, cfg, rng)?;
    while !state.budget.is_exhausted() {
        mental_search_phase(&mut state, cfg, objective, rng)?;
        if state.budget.is_exhausted() {
            break;
        }
        let grouping = group(&state, rng)?;
        let exempt = grouping.assignment.members(grouping.cluster);
        movement_phase(&mut state, &grouping.target, &exempt, cfg.c, rng, objective)?;
        state.iteration += 1;
    }
    Ok(state.into_result(objective))
}

pub fn run_hms(objective: &Objective, cfg: &RunConfig, rng: &mut RngStream) -> Result<RunResult> {
    run_loop(objective, cfg, rng, |state, rng| grouping_phase_hms(state, cfg, rng))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere(dim: usize) -> Objective {
        Objective::uniform_box("sphere", dim, -100.0, 100.0, 0.0, |x| x.iter().map(|v| v * v).sum())
            .unwrap()
    }

    fn bid(position: Vec<f64>, value: f64) -> Bid {
        Bid::new(position, value)
    }

    #[test]
    fn mental_search_leaves_optimal_bid_alone() {
        let obj = sphere(2);
        let cfg = RunConfig { pop_size: 1, k_clusters: 1, ..RunConfig::default() };
        let mut state = HmsState::from_population(vec![bid(vec![0.0, 0.0], 0.0)], Budget::with_used(1, 100));
        mental_search_phase(&mut state, &cfg, &obj, &mut RngStream::from_seed(0)).unwrap();
        assert_eq!(state.population[0], bid(vec![0.0, 0.0], 0.0));
        assert!(state.nfe() >= 3);
    }

    #[test]
    fn mental_search_nfe_accounting() {
        let obj = sphere(2);
        let cfg = RunConfig { pop_size: 10, q_min: 2, q_max: 2, k_clusters: 2, nfe_max: 1000, ..RunConfig::default() };
        let mut rng = RngStream::from_seed(4);
        let mut state = HmsState::initialize(&obj, &cfg, &mut rng).unwrap();
        assert_eq!(state.nfe(), 10);
        mental_search_phase(&mut state, &cfg, &obj, &mut rng).unwrap();
        assert_eq!(state.nfe(), 30);
    }

    #[test]
    fn mental_search_stops_at_budget() {
        let obj = sphere(2);
        let cfg = RunConfig { pop_size: 10, k_clusters: 2, nfe_max: 15, ..RunConfig::default() };
        let mut rng = RngStream::from_seed(4);
        let mut state = HmsState::initialize(&obj, &cfg, &mut rng).unwrap();
        mental_search_phase(&mut state, &cfg, &obj, &mut rng).unwrap();
        assert_eq!(state.nfe(), 15);
    }

    #[test]
    fn mental_search_is_greedy_and_reproducible() {
        let obj = sphere(2);
        let cfg = RunConfig { pop_size: 10, k_clusters: 2, nfe_max: 1000, ..RunConfig::default() };
        let run = || {
            let mut rng = RngStream::from_seed(12);
            let mut state = HmsState::initialize(&obj, &cfg, &mut rng).unwrap();
            let before = state.values();
            mental_search_phase(&mut state, &cfg, &obj, &mut rng).unwrap();
            (before, state)
        };
        let (before, a) = run();
        let (_, b) = run();
        assert_eq!(a.population, b.population);
        for (old, new) in before.iter().zip(a.values()) {
            assert!(new <= *old);
        }
    }

    #[test]
    fn winner_is_lowest_mean_cluster() {
        // Means: cluster 0 -> 5, cluster 1 -> 2, cluster 2 -> 9.
        let pop = vec![
            bid(vec![0.0], 4.0),
            bid(vec![0.1], 6.0),
            bid(vec![5.0], 3.0),
            bid(vec![5.1], 1.5),
            bid(vec![5.2], 1.5),
            bid(vec![9.0], 9.0),
        ];
        let a = clustering::one_step_kmeans_from_seeds(&pop, &[0, 2, 5]).unwrap();
        assert_eq!(a.labels(), &[0, 0, 1, 1, 1, 2]);
        let g = select_winner(&pop, a).unwrap();
        assert_eq!(g.cluster, 1);
        assert_eq!(g.target, pop[3]);
    }

    #[test]
    fn target_is_best_member_of_winner() {
        let pop = vec![bid(vec![0.0], 3.0), bid(vec![0.1], 1.5), bid(vec![0.2], 2.2), bid(vec![50.0], 100.0)];
        let a = clustering::one_step_kmeans_from_seeds(&pop, &[0, 3]).unwrap();
        let g = select_winner(&pop, a).unwrap();
        assert_eq!(g.cluster, 0);
        assert_eq!(g.target.value, 1.5);
    }

    #[test]
    fn identical_bids_pick_cluster_zero() {
        let cfg = RunConfig { pop_size: 6, k_clusters: 3, ..RunConfig::default() };
        let pop = vec![bid(vec![1.0, 1.0], 2.0); 6];
        let state = HmsState::from_population(pop.clone(), Budget::new(100));
        let g = grouping_phase_hms(&state, &cfg, &mut RngStream::from_seed(1)).unwrap();
        assert_eq!(g.cluster, 0);
        assert_eq!(g.target, pop[0]);
    }

    #[test]
    fn movement_formula() {
        assert_eq!(move_toward(&[10.0, 10.0], &[4.0, 2.0], 1.0, &[0.5, 0.5]), vec![2.0, 1.0]);
        assert_eq!(move_toward(&[10.0, -3.0], &[4.0, 2.0], 0.0, &[0.3, 0.9]), vec![10.0, -3.0]);
        assert_eq!(move_toward(&[10.0, -3.0], &[4.0, 2.0], 1.0, &[1.0, 1.0]), vec![4.0, 2.0]);
    }

    #[test]
    fn movement_uses_recorded_draws_and_skips_exempt() {
        let obj = sphere(2);
        let pop = vec![bid(vec![10.0, 10.0], 200.0), bid(vec![4.0, 2.0], 20.0), bid(vec![-7.0, 3.0], 58.0)];
        let mut state = HmsState::from_population(pop.clone(), Budget::with_used(3, 100));
        let target = pop[1].clone();
        movement_phase(&mut state, &target, &[1], 1.0, &mut RngStream::from_seed(9), &obj).unwrap();

        let mut replay = RngStream::from_seed(9);
        for i in [0, 2] {
            let r: Vec<f64> = (0..2).map(|_| replay.uniform()).collect();
            let expected: Vec<f64> = r.iter().zip(&target.position).map(|(r, w)| r * w).collect();
            let moved = &state.population[i];
            for (got, want) in moved.position.iter().zip(&expected) {
                assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0));
            }
            assert_eq!(moved.value, obj.eval(&moved.position));
        }
        assert_eq!(state.population[1], pop[1]);
        assert_eq!(state.nfe(), 5);
    }

    #[test]
    fn budget_of_one_population_returns_best_initial_bid() {
        let obj = sphere(3);
        let cfg = RunConfig { pop_size: 20, nfe_max: 20, ..RunConfig::default() };
        let mut rng = RngStream::from_seed(77);
        let res = run_hms(&obj, &cfg, &mut rng).unwrap();
        let mut replay = RngStream::from_seed(77);
        let init = HmsState::initialize(&obj, &cfg, &mut replay).unwrap();
        let best = init.population.iter().map(|b| b.value).fold(f64::INFINITY, f64::min);
        assert_eq!(res.best_value, best);
        assert_eq!(res.nfe_used, 20);
    }

    #[test]
    fn invalid_config_is_rejected_before_evaluation() {
        let obj = sphere(2);
        let cfg = RunConfig { q_min: 1, ..RunConfig::default() };
        assert!(matches!(run_hms(&obj, &cfg, &mut RngStream::from_seed(0)), Err(Error::Config(_))));
    }
}
