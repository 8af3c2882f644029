//! Global-best particle swarm optimization.
//!
//! Inertia falls linearly from `w_start` to `w_end` over the evaluation
//! budget (not over iterations), so PSO shares the budget axis with HMS.

use crate::config::RunResult;
use crate::error::{Error, Result};
use crate::objective::{Bid, Budget, Objective};
use crate::rng::RngStream;

#[derive(Debug, Clone, PartialEq)]
pub struct PsoConfig {
    pub pop_size: usize,
    pub nfe_max: u64,
    pub seed: u64,
    pub w_start: f64,
    pub w_end: f64,
    pub c1: f64,
    pub c2: f64,
    /// Velocity limit as a fraction of each coordinate's box width.
    pub v_max_fraction: f64,
}

impl Default for PsoConfig {
    fn default() -> Self {
        Self {
            pop_size: 50,
            nfe_max: 10_000,
            seed: 0,
            w_start: 1.0,
            w_end: 0.0,
            c1: 2.0,
            c2: 2.0,
            v_max_fraction: 0.2,
        }
    }
}

impl PsoConfig {
    pub fn validate(&self) -> Result<()> {
        if self.pop_size == 0 {
            return Err(Error::Config("pop_size must be positive".into()));
        }
        if self.nfe_max < self.pop_size as u64 {
            return Err(Error::Config(format!(
                "nfe_max ({}) must cover the initial swarm ({})",
                self.nfe_max, self.pop_size
            )));
        }
        if !(self.v_max_fraction > 0.0) {
            return Err(Error::Config("v_max_fraction must be positive".into()));
        }
        let coeffs = [self.w_start, self.w_end, self.c1, self.c2];
        if coeffs.iter().any(|c| !c.is_finite()) {
            return Err(Error::Config("PSO coefficients must be finite".into()));
        }
        Ok(())
    }

    pub fn inertia(&self, nfe: u64) -> f64 {
        let t = nfe as f64 / self.nfe_max as f64;
        self.w_start + (self.w_end - self.w_start) * t
    }
}

struct Particle {
    position: Vec<f64>,
    velocity: Vec<f64>,
    best: Bid,
}

pub fn run_pso(objective: &Objective, cfg: &PsoConfig, rng: &mut RngStream) -> Result<RunResult> {
    cfg.validate()?;
    let dim = objective.dim();
    let v_max: Vec<f64> = objective
        .lower()
        .iter()
        .zip(objective.upper())
        .map(|(lo, hi)| cfg.v_max_fraction * (hi - lo))
        .collect();

    let mut budget = Budget::new(cfg.nfe_max);
    let mut history = Vec::new();
    let mut swarm = Vec::with_capacity(cfg.pop_size);
    let mut gbest: Option<Bid> = None;
    for _ in 0..cfg.pop_size {
        let position = objective.sample_uniform(rng);
        let velocity: Vec<f64> = v_max.iter().map(|v| rng.uniform_range(-v, *v)).collect();
        let bid = Bid::evaluated(objective, position.clone(), &mut budget)?;
        if gbest.as_ref().map_or(true, |g| bid.value < g.value) {
            history.push((budget.used(), bid.value));
            gbest = Some(bid.clone());
        }
        swarm.push(Particle { position, velocity, best: bid });
    }
    let mut gbest = gbest.expect("pop_size >= 1");

    'run: while !budget.is_exhausted() {
        for p in swarm.iter_mut() {
            if budget.is_exhausted() {
                break 'run;
            }
            let w = cfg.inertia(budget.used());
            for j in 0..dim {
                let r1 = rng.uniform();
                let r2 = rng.uniform();
                let v = w * p.velocity[j]
                    + cfg.c1 * r1 * (p.best.position[j] - p.position[j])
                    + cfg.c2 * r2 * (gbest.position[j] - p.position[j]);
                p.velocity[j] = v.clamp(-v_max[j], v_max[j]);
                p.position[j] += p.velocity[j];
            }
            objective.clamp_in_place(&mut p.position);
            let value = objective.evaluate_counted(&p.position, &mut budget)?;
            if value < p.best.value {
                p.best = Bid::new(p.position.clone(), value);
                if value < gbest.value {
                    gbest = p.best.clone();
                    history.push((budget.used(), value));
                }
            }
        }
    }

    Ok(RunResult {
        error: gbest.value - objective.optimum_value(),
        best_value: gbest.value,
        best_position: gbest.position,
        nfe_used: budget.used(),
        history,
    })
}
