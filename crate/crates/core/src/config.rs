use crate::error::{Error, Result};

/// Parameters shared by HMS and MCS-HMS. Defaults follow the usual HMS
/// settings: 5 clusters, 2 to 5 mental processes per bid, `C = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub pop_size: usize,
    pub nfe_max: u64,
    pub k_clusters: usize,
    /// Minimum number of mental processes (candidates) per bid.
    pub q_min: usize,
    pub q_max: usize,
    /// Movement constant.
    pub c: f64,
    pub seed: u64,
    /// The Levy exponent is drawn uniformly from `[beta_low, beta_high]`.
    pub beta_low: f64,
    pub beta_high: f64,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            pop_size: 50,
            nfe_max: 10_000,
            k_clusters: 5,
            q_min: 2,
            q_max: 5,
            c: 1.0,
            seed: 0,
            beta_low: 0.3,
            beta_high: 1.99,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        let fail = |msg: String| Err(Error::Config(msg));
        if self.pop_size == 0 {
            return fail("pop_size must be positive".into());
        }
        if self.nfe_max < self.pop_size as u64 {
            return fail(format!(
                "nfe_max ({}) must cover the initial population ({})",
                self.nfe_max, self.pop_size
            ));
        }
        if self.k_clusters == 0 || self.k_clusters > self.pop_size {
            return fail(format!(
                "k_clusters must be in 1..={}, got {}",
                self.pop_size, self.k_clusters
            ));
        }
        if self.q_min < 2 || self.q_min > self.q_max {
            return fail(format!(
                "mental process range must satisfy 2 <= q_min <= q_max, got {}..={}",
                self.q_min, self.q_max
            ));
        }
        if !self.c.is_finite() {
            return fail("C must be finite".into());
        }
        if !(self.beta_low > 0.0 && self.beta_low <= self.beta_high && self.beta_high < 2.0) {
            return fail(format!(
                "beta range must satisfy 0 < low <= high < 2, got [{}, {}]",
                self.beta_low, self.beta_high
            ));
        }
        Ok(())
    }

    pub fn beta_range(&self) -> (f64, f64) {
        (self.beta_low, self.beta_high)
    }
}

/// Outcome of one optimization run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunResult {
    pub best_value: f64,
    pub best_position: Vec<f64>,
    /// `best_value - optimum_value`.
    pub error: f64,
    pub nfe_used: u64,
    /// `(nfe, best_value)` at every improvement of the best-so-far.
    pub history: Vec<(u64, f64)>,
}
