//! Objectives, candidate solutions and evaluation accounting.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rng::RngStream;

type EvalFn = dyn Fn(&[f64]) -> f64 + Send + Sync;

/// A box-bounded objective to be minimized, with its known optimum value.
#[derive(Clone)]
pub struct Objective {
    name: String,
    lower: Vec<f64>,
    upper: Vec<f64>,
    optimum_value: f64,
    optimum_location: Option<Vec<f64>>,
    eval: Arc<EvalFn>,
}

impl Objective {
    pub fn new<F>(
        name: impl Into<String>,
        lower: Vec<f64>,
        upper: Vec<f64>,
        optimum_value: f64,
        eval: F,
    ) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        if lower.is_empty() {
            return Err(Error::Config("objective dimension must be at least 1".into()));
        }
        if lower.len() != upper.len() {
            return Err(Error::DimensionMismatch {
                expected: lower.len(),
                actual: upper.len(),
            });
        }
        if let Some(j) = (0..lower.len()).find(|&j| !(lower[j] < upper[j])) {
            return Err(Error::Config(format!(
                "bounds must satisfy lower < upper, violated at coordinate {j}"
            )));
        }
        Ok(Self {
            name: name.into(),
            lower,
            upper,
            optimum_value,
            optimum_location: None,
            eval: Arc::new(eval),
        })
    }

    /// Same box `[lower, upper]` in every coordinate.
    pub fn uniform_box<F>(
        name: impl Into<String>,
        dim: usize,
        lower: f64,
        upper: f64,
        optimum_value: f64,
        eval: F,
    ) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + Send + Sync + 'static,
    {
        Self::new(name, vec![lower; dim], vec![upper; dim], optimum_value, eval)
    }

    pub fn with_optimum_location(mut self, location: Vec<f64>) -> Result<Self> {
        self.check_dim(&location)?;
        self.optimum_location = Some(location);
        Ok(self)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn optimum_value(&self) -> f64 {
        self.optimum_value
    }

    pub fn optimum_location(&self) -> Option<&[f64]> {
        self.optimum_location.as_deref()
    }

    /// Uncounted evaluation. Algorithms go through [`Objective::evaluate_counted`].
    pub fn eval(&self, position: &[f64]) -> f64 {
        (self.eval)(position)
    }

    /// Evaluates `position` and charges one evaluation to `budget`.
    pub fn evaluate_counted(&self, position: &[f64], budget: &mut Budget) -> Result<f64> {
        self.check_dim(position)?;
        budget.charge()?;
        Ok(self.eval(position))
    }

    pub fn contains(&self, position: &[f64]) -> bool {
        position.len() == self.dim()
            && position
                .iter()
                .zip(self.lower.iter().zip(&self.upper))
                .all(|(x, (lo, hi))| (*lo..=*hi).contains(x))
    }

    pub fn clamp_in_place(&self, position: &mut [f64]) {
        debug_assert_eq!(position.len(), self.dim());
        for ((x, lo), hi) in position.iter_mut().zip(&self.lower).zip(&self.upper) {
            *x = x.clamp(*lo, *hi);
        }
    }

    /// Uniform point in the box, one draw per coordinate.
    pub fn sample_uniform(&self, rng: &mut RngStream) -> Vec<f64> {
        self.lower
            .iter()
            .zip(&self.upper)
            .map(|(lo, hi)| rng.uniform_range(*lo, *hi))
            .collect()
    }

    pub(crate) fn check_dim(&self, position: &[f64]) -> Result<()> {
        if position.len() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: position.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Debug for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Objective")
            .field("name", &self.name)
            .field("dim", &self.dim())
            .field("optimum_value", &self.optimum_value)
            .finish_non_exhaustive()
    }
}

/// Projects `position` onto the objective's box.
pub fn clamp(position: &[f64], objective: &Objective) -> Result<Vec<f64>> {
    objective.check_dim(position)?;
    let mut out = position.to_vec();
    objective.clamp_in_place(&mut out);
    Ok(out)
}

/// Counts objective evaluations against a hard limit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    used: u64,
    max: u64,
}

impl Budget {
    pub fn new(max: u64) -> Self {
        Self { used: 0, max }
    }

    pub fn with_used(used: u64, max: u64) -> Self {
        Self { used, max }
    }

    pub fn used(&self) -> u64 {
        self.used
    }

    pub fn max(&self) -> u64 {
        self.max
    }

    pub fn remaining(&self) -> u64 {
        self.max.saturating_sub(self.used)
    }

    pub fn is_exhausted(&self) -> bool {
        self.used >= self.max
    }

    fn charge(&mut self) -> Result<()> {
        if self.is_exhausted() {
            return Err(Error::BudgetExhausted(self.max));
        }
        self.used += 1;
        Ok(())
    }
}

/// A candidate solution and its cached objective value.
#[derive(Debug, Clone, PartialEq)]
pub struct Bid {
    pub position: Vec<f64>,
    pub value: f64,
}

impl Bid {
    pub fn new(position: Vec<f64>, value: f64) -> Self {
        Self { position, value }
    }

    /// Clamps `position` into the box and evaluates it against `budget`.
    pub fn evaluated(
        objective: &Objective,
        mut position: Vec<f64>,
        budget: &mut Budget,
    ) -> Result<Self> {
        objective.check_dim(&position)?;
        objective.clamp_in_place(&mut position);
        let value = objective.evaluate_counted(&position, budget)?;
        Ok(Self { position, value })
    }
}

impl AsRef<[f64]> for Bid {
    fn as_ref(&self) -> &[f64] {
        &self.position
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sphere(dim: usize, lo: f64, hi: f64) -> Objective {
        Objective::uniform_box("sphere", dim, lo, hi, 0.0, |x| x.iter().map(|v| v * v).sum())
            .unwrap()
    }

    #[test]
    fn clamp_examples() {
        let unit = sphere(1, 0.0, 1.0);
        assert_eq!(clamp(&[0.5], &unit).unwrap(), vec![0.5]);
        assert_eq!(clamp(&[1.0], &unit).unwrap(), vec![1.0]);
        let square = sphere(2, 0.0, 1.0);
        assert_eq!(clamp(&[-3.0, 7.0], &square).unwrap(), vec![0.0, 1.0]);
    }

    #[test]
    fn clamp_rejects_wrong_dimension() {
        let square = sphere(2, 0.0, 1.0);
        assert_eq!(
            clamp(&[0.1], &square),
            Err(Error::DimensionMismatch { expected: 2, actual: 1 })
        );
    }

    #[test]
    fn counted_evaluation() {
        let obj = sphere(2, -5.0, 5.0);
        let mut budget = Budget::new(10);
        assert_eq!(obj.evaluate_counted(&[0.0, 0.0], &mut budget).unwrap(), 0.0);
        assert_eq!(budget.used(), 1);

        let obj3 = sphere(3, -5.0, 5.0);
        let mut budget = Budget::with_used(5, 10);
        assert_eq!(obj3.evaluate_counted(&[1.0, 2.0, 3.0], &mut budget).unwrap(), 14.0);
        assert_eq!(budget.used(), 6);
    }

    #[test]
    fn exhausted_budget_is_signalled() {
        let obj = sphere(1, -1.0, 1.0);
        let mut budget = Budget::with_used(3, 3);
        assert_eq!(
            obj.evaluate_counted(&[0.0], &mut budget),
            Err(Error::BudgetExhausted(3))
        );
        assert_eq!(budget.used(), 3);
    }

    #[test]
    fn invalid_bounds_rejected() {
        let err = Objective::new("bad", vec![0.0, 1.0], vec![1.0, 1.0], 0.0, |_| 0.0);
        assert!(matches!(err, Err(Error::Config(_))));
        assert!(Objective::new("empty", vec![], vec![], 0.0, |_| 0.0).is_err());
    }

    #[test]
    fn uniform_samples_stay_in_box() {
        let obj = sphere(4, -2.0, 3.0);
        let mut rng = RngStream::from_seed(1);
        for _ in 0..1000 {
            assert!(obj.contains(&obj.sample_uniform(&mut rng)));
        }
    }
}
