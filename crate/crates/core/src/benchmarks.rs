//! Benchmark objectives: ten classical base functions and a seeded
//! shift/rotation/bias wrapper.
//!
//! The `classic10` suite wraps every base function with a shift drawn from
//! the central 80% of its box, rotates the five multimodal members, and adds
//! a bias of `100 * (index + 1)`. Every member's optimum lies at its shift
//! and its optimum value equals its bias.

use std::f64::consts::PI;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::objective::Objective;
use crate::rng::{derive_stream, RngStream};

/// Argmax of `x sin(sqrt(x))` on `[0, 500]`.
const SCHWEFEL_ARGMAX: f64 = 420.968_746_359_982_03;

pub const SUITE_DIMS: [usize; 5] = [2, 10, 30, 50, 100];

/// Stream id reserved for suite construction, disjoint from algorithm ids.
const SUITE_STREAM: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BaseFunction {
    Sphere,
    BentCigar,
    SumDiffPowers,
    Zakharov,
    Rosenbrock,
    Rastrigin,
    Ackley,
    Griewank,
    Schwefel226,
    LevyFn,
}

impl BaseFunction {
    /// Suite order: unimodal-style functions first, then multimodal ones.
    pub const ALL: [BaseFunction; 10] = [
        BaseFunction::Sphere,
        BaseFunction::BentCigar,
        BaseFunction::SumDiffPowers,
        BaseFunction::Zakharov,
        BaseFunction::Rosenbrock,
        BaseFunction::Rastrigin,
        BaseFunction::Ackley,
        BaseFunction::Griewank,
        BaseFunction::Schwefel226,
        BaseFunction::LevyFn,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BaseFunction::Sphere => "sphere",
            BaseFunction::BentCigar => "bent_cigar",
            BaseFunction::SumDiffPowers => "sum_diff_powers",
            BaseFunction::Zakharov => "zakharov",
            BaseFunction::Rosenbrock => "rosenbrock",
            BaseFunction::Rastrigin => "rastrigin",
            BaseFunction::Ackley => "ackley",
            BaseFunction::Griewank => "griewank",
            BaseFunction::Schwefel226 => "schwefel_2_26",
            BaseFunction::LevyFn => "levy_fn",
        }
    }

    pub fn is_multimodal(self) -> bool {
        matches!(
            self,
            BaseFunction::Rastrigin
                | BaseFunction::Ackley
                | BaseFunction::Griewank
                | BaseFunction::Schwefel226
                | BaseFunction::LevyFn
        )
    }

    /// Canonical search box, identical in every coordinate.
    pub fn bounds(self) -> (f64, f64) {
        match self {
            BaseFunction::Rosenbrock => (-30.0, 30.0),
            BaseFunction::Schwefel226 => (-500.0, 500.0),
            BaseFunction::LevyFn => (-10.0, 10.0),
            _ => (-100.0, 100.0),
        }
    }

    /// Coordinate value of the global minimizer (the same in every coordinate).
    pub fn optimum_coordinate(self) -> f64 {
        match self {
            BaseFunction::Rosenbrock | BaseFunction::LevyFn => 1.0,
            BaseFunction::Schwefel226 => SCHWEFEL_ARGMAX,
            _ => 0.0,
        }
    }

    pub fn eval(self, x: &[f64]) -> f64 {
        match self {
            BaseFunction::Sphere => x.iter().map(|v| v * v).sum(),
            BaseFunction::BentCigar => x[0] * x[0] + 1e6 * x[1..].iter().map(|v| v * v).sum::<f64>(),
            BaseFunction::SumDiffPowers => x
                .iter()
                .enumerate()
                .map(|(i, v)| v.abs().powi(i as i32 + 2))
                .sum(),
            BaseFunction::Zakharov => {
                let s1: f64 = x.iter().map(|v| v * v).sum();
                let s2: f64 = x.iter().enumerate().map(|(i, v)| 0.5 * (i + 1) as f64 * v).sum();
                s1 + s2.powi(2) + s2.powi(4)
            }
            BaseFunction::Rosenbrock => x
                .windows(2)
                .map(|w| 100.0 * (w[1] - w[0] * w[0]).powi(2) + (w[0] - 1.0).powi(2))
                .sum(),
            BaseFunction::Rastrigin => x
                .iter()
                .map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0)
                .sum(),
            BaseFunction::Ackley => {
                let n = x.len() as f64;
                let sq = (x.iter().map(|v| v * v).sum::<f64>() / n).sqrt();
                let cs = x.iter().map(|v| (2.0 * PI * v).cos()).sum::<f64>() / n;
                let e = 1f64.exp();
                // Grouped so each bracket is >= 0 and both vanish at the origin.
                (20.0 - 20.0 * (-0.2 * sq).exp()) + (e - cs.exp())
            }
            BaseFunction::Griewank => {
                let sum: f64 = x.iter().map(|v| v * v).sum::<f64>() / 4000.0;
                let prod: f64 = x
                    .iter()
                    .enumerate()
                    .map(|(i, v)| (v / ((i + 1) as f64).sqrt()).cos())
                    .product();
                1.0 + sum - prod
            }
            BaseFunction::Schwefel226 => schwefel_2_26(x),
            BaseFunction::LevyFn => {
                let w: Vec<f64> = x.iter().map(|v| 1.0 + (v - 1.0) / 4.0).collect();
                let last = w[w.len() - 1];
                let head = (PI * w[0]).sin().powi(2);
                let body: f64 = w[..w.len() - 1]
                    .iter()
                    .map(|wi| (wi - 1.0).powi(2) * (1.0 + 10.0 * (PI * wi + 1.0).sin().powi(2)))
                    .sum();
                let tail = (last - 1.0).powi(2) * (1.0 + (2.0 * PI * last).sin().powi(2));
                head + body + tail
            }
        }
    }
}

/// Schwefel 2.26 shifted to a zero minimum. Coordinates outside
/// `[-500, 500]` are folded back and penalised quadratically, which keeps
/// the function non-negative everywhere.
fn schwefel_2_26(x: &[f64]) -> f64 {
    let d = x.len() as f64;
    let peak = SCHWEFEL_ARGMAX * SCHWEFEL_ARGMAX.sqrt().sin();
    let g = |z: f64| -> f64 {
        if z > 500.0 {
            let m = 500.0 - z % 500.0;
            m * m.abs().sqrt().sin() - (z - 500.0).powi(2) / (10_000.0 * d)
        } else if z < -500.0 {
            let m = z.abs() % 500.0 - 500.0;
            m * m.abs().sqrt().sin() - (z + 500.0).powi(2) / (10_000.0 * d)
        } else {
            z * z.abs().sqrt().sin()
        }
    };
    x.iter().map(|&z| peak - g(z)).sum()
}

impl FromStr for BaseFunction {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BaseFunction::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| Error::UnknownFunction(s.to_string()))
    }
}

/// Evaluates the named base function.
pub fn base_function(name: &str, x: &[f64]) -> Result<f64> {
    let f: BaseFunction = name.parse()?;
    if x.is_empty() {
        return Err(Error::Config("benchmark functions need dimension >= 1".into()));
    }
    Ok(f.eval(x))
}

/// Orthogonal matrix from modified Gram-Schmidt on a standard normal matrix,
/// drawn row by row. Rows are returned as the matrix rows.
pub fn random_rotation(dim: usize, rng: &mut RngStream) -> Result<Vec<Vec<f64>>> {
    if dim == 0 {
        return Err(Error::Config("rotation dimension must be at least 1".into()));
    }
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(dim);
    while rows.len() < dim {
        let mut v: Vec<f64> = (0..dim).map(|_| rng.normal()).collect();
        for q in &rows {
            let dot: f64 = v.iter().zip(q).map(|(a, b)| a * b).sum();
            v.iter_mut().zip(q).for_each(|(a, b)| *a -= dot * b);
        }
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        if norm < 1e-8 {
            continue;
        }
        v.iter_mut().for_each(|a| *a /= norm);
        // Second pass restores orthogonality lost to cancellation.
        for q in &rows {
            let dot: f64 = v.iter().zip(q).map(|(a, b)| a * b).sum();
            v.iter_mut().zip(q).for_each(|(a, b)| *a -= dot * b);
        }
        let norm = v.iter().map(|a| a * a).sum::<f64>().sqrt();
        v.iter_mut().for_each(|a| *a /= norm);
        rows.push(v);
    }
    Ok(rows)
}

/// `f(x) = base(R (x - shift) + x_base_opt) + bias`.
#[derive(Debug, Clone, PartialEq)]
pub struct TransformedObjective {
    pub base: BaseFunction,
    pub shift: Vec<f64>,
    /// `None` stands for the identity.
    pub rotation: Option<Vec<Vec<f64>>>,
    pub bias: f64,
}

impl TransformedObjective {
    pub fn dim(&self) -> usize {
        self.shift.len()
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let offset = self.base.optimum_coordinate();
        let d: Vec<f64> = x.iter().zip(&self.shift).map(|(a, o)| a - o).collect();
        let z: Vec<f64> = match &self.rotation {
            Some(r) => r
                .iter()
                .map(|row| row.iter().zip(&d).map(|(a, b)| a * b).sum::<f64>() + offset)
                .collect(),
            None => d.into_iter().map(|v| v + offset).collect(),
        };
        self.base.eval(&z) + self.bias
    }

    pub fn into_objective(self, name: impl Into<String>) -> Result<Objective> {
        let (lo, hi) = self.base.bounds();
        let dim = self.dim();
        let bias = self.bias;
        let location = self.shift.clone();
        Objective::uniform_box(name, dim, lo, hi, bias, move |x| self.eval(x))?
            .with_optimum_location(location)
    }
}

/// Builds a named suite. Only `classic10` exists.
pub fn make_suite(name: &str, dim: usize, seed: u64) -> Result<Vec<Objective>> {
    if name != "classic10" {
        return Err(Error::UnknownSuite(name.to_string()));
    }
    if !SUITE_DIMS.contains(&dim) {
        return Err(Error::UnsupportedDimension(dim));
    }
    BaseFunction::ALL
        .iter()
        .enumerate()
        .map(|(index, &base)| {
            let mut rng = derive_stream(seed, SUITE_STREAM, dim as u64, index as u64);
            let (lo, hi) = base.bounds();
            let width = hi - lo;
            let shift = (0..dim)
                .map(|_| lo + width * (0.1 + 0.8 * rng.uniform()))
                .collect();
            let rotation = if base.is_multimodal() {
                Some(random_rotation(dim, &mut rng)?)
            } else {
                None
            };
            TransformedObjective {
                base,
                shift,
                rotation,
                bias: 100.0 * (index + 1) as f64,
            }
            .into_objective(base.name())
        })
        .collect()
}
