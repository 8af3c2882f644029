//! Mantegna Levy-flight steps for the mental search operator.
//!
//! A step component is `0.01 * u / |v|^(1/beta)` with `u ~ N(0, sigma_u^2)`
//! and `v ~ N(0, 1)`, where `sigma_u` depends on `beta` through the gamma
//! function. Mental search scales the step by a factor that decays linearly
//! from 2 to 0 over the evaluation budget and multiplies it element-wise by
//! the displacement from the best bid.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::rng::RngStream;

const LANCZOS_G: f64 = 7.0;
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Multiplier applied to every Levy draw.
pub const LEVY_STEP: f64 = 0.01;

/// Gamma function for `z > 0` (Lanczos, g = 7, with reflection below 1/2).
pub fn gamma_fn(z: f64) -> Result<f64> {
    if !(z > 0.0) || !z.is_finite() {
        return Err(Error::Domain {
            what: "z",
            value: z,
            domain: "(0, inf)",
        });
    }
    Ok(lanczos(z))
}

fn lanczos(z: f64) -> f64 {
    if z.fract() == 0.0 && (1.0..=171.0).contains(&z) {
        // Exact factorial for integer arguments.
        return (1..z as u32).map(f64::from).product();
    }
    if z < 0.5 {
        return PI / ((PI * z).sin() * lanczos(1.0 - z));
    }
    let z = z - 1.0;
    let mut series = LANCZOS_COEFFS[0];
    for (i, c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        series += c / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    (2.0 * PI).sqrt() * t.powf(z + 0.5) * (-t).exp() * series
}

fn check_beta(beta: f64) -> Result<()> {
    if beta > 0.0 && beta < 2.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            what: "beta",
            value: beta,
            domain: "(0, 2)",
        })
    }
}

/// Standard deviation of the numerator draw `u` for stability exponent `beta`.
pub fn sigma_u(beta: f64) -> Result<f64> {
    check_beta(beta)?;
    let num = lanczos(1.0 + beta) * (PI * beta / 2.0).sin();
    let den = lanczos((1.0 + beta) / 2.0) * beta * 2f64.powf((beta - 1.0) / 2.0);
    Ok((num / den).powf(1.0 / beta))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LevyParams {
    pub beta: f64,
    pub sigma_u: f64,
    pub sigma_v: f64,
}

impl LevyParams {
    pub fn new(beta: f64) -> Result<Self> {
        Ok(Self {
            beta,
            sigma_u: sigma_u(beta)?,
            sigma_v: 1.0,
        })
    }

    /// One scaled Levy component `0.01 * u / |v|^(1/beta)`; draws `u` then `v`.
    pub fn sample(&self, rng: &mut RngStream) -> f64 {
        let u = self.sigma_u * rng.normal();
        let mut v = rng.normal();
        while v.abs() < 1e-300 {
            v = rng.normal();
        }
        LEVY_STEP * u / v.abs().powf(1.0 / self.beta)
    }
}

pub fn levy_vector(rng: &mut RngStream, beta: f64, dim: usize) -> Result<Vec<f64>> {
    if dim == 0 {
        return Err(Error::Config("levy_vector needs dim >= 1".into()));
    }
    let params = LevyParams::new(beta)?;
    Ok((0..dim).map(|_| params.sample(rng)).collect())
}

/// Budget-dependent step multiplier: 2 at the start of a run, 0 at the end.
pub fn step_scale(nfe: u64, nfe_max: u64) -> f64 {
    2.0 - nfe as f64 * (2.0 / nfe_max as f64)
}

/// Mental search displacement for bid `x` given the best bid `x_best`.
///
/// Draws `beta` once from `beta_range`, then `(u, v)` per coordinate.
pub fn mental_step(
    x: &[f64],
    x_best: &[f64],
    nfe: u64,
    nfe_max: u64,
    rng: &mut RngStream,
    beta_range: (f64, f64),
) -> Result<Vec<f64>> {
    if x.len() != x_best.len() {
        return Err(Error::DimensionMismatch {
            expected: x.len(),
            actual: x_best.len(),
        });
    }
    if nfe > nfe_max {
        return Err(Error::Domain {
            what: "nfe",
            value: nfe as f64,
            domain: "[0, nfe_max]",
        });
    }
    let (low, high) = beta_range;
    check_beta(low)?;
    check_beta(high)?;
    let beta = rng.uniform_range(low, high);
    let scale = step_scale(nfe, nfe_max);
    let levy = levy_vector(rng, beta, x.len())?;
    Ok(levy
        .iter()
        .zip(x.iter().zip(x_best))
        .map(|(l, (xi, bi))| scale * l * (xi - bi))
        .collect())
}
