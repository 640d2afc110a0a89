use serde::Serialize;

use crate::error::{Error, Result};
use crate::norms::OrliczFn;

/// Number of grid points of a tabulated modulus.
pub const MODULUS_GRID: usize = 10_000;
const GRID_LO: f64 = 1e-12;
const GRID_HI: f64 = 1e6;

/// A modulus `ω`: non-decreasing, continuous, `ω(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub enum Modulus {
    /// `ω(t) = t`.
    Identity,
    /// Piecewise-linear through `(0, 0)` and the stored knots, constant after
    /// the last knot.
    Table(ModulusTable),
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ModulusTable {
    id: String,
    knots: Vec<f64>,
    values: Vec<f64>,
}

impl Modulus {
    /// Validates a knot table: knots positive and strictly increasing,
    /// values finite, non-negative and non-decreasing.
    pub fn table(id: impl Into<String>, knots: Vec<f64>, values: Vec<f64>) -> Result<Self> {
        let id = id.into();
        if knots.len() != values.len() {
            return Err(Error::LengthMismatch { left: knots.len(), right: values.len() });
        }
        if knots.is_empty() || !(knots[0] > 0.0) || knots.windows(2).any(|w| !(w[1] > w[0])) {
            return Err(Error::Precondition(format!("modulus `{id}`: knots must be positive and increasing")));
        }
        if values.iter().any(|v| !(v.is_finite() && *v >= 0.0)) || values.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::Precondition(format!("modulus `{id}`: values must be non-negative and non-decreasing")));
        }
        Ok(Modulus::Table(ModulusTable { id, knots, values }))
    }

    pub fn id(&self) -> &str {
        match self {
            Modulus::Identity => "identity",
            Modulus::Table(t) => &t.id,
        }
    }

    pub fn eval(&self, t: f64) -> f64 {
        if !(t > 0.0) {
            return 0.0;
        }
        match self {
            Modulus::Identity => t,
            Modulus::Table(tab) => tab.eval(t),
        }
    }
}

impl ModulusTable {
    fn eval(&self, t: f64) -> f64 {
        let k = &self.knots;
        let v = &self.values;
        let i = k.partition_point(|&s| s < t);
        if i == 0 {
            return v[0] * (t / k[0]);
        }
        if i == k.len() {
            return v[v.len() - 1];
        }
        let w = (t - k[i - 1]) / (k[i] - k[i - 1]);
        v[i - 1] + w * (v[i] - v[i - 1])
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// `ω(t) = sup{M(τ)/M(Kτ) : 0 < τ <= t}` tabulated on a log grid over
/// `[1e-12, 1e6]`.
///
/// Each knot carries the running maximum of the sampled ratios up to the
/// *next* knot, so the interpolant dominates the sampled supremum on every
/// cell, not only at the knots.
pub fn orlicz_modulus(m: &OrliczFn) -> Modulus {
    let k = m.k_growth();
    let step = (GRID_HI / GRID_LO).ln() / (MODULUS_GRID - 1) as f64;
    let knots: Vec<f64> = (0..MODULUS_GRID).map(|i| GRID_LO * (step * i as f64).exp()).collect();
    let ratios: Vec<f64> = knots
        .iter()
        .map(|&tau| {
            let den = m.eval(k * tau);
            // M(Kτ) = 0 forces M(τ) = 0
            if den > 0.0 {
                (m.eval(tau) / den).min(1.0)
            } else {
                0.0
            }
        })
        .collect();
    let mut values = Vec::with_capacity(MODULUS_GRID);
    let mut run = 0.0f64;
    for i in 0..MODULUS_GRID {
        run = run.max(ratios[i]);
        let ahead = ratios.get(i + 1).copied().unwrap_or(0.0);
        values.push(run.max(ahead));
    }
    Modulus::Table(ModulusTable { id: format!("orlicz:{}", m.id()), knots, values })
}
