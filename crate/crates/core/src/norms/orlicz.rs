//! Orlicz functions and the Luxemburg norm of `h_M`.

use std::fmt;
use std::sync::Arc;

use super::{luxemburg_bisect, NormEngine, NormFlags};
use crate::error::{Error, Result};
use crate::seqvec::SparseVec;

type OrliczMap = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Grid size used to verify monotonicity and convexity at construction.
pub const CONVEXITY_GRID: usize = 10_000;

/// A normalized convex Orlicz function `M` with `M(0) = 0`, `M(1) = 1`,
/// together with the growth constant `K > 1` for which `M(Kt)/M(t)` is
/// expected to blow up as `t -> 0`.
#[derive(Clone)]
pub struct OrliczFn {
    id: String,
    map: OrliczMap,
    k_growth: f64,
    t_max: f64,
    /// `Some(p)` when `M(t) = t^p`, which has a closed-form norm.
    power: Option<f64>,
}

impl fmt::Debug for OrliczFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("OrliczFn")
            .field("id", &self.id)
            .field("k_growth", &self.k_growth)
            .field("t_max", &self.t_max)
            .finish()
    }
}

impl OrliczFn {
    /// Validates `map` on `[0, 2]`: `M(0) = 0`, `M(1) = 1`, non-decreasing
    /// and convex on a grid of [`CONVEXITY_GRID`] points.
    pub fn new<F>(id: impl Into<String>, map: F, k_growth: f64) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let id = id.into();
        if !(k_growth > 1.0 && k_growth.is_finite()) {
            return Err(Error::InvalidOrlicz(format!("{id}: growth constant must exceed 1, got {k_growth}")));
        }
        if map(0.0).abs() > 1e-15 {
            return Err(Error::InvalidOrlicz(format!("{id}: M(0) = {} is not 0", map(0.0))));
        }
        if (map(1.0) - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidOrlicz(format!("{id}: M(1) = {} is not 1", map(1.0))));
        }
        let h = 2.0 / CONVEXITY_GRID as f64;
        let values: Vec<f64> = (0..=CONVEXITY_GRID).map(|i| map(i as f64 * h)).collect();
        if let Some(i) = values.iter().position(|v| !v.is_finite() || *v < 0.0) {
            return Err(Error::InvalidOrlicz(format!("{id}: M({}) is not a finite non-negative number", i as f64 * h)));
        }
        if let Some(w) = values.windows(2).position(|w| w[1] < w[0] - 1e-15) {
            return Err(Error::InvalidOrlicz(format!("{id}: decreasing near t = {}", w as f64 * h)));
        }
        if let Some(w) = values.windows(3).position(|w| w[0] - 2.0 * w[1] + w[2] < -1e-12) {
            return Err(Error::InvalidOrlicz(format!("{id}: not convex near t = {}", (w + 1) as f64 * h)));
        }
        // A convex M with M(0) = 0 and M(1) = 1 satisfies M(t) >= t for t >= 1,
        // so sup{t : M(t) <= 1} = 1.
        Ok(Self { id, map: Arc::new(map), k_growth, t_max: 1.0, power: None })
    }

    /// `M(t) = e^{2-1/t}/3` on `(0, 1/2]`, continued by its tangent line
    /// `(4t-1)/3`. This is `e^{1-1/t}` joined to its tangent at `1/2` and
    /// scaled so that `M(1) = 1`; `M(Kt)/M(t) = e^{(1-1/K)/t}` near zero.
    pub fn default_exp(k_growth: f64) -> Result<Self> {
        let id = if k_growth == 2.0 { "default".to_string() } else { format!("default:{k_growth}") };
        Self::new(id, default_map, k_growth)
    }

    /// `M(t) = t^p` for `p >= 1`, growth constant 2. `M(Kt)/M(t) = K^p` stays
    /// bounded, so these functions do not satisfy the growth condition.
    pub fn power(p: f64) -> Result<Self> {
        if !(p >= 1.0 && p.is_finite()) {
            return Err(Error::InvalidOrlicz(format!("power exponent must be >= 1, got {p}")));
        }
        let id = if p == 2.0 { "square".to_string() } else { format!("power:{p}") };
        let mut m = Self::new(id, move |t: f64| t.powf(p), 2.0)?;
        m.power = Some(p);
        Ok(m)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn eval(&self, t: f64) -> f64 {
        (self.map)(t)
    }

    pub fn k_growth(&self) -> f64 {
        self.k_growth
    }

    pub fn t_max(&self) -> f64 {
        self.t_max
    }
}

fn default_map(t: f64) -> f64 {
    if t <= 0.0 {
        0.0
    } else if t <= 0.5 {
        (2.0 - 1.0 / t).exp() / 3.0
    } else {
        (4.0 * t - 1.0) / 3.0
    }
}

/// `Σ_γ M(|x(γ)|/ρ)`.
pub fn modular_orlicz(m: &OrliczFn, x: &SparseVec, rho: f64) -> Result<f64> {
    if !(rho > 0.0) {
        return Err(Error::NonPositiveScale(rho));
    }
    Ok(modular_of(m, x.values(), rho))
}

fn modular_of(m: &OrliczFn, values: impl Iterator<Item = f64>, rho: f64) -> f64 {
    values.map(|v| m.eval(v.abs() / rho)).sum()
}

/// Luxemburg norm `inf{ρ > 0 : Σ M(|x(γ)|/ρ) <= 1}`, bisected on
/// `[‖x‖∞ / t_max, ‖x‖_1]`.
pub fn luxemburg_norm(m: &OrliczFn, x: &SparseVec) -> Result<f64> {
    if x.is_zero() {
        return Ok(0.0);
    }
    if let Some(p) = m.power {
        // ‖x‖ = (Σ|x|^p)^{1/p}, scaled by the largest modulus against overflow
        let s = x.sup_norm();
        let sum: f64 = x.values().map(|v| (v.abs() / s).powf(p)).sum();
        return Ok(s * if p == 2.0 { sum.sqrt() } else { sum.powf(1.0 / p) });
    }
    let lower = x.sup_norm() / m.t_max();
    let upper = x.l1_norm();
    let fits = |rho: f64| modular_of(m, x.values(), rho) <= 1.0;
    if !fits(upper) {
        return Err(Error::Bracket(format!(
            "modular of `{}` at the l1 norm is {} > 1",
            m.id(),
            modular_of(m, x.values(), upper)
        )));
    }
    Ok(luxemburg_bisect(lower, upper, fits))
}

/// The Luxemburg norm of `h_M` as an engine.
#[derive(Debug, Clone)]
pub struct OrliczNorm {
    m: OrliczFn,
}

impl OrliczNorm {
    pub fn new(m: OrliczFn) -> Self {
        Self { m }
    }

    pub fn function(&self) -> &OrliczFn {
        &self.m
    }
}

impl NormEngine for OrliczNorm {
    fn name(&self) -> String {
        format!("orlicz:{}", self.m.id())
    }

    fn eval(&self, x: &SparseVec) -> f64 {
        luxemburg_norm(&self.m, x).expect("validated Orlicz functions give a valid bracket")
    }

    fn flags(&self) -> NormFlags {
        NormFlags::ALL
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn square() -> OrliczFn {
        OrliczFn::power(2.0).unwrap()
    }

    #[test]
    fn modular_examples() {
        let x = SparseVec::from_pairs([(1, 3.0), (2, 4.0)]).unwrap();
        assert!((modular_orlicz(&square(), &x, 5.0).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(modular_orlicz(&square(), &SparseVec::zero(), 1.0).unwrap(), 0.0);
        let e = SparseVec::from_pairs([(1, 1.0)]).unwrap();
        assert_eq!(modular_orlicz(&square(), &e, 2.0).unwrap(), 0.25);
        assert_eq!(modular_orlicz(&square(), &e, 0.0), Err(Error::NonPositiveScale(0.0)));
    }

    #[test]
    fn luxemburg_examples() {
        let x = SparseVec::from_pairs([(1, 3.0), (2, 4.0)]).unwrap();
        assert!((luxemburg_norm(&square(), &x).unwrap() - 5.0).abs() < 5e-12);
        let d = OrliczFn::default_exp(2.0).unwrap();
        for m in [square(), d.clone()] {
            assert_eq!(luxemburg_norm(&m, &SparseVec::unit(7).unwrap()).unwrap(), 1.0);
        }
        assert_eq!(luxemburg_norm(&d, &SparseVec::zero()).unwrap(), 0.0);
    }

    #[test]
    fn default_function_shape() {
        let m = OrliczFn::default_exp(2.0).unwrap();
        assert_eq!(m.eval(0.0), 0.0);
        assert!((m.eval(1.0) - 1.0).abs() < 1e-15);
        assert!((m.eval(0.5) - 1.0 / 3.0).abs() < 1e-15);
        // ratio M(2t)/M(t) = e^{1/(2t)} while 2t <= 1/2
        let t = 0.05;
        assert!((m.eval(2.0 * t) / m.eval(t) - (0.5 / t).exp()).abs() < 1e-9 * (0.5 / t).exp());
    }

    #[test]
    fn rejects_invalid_functions() {
        assert!(OrliczFn::new("sqrt", f64::sqrt, 2.0).is_err());
        assert!(OrliczFn::new("shifted", |t| t + 1.0, 2.0).is_err());
        assert!(OrliczFn::new("unnormalized", |t| 2.0 * t * t, 2.0).is_err());
        assert!(OrliczFn::new("flat-growth", |t| t * t, 1.0).is_err());
        assert!(OrliczFn::power(0.5).is_err());
    }

    #[test]
    fn power_closed_form_agrees_with_bisection() {
        let x = SparseVec::from_pairs([(1, 0.3), (2, -1.7), (7, 0.05)]).unwrap();
        for p in [1.0, 2.0, 3.0, 4.5] {
            let generic = OrliczFn::new("t^p", move |t: f64| t.powf(p), 2.0).unwrap();
            let a = luxemburg_norm(&OrliczFn::power(p).unwrap(), &x).unwrap();
            let b = luxemburg_norm(&generic, &x).unwrap();
            assert!((a - b).abs() < 1e-11 * a, "p = {p}: {a} vs {b}");
        }
        let ones = SparseVec::ones(3);
        assert_eq!(luxemburg_norm(&square(), &ones).unwrap(), 3f64.sqrt());
    }
}
