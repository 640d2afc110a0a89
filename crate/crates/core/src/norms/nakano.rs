//! The symmetric Nakano space `h^S_{(p_n)}`.
//!
//! The modular is a supremum over injections of the support into exponent
//! slots, `φ(x) = sup Σ_k |x(γ_k)|^{p_k}`. That supremum is an assignment
//! problem: sorted pairing (largest value to the smallest exponent) is not
//! optimal in general, e.g. `(0.9, 0.5, 0.3)` against `p = (1, 2, 3)` is
//! maximized by `0.5 -> 1, 0.9 -> 2, 0.3 -> 3`.

use super::{luxemburg_bisect, max_weight_assignment, NormEngine, NormFlags};
use crate::error::{Error, Result};
use crate::seqvec::SparseVec;

/// How the exponent sequence continues past its explicit head.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExponentTail {
    /// The last head value repeats forever.
    Constant,
    /// `p(n) = p(len) + step * (n - len)` with `step > 0`.
    Arithmetic(f64),
}

/// A non-decreasing exponent sequence `p(1) <= p(2) <= ..` with `p(1) >= 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct NakanoExponents {
    id: String,
    head: Vec<f64>,
    tail: ExponentTail,
}

impl NakanoExponents {
    pub fn new(id: impl Into<String>, head: Vec<f64>, tail: ExponentTail) -> Result<Self> {
        let id = id.into();
        if head.is_empty() {
            return Err(Error::InvalidExponents(format!("{id}: empty exponent list")));
        }
        if head.iter().any(|p| !p.is_finite()) {
            return Err(Error::InvalidExponents(format!("{id}: exponents must be finite")));
        }
        if head[0] < 1.0 {
            return Err(Error::InvalidExponents(format!("{id}: p(1) = {} < 1", head[0])));
        }
        if let Some(k) = head.windows(2).position(|w| w[1] < w[0]) {
            return Err(Error::InvalidExponents(format!("{id}: p({}) > p({})", k + 1, k + 2)));
        }
        if let ExponentTail::Arithmetic(step) = tail {
            if !(step > 0.0 && step.is_finite()) {
                return Err(Error::InvalidExponents(format!("{id}: tail step must be positive, got {step}")));
            }
        }
        Ok(Self { id, head, tail })
    }

    /// `p(n) = n`.
    pub fn linear() -> Self {
        Self::new("linear", vec![1.0], ExponentTail::Arithmetic(1.0)).expect("valid")
    }

    /// `p(n) = p` for all `n`; the space is `ℓ_p`.
    pub fn constant(p: f64) -> Result<Self> {
        Self::new(format!("const:{p}"), vec![p], ExponentTail::Constant)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    /// `p(n)` for `n >= 1`.
    pub fn p(&self, n: usize) -> f64 {
        assert!(n >= 1, "exponents are indexed from 1");
        let len = self.head.len();
        if n <= len {
            return self.head[n - 1];
        }
        let last = self.head[len - 1];
        match self.tail {
            ExponentTail::Constant => last,
            ExponentTail::Arithmetic(step) => last + step * (n - len) as f64,
        }
    }

    pub fn tends_to_infinity(&self) -> bool {
        matches!(self.tail, ExponentTail::Arithmetic(_))
    }

    /// For bounded sequences, an index from which `p` is constant.
    pub fn constant_from(&self) -> Option<usize> {
        match self.tail {
            ExponentTail::Constant => Some(self.head.len()),
            ExponentTail::Arithmetic(_) => None,
        }
    }
}

/// `φ(x) = sup over injections of Σ_k |x(γ_k)|^{p_k}`; `+∞` when some
/// coordinate exceeds 1 and the exponents are unbounded.
pub fn nakano_modular(p: &NakanoExponents, x: &SparseVec) -> f64 {
    let values: Vec<f64> = x.values().map(f64::abs).collect();
    modular_of_values(p, &values)
}

/// Moduli version of [`nakano_modular`]; entries must be non-negative.
pub(crate) fn modular_of_values(p: &NakanoExponents, values: &[f64]) -> f64 {
    let s = values.len();
    if s == 0 {
        return 0.0;
    }
    let sup = values.iter().fold(0.0f64, |m, &v| m.max(v));
    let slots = if sup <= 1.0 {
        // For moduli at most 1 an unused lower slot never hurts, so the
        // optimum lives on slots 1..=s.
        if values.iter().all(|&v| v == values[0]) {
            return (1..=s).map(|k| values[0].powf(p.p(k))).sum();
        }
        s
    } else {
        match p.constant_from() {
            None => return f64::INFINITY,
            // Slots past the constant point are interchangeable; `s` of
            // them cover every injection.
            Some(h) => h + s,
        }
    };
    let exps: Vec<f64> = (1..=slots).map(|k| p.p(k)).collect();
    let mut weights = Vec::with_capacity(s * slots);
    for &v in values {
        for &e in &exps {
            weights.push(v.powf(e));
        }
    }
    if weights.iter().any(|w| !w.is_finite()) {
        return f64::INFINITY;
    }
    let cols = max_weight_assignment(&weights, s, slots);
    cols.iter().enumerate().map(|(r, &c)| weights[r * slots + c]).sum()
}

/// `inf{ρ > 0 : φ(x/ρ) <= 1}`, bisected on `[‖x‖∞, ‖x‖_1]`.
pub fn nakano_norm(p: &NakanoExponents, x: &SparseVec) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let values: Vec<f64> = x.values().map(f64::abs).collect();
    let lower = x.sup_norm();
    let upper = x.l1_norm();
    let mut scaled = vec![0.0; values.len()];
    luxemburg_bisect(lower, upper, |rho| {
        for (s, &v) in scaled.iter_mut().zip(&values) {
            *s = (v / rho).min(1.0);
        }
        modular_of_values(p, &scaled) <= 1.0
    })
}

#[derive(Debug, Clone)]
pub struct NakanoNorm {
    p: NakanoExponents,
}

impl NakanoNorm {
    pub fn new(p: NakanoExponents) -> Self {
        Self { p }
    }

    pub fn exponents(&self) -> &NakanoExponents {
        &self.p
    }
}

impl NormEngine for NakanoNorm {
    fn name(&self) -> String {
        format!("nakano:{}", self.p.id())
    }

    fn eval(&self, x: &SparseVec) -> f64 {
        nakano_norm(&self.p, x)
    }

    fn flags(&self) -> NormFlags {
        NormFlags::ALL
    }
}
