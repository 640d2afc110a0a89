use super::{NormEngine, NormFlags};
use crate::exact::{pow2, Exact};
use crate::seqvec::SparseVec;

/// Day's norm `(Σ_k 2^{-k} v_k²)^{1/2}` with `v` the decreasing
/// rearrangement of `|x|`. Pairing the largest modulus with the largest
/// weight attains the supremum over all injections.
pub fn day_norm(x: &SparseVec) -> f64 {
    let v = x.decreasing_rearrangement();
    // smallest terms first
    let sum: f64 = v.iter().enumerate().rev().map(|(k, &vk)| weight(k + 1) * vk * vk).sum();
    sum.sqrt()
}

fn weight(k: usize) -> f64 {
    if k >= 1075 {
        0.0
    } else {
        f64::powi(2.0, -(k as i32))
    }
}

/// Exact `‖x‖²` of Day's norm given the exact squared moduli of `x`.
pub fn day_norm_sq_exact(squares: &[Exact]) -> Exact {
    let mut s: Vec<&Exact> = squares.iter().collect();
    s.sort_by(|a, b| b.cmp(a));
    s.into_iter().enumerate().map(|(k, sq)| pow2(-(k as i64) - 1) * sq).fold(Exact::default(), |acc, t| acc + t)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DayNorm;

impl NormEngine for DayNorm {
    fn name(&self) -> String {
        "day".into()
    }

    fn eval(&self, x: &SparseVec) -> f64 {
        day_norm(x)
    }

    fn flags(&self) -> NormFlags {
        NormFlags::ALL
    }
}
