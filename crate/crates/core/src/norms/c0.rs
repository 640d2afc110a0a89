use super::{NormEngine, NormFlags};
use crate::seqvec::SparseVec;

/// The supremum norm of `c0`.
#[derive(Debug, Clone, Copy, Default)]
pub struct C0Norm;

impl NormEngine for C0Norm {
    fn name(&self) -> String {
        "c0".into()
    }

    fn eval(&self, x: &SparseVec) -> f64 {
        x.sup_norm()
    }

    fn flags(&self) -> NormFlags {
        NormFlags::ALL
    }

    /// The dual of `c0` is `ℓ1`.
    fn dual_norm(&self, f: &SparseVec) -> Option<f64> {
        Some(f.l1_norm())
    }
}

/// Basis projection `P_n` of the summing basis `x_j = e_1 + .. + e_j`,
/// returned in standard coordinates: `Σ_{i≤n} (x(i) - x(n+1)) e_i`.
pub fn summing_prefix_project(x: &SparseVec, n: usize) -> SparseVec {
    let tail = x.get(n + 1);
    if tail == 0.0 {
        return x.prefix(n);
    }
    let mut pairs = Vec::with_capacity(n);
    let mut entries = x.iter().peekable();
    for i in 1..=n {
        let xi = match entries.peek() {
            Some(&(j, v)) if j == i => {
                entries.next();
                v
            }
            _ => 0.0,
        };
        pairs.push((i, xi - tail));
    }
    SparseVec::from_pairs(pairs).expect("indices are 1..=n")
}
