//! Norm engines on finite-support sequences.
//!
//! Every engine implements [`NormEngine`]: an evaluation rule plus the
//! structural flags the decomposition checks rely on. Modular norms
//! (Orlicz/Luxemburg and Nakano) are evaluated by bisection on the scale
//! parameter, see [`luxemburg_bisect`].

mod assignment;
mod blockweight;
mod c0;
mod day;
mod envelope;
mod nakano;
mod orlicz;
mod registry;
mod summing;

pub use assignment::max_weight_assignment;
pub use blockweight::{blockweight_norm, Block, BlockNormMode, BlockNormValue, BlockWeightNorm, BlockWeights};
pub use c0::{summing_prefix_project, C0Norm};
pub use day::{day_norm, day_norm_sq_exact, DayNorm};
pub use envelope::{envelope_norm, prefix_envelope_norm, EnvelopeNorm, PrefixEnvelopeNorm, MAX_ENVELOPE_SUPPORT};
pub use nakano::{nakano_modular, nakano_norm, ExponentTail, NakanoExponents, NakanoNorm};
pub use orlicz::{luxemburg_norm, modular_orlicz, OrliczFn, OrliczNorm};
pub use registry::{engine_from_id, exponents_from_id, orlicz_from_id};
pub use summing::SummingNorm;

use std::fmt;

use serde::Serialize;

use crate::seqvec::SparseVec;

/// Structural properties of a norm with respect to the unit vector basis.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct NormFlags {
    /// Invariant under permutations of the support.
    pub symmetric: bool,
    /// Invariant under coordinate sign changes.
    pub one_unconditional: bool,
    /// `|y| <= |x|` coordinatewise implies `‖y‖ <= ‖x‖`.
    pub lattice_monotone: bool,
}

impl NormFlags {
    pub const ALL: NormFlags = NormFlags { symmetric: true, one_unconditional: true, lattice_monotone: true };
    pub const NONE: NormFlags = NormFlags { symmetric: false, one_unconditional: false, lattice_monotone: false };

    pub fn symmetric_lattice(&self) -> bool {
        self.symmetric && self.lattice_monotone
    }
}

pub trait NormEngine: Send + Sync + fmt::Debug {
    fn name(&self) -> String;

    fn eval(&self, x: &SparseVec) -> f64;

    fn flags(&self) -> NormFlags;

    /// Unconditional basis constant `K` of the unit vector basis;
    /// infinite when the basis is not unconditional.
    fn unconditional_constant(&self) -> f64 {
        1.0
    }

    /// Dual norm of a finite-support functional, when the engine knows it.
    fn dual_norm(&self, _f: &SparseVec) -> Option<f64> {
        None
    }
}

impl<T: NormEngine + ?Sized> NormEngine for Box<T> {
    fn name(&self) -> String {
        (**self).name()
    }
    fn eval(&self, x: &SparseVec) -> f64 {
        (**self).eval(x)
    }
    fn flags(&self) -> NormFlags {
        (**self).flags()
    }
    fn unconditional_constant(&self) -> f64 {
        (**self).unconditional_constant()
    }
    fn dual_norm(&self, f: &SparseVec) -> Option<f64> {
        (**self).dual_norm(f)
    }
}

/// Upper iteration bound for every bisection in the crate.
pub const MAX_BISECTION_STEPS: usize = 200;

/// Relative width at which a bisection is accepted.
pub const BISECTION_REL_TOL: f64 = 1e-12;

/// Smallest `ρ` in `[lower, upper]` with `fits(ρ)`, where `fits` is monotone
/// (false below the root, true above) and `fits(upper)` holds.
///
/// Iterates until the bracket stops shrinking in floating point, so the
/// result is well inside [`BISECTION_REL_TOL`].
pub fn luxemburg_bisect<F: FnMut(f64) -> bool>(lower: f64, upper: f64, mut fits: F) -> f64 {
    if fits(lower) {
        return lower;
    }
    let (mut lo, mut hi) = (lower, upper);
    for _ in 0..MAX_BISECTION_STEPS {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if fits(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    debug_assert!(hi - lo <= BISECTION_REL_TOL * hi);
    hi
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bisect_finds_sqrt_two() {
        let r = luxemburg_bisect(1.0, 2.0, |t| t * t >= 2.0);
        assert!((r - 2f64.sqrt()).abs() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn bisect_returns_lower_when_it_fits() {
        assert_eq!(luxemburg_bisect(3.0, 4.0, |_| true), 3.0);
    }
}
