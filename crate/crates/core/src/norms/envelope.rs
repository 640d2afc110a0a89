//! The two equivalent norms used to pass from a basis to an unconditional
//! (resp. monotone) one: `sup_α ‖Σ α(γ) x(γ) e_γ‖` over `α ∈ [-1,1]^Γ`, and
//! `sup_n ‖P_n x‖`.

use super::{NormEngine, NormFlags};
use crate::error::{Error, Result};
use crate::seqvec::SparseVec;

/// Sign-pattern search is `2^{|supp x| - 1}` evaluations.
pub const MAX_ENVELOPE_SUPPORT: usize = 20;

/// `sup_{α ∈ [-1,1]^Γ} engine(α ⊙ x)`.
///
/// `α ↦ ‖α ⊙ x‖` is convex on the cube, so the supremum sits at a vertex and
/// only sign vectors are searched. `α` and `-α` give the same value, so the
/// first support coordinate keeps its sign.
pub fn envelope_norm(engine: &dyn NormEngine, x: &SparseVec) -> Result<f64> {
    if x.len() > MAX_ENVELOPE_SUPPORT {
        return Err(Error::SupportTooLarge { size: x.len(), limit: MAX_ENVELOPE_SUPPORT });
    }
    Ok(sign_search(engine, x))
}

fn sign_search(engine: &dyn NormEngine, x: &SparseVec) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let patterns = 1u64 << (x.len() - 1);
    (0..patterns).map(|p| engine.eval(&x.flip_signs(p << 1))).fold(0.0, f64::max)
}

/// `max_n engine(P_n x)`. Only the prefixes ending at a support index differ,
/// so those (and `n = 0`) are the ones evaluated.
pub fn prefix_envelope_norm(engine: &dyn NormEngine, x: &SparseVec) -> f64 {
    x.iter().map(|(i, _)| engine.eval(&x.prefix(i))).fold(0.0, f64::max)
}

/// [`envelope_norm`] as an engine. Evaluation is exponential in the support
/// size; callers that accept arbitrary input should go through
/// [`envelope_norm`], which enforces [`MAX_ENVELOPE_SUPPORT`].
#[derive(Debug)]
pub struct EnvelopeNorm<E> {
    inner: E,
}

impl<E: NormEngine> EnvelopeNorm<E> {
    pub fn new(inner: E) -> Self {
        Self { inner }
    }
}

impl<E: NormEngine> NormEngine for EnvelopeNorm<E> {
    fn name(&self) -> String {
        format!("envelope:{}", self.inner.name())
    }

    fn eval(&self, x: &SparseVec) -> f64 {
        if self.inner.flags().one_unconditional {
            return self.inner.eval(x);
        }
        sign_search(&self.inner, x)
    }

    fn flags(&self) -> NormFlags {
        NormFlags { symmetric: self.inner.flags().symmetric, one_unconditional: true, lattice_monotone: true }
    }
}

#[derive(Debug)]
pub struct PrefixEnvelopeNorm<E> {
    inner: E,
}

impl<E: NormEngine> PrefixEnvelopeNorm<E> {
    pub fn new(inner: E) -> Self {
        Self { inner }
    }
}

impl<E: NormEngine> NormEngine for PrefixEnvelopeNorm<E> {
    fn name(&self) -> String {
        format!("prefix-envelope:{}", self.inner.name())
    }

    fn eval(&self, x: &SparseVec) -> f64 {
        prefix_envelope_norm(&self.inner, x)
    }

    fn flags(&self) -> NormFlags {
        let f = self.inner.flags();
        NormFlags { symmetric: false, one_unconditional: f.one_unconditional, lattice_monotone: f.lattice_monotone }
    }

    fn unconditional_constant(&self) -> f64 {
        if self.inner.flags().one_unconditional {
            1.0
        } else {
            f64::INFINITY
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::{C0Norm, DayNorm, SummingNorm};

    #[test]
    fn unconditional_engine_is_its_own_envelope() {
        let x = SparseVec::from_pairs([(1, 0.3), (4, -2.0), (6, 1.0)]).unwrap();
        assert_eq!(envelope_norm(&DayNorm, &x).unwrap(), DayNorm.eval(&x));
        assert_eq!(envelope_norm(&C0Norm, &x).unwrap(), x.sup_norm());
    }

    #[test]
    fn summing_norm_envelope_flips_second_sign() {
        let x = SparseVec::from_pairs([(1, 1.0), (2, -1.0)]).unwrap();
        assert_eq!(SummingNorm.eval(&x), 1.0);
        assert_eq!(envelope_norm(&SummingNorm, &x).unwrap(), 2.0);
        assert_eq!(EnvelopeNorm::new(SummingNorm).eval(&x), 2.0);
    }

    #[test]
    fn prefix_envelope_examples() {
        let x = SparseVec::from_pairs([(1, 1.0), (2, -1.0)]).unwrap();
        // prefixes: 0, {1:1}, x  -> summing norms 0, 1, 1
        assert_eq!(prefix_envelope_norm(&SummingNorm, &x), 1.0);
        let y = SparseVec::from_pairs([(1, 2.0), (3, -1.0)]).unwrap();
        assert_eq!(prefix_envelope_norm(&DayNorm, &y), DayNorm.eval(&y));
        assert_eq!(prefix_envelope_norm(&DayNorm, &SparseVec::zero()), 0.0);
    }

    #[test]
    fn support_limit() {
        let x = SparseVec::from_dense(&[1.0; 21]).unwrap();
        assert_eq!(envelope_norm(&C0Norm, &x), Err(Error::SupportTooLarge { size: 21, limit: 20 }));
    }
}
