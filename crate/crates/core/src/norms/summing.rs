use super::{NormEngine, NormFlags};
use crate::seqvec::SparseVec;

/// `sup_n |Σ_{i≤n} x(i)|`: the `c0` norm read in summing-basis coordinates.
/// Neither symmetric nor unconditional.
#[derive(Debug, Clone, Copy, Default)]
pub struct SummingNorm;

impl NormEngine for SummingNorm {
    fn name(&self) -> String {
        "summing".into()
    }

    fn eval(&self, x: &SparseVec) -> f64 {
        let mut partial = 0.0;
        let mut best: f64 = 0.0;
        for v in x.values() {
            partial += v;
            best = best.max(partial.abs());
        }
        best
    }

    fn flags(&self) -> NormFlags {
        NormFlags::NONE
    }

    fn unconditional_constant(&self) -> f64 {
        f64::INFINITY
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partial_sums() {
        let x = SparseVec::from_pairs([(1, 1.0), (2, 2.0), (5, -4.0)]).unwrap();
        assert_eq!(SummingNorm.eval(&x), 3.0);
        assert_eq!(SummingNorm.eval(&x.scale(-1.0)), 3.0);
        assert_eq!(SummingNorm.eval(&SparseVec::zero()), 0.0);
    }
}
