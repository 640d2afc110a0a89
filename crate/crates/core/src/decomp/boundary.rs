use serde::Serialize;

use super::star::STAR_MARGIN_TOL;
use crate::error::{Error, Result};
use crate::norms::NormEngine;
use crate::seqvec::{IndexSet, SparseVec};

/// `sup_{f ∈ K_m} ‖R*_n f‖`: the largest dual norm of a tail `f|_{(n,∞)}`
/// over a finite family of unit functionals.
pub fn boundary_gap(engine: &dyn NormEngine, k_m: &[SparseVec], n: usize) -> Result<f64> {
    let mut best = 0.0f64;
    for f in k_m {
        let unit = dual(engine, f)?;
        if (unit - 1.0).abs() > STAR_MARGIN_TOL {
            return Err(Error::Precondition(format!("functional has dual norm {unit}, expected 1")));
        }
        best = best.max(dual(engine, &f.remainder(&IndexSet::prefix(n)))?);
    }
    Ok(best)
}

fn dual(engine: &dyn NormEngine, f: &SparseVec) -> Result<f64> {
    engine
        .dual_norm(f)
        .ok_or_else(|| Error::FlagsUnmet { engine: engine.name(), required: "a computable dual norm".into() })
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundaryCheck {
    pub n: usize,
    pub norm: f64,
    pub prefix_norm: f64,
    pub a_mn: f64,
    /// `a_{m,n} ‖x‖ - (‖x‖ - ‖P_n x‖)`.
    pub margin: f64,
}

impl BoundaryCheck {
    pub fn holds(&self) -> bool {
        self.margin >= -STAR_MARGIN_TOL
    }
}

/// `‖x‖ - ‖P_n x‖ <= a_{m,n} ‖x‖` for an `x` normed by some member of `K_m`.
pub fn boundary_check(engine: &dyn NormEngine, k_m: &[SparseVec], x: &SparseVec, n: usize) -> Result<BoundaryCheck> {
    let norm = engine.eval(x);
    if !k_m.iter().any(|f| (f.dot(x) - norm).abs() <= STAR_MARGIN_TOL * norm.max(1.0)) {
        return Err(Error::Precondition("no functional of the family attains the norm of x".into()));
    }
    let a_mn = boundary_gap(engine, k_m, n)?;
    let prefix_norm = engine.eval(&x.prefix(n));
    Ok(BoundaryCheck { n, norm, prefix_norm, a_mn, margin: a_mn * norm - (norm - prefix_norm) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::norms::{C0Norm, DayNorm};

    #[test]
    fn single_coordinate_functional() {
        let k = vec![SparseVec::unit(3).unwrap()];
        assert_eq!(boundary_gap(&C0Norm, &k, 2).unwrap(), 1.0);
        assert_eq!(boundary_gap(&C0Norm, &k, 3).unwrap(), 0.0);
    }

    #[test]
    fn averaging_functional() {
        let f = SparseVec::from_dense(&[1.0 / 3.0; 3]).unwrap();
        let k = vec![f];
        for n in 0..5 {
            let expected = (3.0 - n as f64).max(0.0) / 3.0;
            assert!((boundary_gap(&C0Norm, &k, n).unwrap() - expected).abs() < 1e-15);
        }
    }

    #[test]
    fn checks_and_errors() {
        let x = SparseVec::from_pairs([(1, 0.5), (4, -2.0)]).unwrap();
        let k = vec![SparseVec::from_pairs([(4, -1.0)]).unwrap()];
        let c = boundary_check(&C0Norm, &k, &x, 2).unwrap();
        assert_eq!((c.a_mn, c.margin), (1.0, 2.0 - 1.5));
        assert!(c.holds());
        assert!(boundary_check(&C0Norm, &[SparseVec::unit(1).unwrap()], &x, 2).is_err());
        assert!(matches!(boundary_gap(&DayNorm, &k, 1), Err(Error::FlagsUnmet { .. })));
        assert!(boundary_gap(&C0Norm, &[SparseVec::from_pairs([(1, 2.0)]).unwrap()], 0).is_err());
    }
}
