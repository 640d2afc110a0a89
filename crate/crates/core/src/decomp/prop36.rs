use serde::Serialize;

use super::gap::greedy_subset_sup;
use super::star::{StarCertificate, STAR_MARGIN_TOL};
use crate::error::{Error, Result};
use crate::norms::NormEngine;
use crate::seqvec::SparseVec;

/// One evaluation of the estimate
/// `‖x‖ <= sup_{|A|<=n} ‖P_A x‖ + c(x) ω(K d(x) ‖x‖ / λ_n)` and of the
/// sequence `a_{m,n} = m ω(m/λ_n)` built from it.
#[derive(Debug, Clone, Serialize)]
pub struct Prop36Report {
    pub n: usize,
    pub norm: f64,
    pub lambda_n: f64,
    pub k_const: f64,
    /// `‖R_{A_n(x)} x‖∞` and its bound `K ‖x‖ / λ_n`.
    pub remainder_sup: f64,
    pub remainder_bound: f64,
    pub sup_term: f64,
    pub modulus_term: f64,
    pub chain_margin: f64,
    /// `max{c(x), K d(x) ‖x‖}`: from here on `a_{m,n}` dominates the gap.
    pub threshold: f64,
    pub gap: f64,
    /// `(m, a_{m,n})` for `m = 1..=m_max`.
    pub a_mn: Vec<(usize, f64)>,
}

impl Prop36Report {
    pub fn remainder_margin(&self) -> f64 {
        self.remainder_bound - self.remainder_sup
    }

    /// `a_{m,n} - gap` for every tabulated `m >= threshold`.
    pub fn dominated_margins(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.a_mn.iter().filter(|(m, _)| *m as f64 >= self.threshold).map(|&(m, a)| (m, a - self.gap))
    }

    pub fn holds(&self) -> bool {
        self.remainder_margin() >= -STAR_MARGIN_TOL
            && self.chain_margin >= -STAR_MARGIN_TOL
            && self.dominated_margins().all(|(_, d)| d >= -STAR_MARGIN_TOL)
    }
}

/// Evaluates both inequalities of the chain at `n` for a vector with a
/// valid decomposition certificate, plus `a_{m,n}` for `m <= m_max`.
pub fn prop36_chain(engine: &dyn NormEngine, cert: &StarCertificate, n: usize, m_max: usize) -> Result<Prop36Report> {
    if !engine.flags().symmetric_lattice() {
        return Err(Error::FlagsUnmet { engine: engine.name(), required: "symmetric, lattice-monotone".into() });
    }
    if cert.engine != engine.name() {
        return Err(Error::Precondition(format!("certificate is for `{}`, not `{}`", cert.engine, engine.name())));
    }
    if !cert.is_valid() {
        return Err(Error::Precondition("the decomposition certificate has a negative margin".into()));
    }
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let x = &cert.x;
    let omega = &cert.modulus;
    let norm = engine.eval(x);
    let lambda_n = engine.eval(&SparseVec::ones(n));
    let k_const = engine.unconditional_constant();
    let a_n = x.greedy_support(n);
    let remainder_sup = x.remainder(&a_n).sup_norm();
    let remainder_bound = k_const * norm / lambda_n;
    let sup_term = greedy_subset_sup(engine, x, n);
    let modulus_term = cert.c_x * omega.eval(k_const * cert.d_x * norm / lambda_n);
    let a_mn = (1..=m_max).map(|m| (m, m as f64 * omega.eval(m as f64 / lambda_n))).collect();
    Ok(Prop36Report {
        n,
        norm,
        lambda_n,
        k_const,
        remainder_sup,
        remainder_bound,
        sup_term,
        modulus_term,
        chain_margin: sup_term + modulus_term - norm,
        threshold: cert.c_x.max(k_const * cert.d_x * norm),
        gap: norm - sup_term,
        a_mn,
    })
}
