use super::report::{Relation, WitnessReport};
use crate::error::{Error, Result};
use crate::norms::{nakano_norm, NakanoExponents};
use crate::seqvec::{IndexSet, SparseVec};

/// For `x/‖x‖`: finds `m(x)`, the first `n` with `‖R_{A_n(x)} x‖ <= θ`, and
/// checks `1 - ‖P_{A_n(x)} x‖ <= θ^{p_n}` for `m(x) <= n <= |supp x|`, and
/// `Σ_{j>n} |x(γ_j)|^{p_j} <= ‖R_{A_n(x)} x‖^{p_n}` for every `n`.
pub fn nakano_witness(p: &NakanoExponents, theta: f64, x: &SparseVec) -> Result<WitnessReport> {
    if !p.tends_to_infinity() {
        return Err(Error::Precondition(format!("exponents `{}` do not tend to infinity", p.id())));
    }
    if !(theta > 0.0 && theta < 1.0) {
        return Err(Error::Precondition(format!("θ must lie in (0, 1), got {theta}")));
    }
    if x.is_zero() {
        return Err(Error::Precondition("x must be nonzero".into()));
    }
    let scale = nakano_norm(p, x);
    let u = x.scale(1.0 / scale);
    let unit = nakano_norm(p, &u);
    if (unit - 1.0).abs() > 1e-9 {
        return Err(Error::Precondition(format!("normalization failed: ‖x/‖x‖‖ = {unit}")));
    }

    let mut report = WitnessReport::new("ex2.3");
    report.param("p", p.id()).param("theta", theta).param("support", u.len());

    let order = u.greedy_order();
    let s = order.len();
    let mut m_x = None;
    let mut rows = Vec::with_capacity(s);
    for n in 1..=s {
        let a_n: IndexSet = order[..n].iter().copied().collect();
        let rest = u.remainder(&a_n);
        let r = nakano_norm(p, &rest);
        let head = nakano_norm(p, &u.project(&a_n));
        let tail: f64 = order[n..].iter().enumerate().map(|(i, &g)| u.get(g).abs().powf(p.p(n + i + 1))).sum();
        report.push("Σ_{j>n} |x(γ_j)|^p_j <= ‖R x‖^p_n", Some(n), None, tail, Relation::Le, r.powf(p.p(n)), 1e-9);
        if m_x.is_none() && r <= theta {
            m_x = Some(n);
        }
        rows.push((n, head));
    }
    let m_x = m_x.expect("the remainder vanishes at n = |supp x|");
    report.param("m(x)", m_x);
    for (n, head) in rows.into_iter().skip(m_x - 1) {
        report.push("1 - ‖P_{A_n} x‖ <= θ^p_n", Some(n), None, 1.0 - head, Relation::Le, theta.powf(p.p(n)), 1e-9);
    }
    report.vectors.push(("x/‖x‖".into(), u));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::witness::{random_vector, seeded_rng};

    #[test]
    fn unit_vector() {
        let r = nakano_witness(&NakanoExponents::linear(), 0.5, &SparseVec::unit(7).unwrap()).unwrap();
        assert!(r.passed());
        assert_eq!(r.params["m(x)"], "1");
        assert_eq!(r.rows.last().unwrap().lhs, 0.0);
    }

    #[test]
    fn random_vectors_pass() {
        let mut rng = seeded_rng(11);
        for s in 1..=8 {
            let x = random_vector(&mut rng, s, 20, 1.0);
            let r = nakano_witness(&NakanoExponents::linear(), 0.5, &x).unwrap();
            assert!(r.passed(), "{}", r.summary());
        }
    }

    #[test]
    fn preconditions() {
        let x = SparseVec::unit(1).unwrap();
        assert!(nakano_witness(&NakanoExponents::constant(2.0).unwrap(), 0.5, &x).is_err());
        assert!(nakano_witness(&NakanoExponents::linear(), 1.0, &x).is_err());
        assert!(nakano_witness(&NakanoExponents::linear(), 0.5, &SparseVec::zero()).is_err());
    }
}
