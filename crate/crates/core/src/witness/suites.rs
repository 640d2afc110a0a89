//! Seeded multi-instance runs of the single-vector witnesses, and the
//! sequence-combination check.

use rand::Rng;

use super::nakano::nakano_witness;
use super::report::{Relation, WitnessReport};
use super::sample::{random_vector, seeded_rng};
use crate::decomp::{combine_sequences, orlicz_modulus, prop36_chain, star_check, star_orlicz_certificate_with};
use crate::error::{Error, Result};
use crate::norms::{NakanoExponents, OrliczFn, OrliczNorm};

/// [`nakano_witness`] on `count` seeded random vectors with support in
/// `1..=max_support`, one instance each.
pub fn nakano_suite(
    p: &NakanoExponents,
    theta: f64,
    seed: u64,
    count: usize,
    max_support: usize,
) -> Result<WitnessReport> {
    if max_support == 0 {
        return Err(Error::Precondition("support bound must be positive".into()));
    }
    let mut rng = seeded_rng(seed);
    let mut report = WitnessReport::new("ex2.3");
    report
        .param("p", p.id())
        .param("theta", theta)
        .param("seed", seed)
        .param("count", count)
        .param("max_support", max_support);
    for i in 0..count {
        let s = rng.gen_range(1..=max_support);
        let x = random_vector(&mut rng, s, 4 * max_support, 1.0);
        report.absorb(nakano_witness(p, theta, &x)?, i + 1);
    }
    Ok(report)
}

/// `a_n = Σ_{m<=m_max} 2^-m a_{m,n}/(1+a_{m,n})` for `a_{m,n} = 1/(m+n)`:
/// the dominating inequality at every window pair, and a decreasing tail.
pub fn fact16_witness(m_max: usize, n_max: usize) -> Result<WitnessReport> {
    let c = combine_sequences(|m, n| 1.0 / (m + n) as f64, m_max, n_max)?;
    let mut report = WitnessReport::new("fact1.6");
    report
        .param("family", "1/(m+n)")
        .param("m_max", m_max)
        .param("n_max", n_max)
        .param("truncation_bound", c.truncation_bound);
    let (m, n) = c.worst_pair;
    report.push("violations of a_{m,n} <= 2^m a_n C_m", None, None, c.violations as f64, Relation::Eq, 0.0, 0.0);
    report.push("worst margin 2^m a_n C_m - a_{m,n}", Some(n), Some(m), c.worst_margin, Relation::Ge, 0.0, 1e-9);
    report.push(
        "a non-increasing from",
        None,
        None,
        c.monotone_from as f64,
        Relation::Le,
        (n_max / 2).max(1) as f64,
        0.0,
    );
    report.push_exact(
        "a_{n_max} < a_{n_max/2}",
        Some(n_max),
        None,
        c.a[n_max - 1],
        Relation::Le,
        c.a[(n_max / 2).max(1) - 1],
        c.tail_decreasing(),
    );
    Ok(report)
}

/// The chain estimate on `count` seeded Orlicz instances: for each, the
/// decomposition certificate is built and checked, then every `n` up to the
/// support gets its remainder, chain and domination rows.
pub fn prop36_suite(m: &OrliczFn, seed: u64, count: usize, max_support: usize, m_max: usize) -> Result<WitnessReport> {
    if max_support == 0 {
        return Err(Error::Precondition("support bound must be positive".into()));
    }
    let engine = OrliczNorm::new(m.clone());
    let modulus = orlicz_modulus(m);
    let mut rng = seeded_rng(seed);
    let mut report = WitnessReport::new("prop3.6");
    report
        .param("orlicz", m.id())
        .param("seed", seed)
        .param("count", count)
        .param("max_support", max_support)
        .param("m_max", m_max);
    for i in 0..count {
        let s = rng.gen_range(1..=max_support);
        let x = random_vector(&mut rng, s, 4 * max_support, 2.0);
        let c = star_orlicz_certificate_with(m, &x, modulus.clone())?;
        let cert = star_check(&engine, &x, c.c_x, c.d_x, &c.modulus)?;
        let mut sub = WitnessReport::new("prop3.6");
        let worst = cert.min_margin().map_or(0.0, |g| g.margin);
        sub.push("decomposition margin", None, None, worst, Relation::Ge, 0.0, 1e-9);
        if cert.is_valid() {
            for n in 1..=s {
                let r = prop36_chain(&engine, &cert, n, m_max)?;
                sub.push(
                    "‖R_{A_n} x‖∞ <= K‖x‖/λ_n",
                    Some(n),
                    None,
                    r.remainder_sup,
                    Relation::Le,
                    r.remainder_bound,
                    1e-9,
                );
                sub.push(
                    "‖x‖ <= sup + c ω(K d ‖x‖/λ_n)",
                    Some(n),
                    None,
                    r.norm,
                    Relation::Le,
                    r.sup_term + r.modulus_term,
                    1e-9,
                );
                for (mm, a) in r.a_mn.iter().filter(|(mm, _)| *mm as f64 >= r.threshold) {
                    sub.push("gap <= a_{m,n}", Some(n), Some(*mm), r.gap, Relation::Le, *a, 1e-9);
                }
            }
        }
        sub.vectors.push(("x".into(), x));
        report.absorb(sub, i + 1);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        let p = NakanoExponents::linear();
        let r = nakano_suite(&p, 0.5, 7, 10, 6).unwrap();
        assert!(r.passed(), "{}", r.summary());
        assert_eq!(r.rows.iter().filter_map(|x| x.instance).max(), Some(10));

        let f = fact16_witness(5, 200).unwrap();
        assert!(f.passed(), "{}", f.summary());

        let m = OrliczFn::default_exp(2.0).unwrap();
        let q = prop36_suite(&m, 3, 4, 5, 10).unwrap();
        assert!(q.passed(), "{}", q.summary());
    }

    #[test]
    fn deterministic() {
        let p = NakanoExponents::linear();
        let a = nakano_suite(&p, 0.5, 11, 5, 8).unwrap();
        let b = nakano_suite(&p, 0.5, 11, 5, 8).unwrap();
        assert_eq!(a.rows, b.rows);
    }
}
