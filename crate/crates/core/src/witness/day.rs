use rand::Rng;

use super::blocks::{block_positions, block_window};
use super::report::{Relation, WitnessReport};
use super::sample::{random_vector, seeded_rng};
use crate::decomp::{subset_gap, ASequence};
use crate::error::{Error, Result};
use crate::exact::{from_f64, int, pow2, pow4, sqrt_gap_at_least, to_f64, Exact};
use crate::norms::{day_norm_sq_exact, DayNorm, NormEngine};
use crate::seqvec::SparseVec;

/// Day's norm: `x(n_k) = √3 · 2^{-k/2}` for `k <= K`, where `n_k` is the first
/// window position after which `a_n <= 8^-k`.
///
/// Checked: `‖x‖² = 1 - 4^-K`, `‖x‖² - ‖P_n x‖² = 4^-k - 4^-K` on
/// `n_k <= n < n_{k+1}`, and `a_n^{-1}(‖x‖ - ‖P_n x‖) >= 2^{k-2}` for every `n`
/// of those blocks with `k <= K - 2`, all in rational arithmetic.
pub fn day_witness(a: &ASequence, levels: usize, window: Option<usize>) -> Result<WitnessReport> {
    let values = block_window(a, levels, window)?;
    let nk = block_positions(&values, levels, false)?;
    let big_k = levels as i64;

    // x(n_k)^2 = 3 · 2^-k
    let squares: Vec<Exact> = (1..=big_k).map(|k| int(3) * pow2(-k)).collect();
    let x = SparseVec::from_pairs(
        nk.iter().zip(1..=levels).map(|(&n, k)| (n, 3f64.sqrt() * 2f64.powf(-(k as f64) / 2.0))),
    )?;

    let mut report = WitnessReport::new("ex2.5");
    report
        .param("a", a.id())
        .param("K", levels)
        .param("window", values.len())
        .param("n_k", nk.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" "));

    let engine = DayNorm;
    let norm_sq = day_norm_sq_exact(&squares);
    let expected = int(1) - pow4(-big_k);
    report.push_exact(
        "‖x‖² = 1 - 4^-K",
        None,
        None,
        to_f64(&norm_sq),
        Relation::Eq,
        to_f64(&expected),
        norm_sq == expected,
    );
    let norm = engine.eval(&x);
    report.push_close("floating ‖x‖ matches", None, None, norm, to_f64(&expected).sqrt(), 1e-12);

    let exact_a = |n: usize| -> Result<Exact> {
        a.exact(n)
            .or_else(|| from_f64(values[n - 1]))
            .ok_or_else(|| Error::Precondition(format!("a_{n} has no exact value")))
    };

    let mut ratios_at_start = Vec::with_capacity(levels);
    for k in 1..=levels {
        let n = nk[k - 1];
        let prefix_sq = day_norm_sq_exact(&squares[..k]);
        let diff = &norm_sq - &prefix_sq;
        let target = pow4(-(k as i64)) - pow4(-big_k);
        report.push_exact(
            "‖x‖² - ‖P_n x‖² = 4^-k - 4^-K",
            Some(n),
            Some(k),
            to_f64(&diff),
            Relation::Eq,
            to_f64(&target),
            diff == target,
        );

        let prefix = engine.eval(&x.prefix(n));
        report.push_close("floating ‖P_n x‖ matches", Some(n), Some(k), prefix, to_f64(&prefix_sq).sqrt(), 1e-12);
        let ratio = (norm - prefix) / values[n - 1];
        ratios_at_start.push(ratio);

        if k + 2 <= levels {
            let bound = pow2(k as i64 - 2);
            let a_start = exact_a(n)?;
            report.push_exact(
                "ratio at n_k >= 2^(k-2)",
                Some(n),
                Some(k),
                ratio,
                Relation::Ge,
                to_f64(&bound),
                sqrt_gap_at_least(&norm_sq, &prefix_sq, &(&bound * &a_start)),
            );
            // the gap is constant on the block, so the largest a_n is the worst case
            let end = nk[k];
            let worst = (n..end).max_by(|&i, &j| values[i - 1].total_cmp(&values[j - 1]).then(j.cmp(&i))).unwrap_or(n);
            let a_worst = exact_a(worst)?;
            report.push_exact(
                "ratio on n_k <= n < n_(k+1) >= 2^(k-2)",
                Some(worst),
                Some(k),
                (norm - prefix) / values[worst - 1],
                Relation::Ge,
                to_f64(&bound),
                sqrt_gap_at_least(&norm_sq, &prefix_sq, &(&bound * &a_worst)),
            );
        }
    }
    for k in 1..levels.saturating_sub(1) {
        let (prev, next) = (ratios_at_start[k - 1], ratios_at_start[k]);
        report.push("ratio at n_k non-decreasing in k", Some(nk[k]), Some(k + 1), next, Relation::Ge, prev, 0.0);
    }
    let last = nk[levels - 1];
    report.push(
        "gap vanishes for n >= n_K",
        Some(last),
        Some(levels),
        norm - engine.eval(&x.prefix(last)),
        Relation::Eq,
        0.0,
        0.0,
    );
    report.vectors.push(("x".into(), x));
    Ok(report)
}

/// `2^n (‖x‖ - sup_{|A|<=n} ‖P_A x‖) <= 4 ‖x‖` for seeded random vectors and
/// every `n <= max_support`; one row per vector at its tightest `n`.
pub fn day_bound_suite(seed: u64, count: usize, max_support: usize) -> Result<WitnessReport> {
    if max_support == 0 {
        return Err(Error::Precondition("support bound must be positive".into()));
    }
    let mut rng = seeded_rng(seed);
    let mut report = WitnessReport::new("ex2.5-bound");
    report.param("seed", seed).param("count", count).param("max_support", max_support);
    let engine = DayNorm;
    for _ in 0..count {
        let s = rng.gen_range(1..=max_support);
        let x = random_vector(&mut rng, s, 4 * max_support, 2.0);
        let norm = engine.eval(&x);
        let mut worst: Option<(usize, f64)> = None;
        for n in 1..=max_support {
            let lhs = 2f64.powi(n as i32) * subset_gap(&engine, &x, n)?;
            let margin = 4.0 * norm - lhs;
            if worst.is_none_or(|(_, m)| margin < m) {
                worst = Some((n, lhs));
            }
        }
        let (n, lhs) = worst.expect("max_support >= 1");
        report.push("2^n gap <= 4‖x‖", Some(n), None, lhs, Relation::Le, 4.0 * norm, 1e-9);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn harmonic_six_blocks() {
        let r = day_witness(&ASequence::Harmonic, 6, None).unwrap();
        assert!(r.passed(), "{}", r.summary());
        assert_eq!(r.params["n_k"], "8 64 512 4096 32768 262144");
        assert_eq!(r.rows.iter().filter(|row| row.check == "ratio at n_k >= 2^(k-2)").count(), 4);
    }

    #[test]
    fn window_too_short() {
        assert!(matches!(day_witness(&ASequence::Harmonic, 3, Some(100)), Err(Error::Precondition(_))));
    }

    #[test]
    fn random_bound_suite() {
        let r = day_bound_suite(7, 30, 20).unwrap();
        assert_eq!(r.rows.len(), 30);
        assert!(r.passed(), "{}", r.summary());
    }
}
