use super::blocks::{block_positions, block_window};
use super::report::{Relation, WitnessReport};
use crate::decomp::{subset_sup_profile, ASequence};
use crate::error::{Error, Result};
use crate::exact::{from_f64, in_dyadic_reciprocals, int, pow2, pow4, ratio, to_f64, Exact};
use crate::norms::{blockweight_norm, Block, BlockNormMode, BlockWeightNorm, BlockWeights, NormEngine};
use crate::seqvec::SparseVec;

/// Largest block union the construction will materialize.
pub const MAX_BLOCK_SUPPORT: usize = 1 << 20;

/// Supports up to this size are also searched exhaustively.
const EXHAUSTIVE_CROSS_CHECK: usize = 12;

/// The non-symmetric norm on `c0`: consecutive blocks `H_k` of length
/// `n_k - n_{k-1}`, weights `q = 2^-k/|H_k|` and `x = (3/2) 2^-k` on `H_k`.
///
/// Every `a_n`-relative claim is checked on whole blocks in rational
/// arithmetic. The ratio bound verified is `8^k 4^{-k-2} = 2^{k-4}` for
/// `2 <= k <= K-3`.
pub fn blockweight_witness(
    a: &ASequence,
    levels: usize,
    window: Option<usize>,
) -> Result<(BlockWeights, WitnessReport)> {
    let values = block_window(a, levels, window)?;
    let nk = block_positions(&values, levels, true)?;
    let total_support = nk[levels - 1];
    if total_support > MAX_BLOCK_SUPPORT {
        return Err(Error::Precondition(format!(
            "window insufficient: the blocks need {total_support} coordinates (limit {MAX_BLOCK_SUPPORT})"
        )));
    }
    let mut blocks = Vec::with_capacity(levels);
    let mut prev = 0;
    for (k, &n) in (1..=levels as u32).zip(&nk) {
        blocks.push(Block { level: k, size: n - prev, start: prev + 1 });
        prev = n;
    }
    let weights = BlockWeights::new(blocks)?;
    let blocks = weights.blocks().to_vec();
    let big_k = levels as i64;

    let x_exact = |k: u32| int(3) * pow2(-(k as i64) - 1);
    let x = SparseVec::from_pairs(blocks.iter().flat_map(|b| {
        let v = 1.5 * 2f64.powi(-(b.level as i32));
        (b.start..=b.end()).map(move |j| (j, v))
    }))?;

    let mut report = WitnessReport::new("ex2.6");
    report
        .param("a", a.id())
        .param("K", levels)
        .param("window", values.len())
        .param("n_k", nk.iter().map(|n| n.to_string()).collect::<Vec<_>>().join(" "));

    // (a), (b), (e) and D
    for (i, b) in blocks.iter().enumerate() {
        let k = i + 1;
        let n = nk[i];
        let tail_max = values[n - 1..].iter().fold(0.0f64, |m, &v| m.max(v));
        report.push(
            "a_n <= 8^-k for window n >= n_k",
            Some(n),
            Some(k),
            tail_max,
            Relation::Le,
            8f64.powi(-(k as i32)),
            0.0,
        );
        if i > 0 {
            report.push(
                "block lengths non-decreasing",
                Some(n),
                Some(k),
                b.size as f64,
                Relation::Ge,
                blocks[i - 1].size as f64,
                0.0,
            );
        }
        let q = b.q_exact();
        report.push_exact("q lies in D", None, Some(k), to_f64(&q), Relation::Eq, b.q(), in_dyadic_reciprocals(&q));
    }
    let q_mass = blocks.iter().fold(Exact::default(), |acc, b| acc + int(b.size as i64) * b.q_exact());
    let level_target = int(1) - pow2(-big_k);
    report.push_exact(
        "Σ q over members = Σ_{k<=K} 2^-k",
        None,
        None,
        to_f64(&q_mass),
        Relation::Eq,
        to_f64(&level_target),
        q_mass == level_target && weights.level_mass() == level_target,
    );

    // per-member weighted terms, constant on blocks: (level, count, q x)
    let terms: Vec<(usize, Exact)> = blocks.iter().map(|b| (b.size, b.q_exact() * x_exact(b.level))).collect();
    let total = terms.iter().fold(Exact::default(), |acc, (c, t)| acc + int(*c as i64) * t);
    let sup = x_exact(1);
    let two_total = int(2) * &total;
    report.push("‖x‖∞ = 3/4", None, None, x.sup_norm(), Relation::Eq, 0.75, 0.0);
    let three_sum = int(1) - pow4(-big_k);
    report.push_exact(
        "2 Σ q x = 3 Σ_{k<=K} 4^-k",
        None,
        None,
        to_f64(&two_total),
        Relation::Eq,
        to_f64(&three_sum),
        two_total == three_sum,
    );
    report.push_exact("‖x‖∞ < 2 Σ q x", None, None, 0.75, Relation::Le, to_f64(&two_total), sup < two_total);

    // prefix sums over L in index order, and the n largest terms
    let prefix_sum = |n: usize| -> Exact {
        let mut acc = Exact::default();
        let mut left = n;
        for (c, t) in &terms {
            let take = left.min(*c);
            acc += int(take as i64) * t;
            left -= take;
            if left == 0 {
                break;
            }
        }
        acc
    };
    let mut sorted = terms.clone();
    sorted.sort_by(|p, q| q.1.cmp(&p.1));
    let top_sum = |n: usize| -> Exact {
        let mut acc = Exact::default();
        let mut left = n;
        for (c, t) in &sorted {
            let take = left.min(*c);
            acc += int(take as i64) * t;
            left -= take;
            if left == 0 {
                break;
            }
        }
        acc
    };
    let norm_exact = if two_total > sup { two_total.clone() } else { sup.clone() };
    let subset_sup_exact = |n: usize| -> Exact {
        let s = int(2) * top_sum(n);
        if n == 0 {
            Exact::default()
        } else if s > sup {
            s
        } else {
            sup.clone()
        }
    };
    let gap_exact = |n: usize| -> Exact { &norm_exact - subset_sup_exact(n) };

    if levels >= 2 {
        let at_n2 = int(2) * prefix_sum(nk[1]);
        let target = int(3) * (ratio(1, 4) + ratio(1, 16));
        report.push_exact(
            "2 Σ_{L_{n_2}} q x = 3(1/4 + 1/16) > ‖x‖∞",
            Some(nk[1]),
            Some(2),
            to_f64(&at_n2),
            Relation::Ge,
            0.75,
            at_n2 == target && at_n2 > sup,
        );
    }

    let engine = BlockWeightNorm::new(format!("ex2.6:{}", a.id()), weights.clone());
    let cert = blockweight_norm(&weights, &x, BlockNormMode::Certified)?;
    let lower = blockweight_norm(&weights, &x, BlockNormMode::LowerBound)?;
    report.push("certified norm equals lower-bound search", None, None, cert.value, Relation::Eq, lower.value, 0.0);
    // floating sums over |L| terms
    let slack = 1e-15 * (x.len() as f64).max(16.0);
    report.push("certified norm matches exact value", None, None, cert.value, Relation::Eq, to_f64(&norm_exact), slack);
    if x.len() <= EXHAUSTIVE_CROSS_CHECK {
        let profile = subset_sup_profile(&engine, &x)?;
        for (n, &v) in profile.iter().enumerate().skip(1) {
            report.push(
                "exhaustive subset sup matches exact value",
                Some(n),
                None,
                v,
                Relation::Eq,
                to_f64(&subset_sup_exact(n)),
                slack,
            );
        }
    }

    let a_exact = |n: usize| -> Result<Exact> {
        a.exact(n)
            .or_else(|| from_f64(values[n - 1]))
            .ok_or_else(|| Error::Precondition(format!("a_{n} has no exact value")))
    };
    let mut ratios_at_start = Vec::with_capacity(levels);
    for k in 1..=levels {
        let start = nk[k - 1];
        let end = if k < levels { nk[k] - 1 } else { start };
        ratios_at_start.push(to_f64(&gap_exact(start)) / values[start - 1]);
        if k < 2 {
            continue;
        }
        for n in [start, end] {
            let gap = gap_exact(n);
            let formula = int(2) * (&total - prefix_sum(n));
            report.push_exact(
                "gap = 2 Σ_{L \\ L_n} q x",
                Some(n),
                Some(k),
                to_f64(&gap),
                Relation::Eq,
                to_f64(&formula),
                gap == formula,
            );
            let float_gap = engine.eval(&x) - engine.subset_sup(&x, n)?;
            report.push("floating gap matches", Some(n), Some(k), float_gap, Relation::Eq, to_f64(&gap), slack);
        }
        if k + 2 <= levels {
            let tail = int(2) * (&total - prefix_sum(nk[k]));
            let lower = pow4(-(k as i64) - 2);
            let value = pow4(-(k as i64) - 1) - pow4(-big_k);
            report.push_exact(
                "tail beyond n_(k+1) >= 4^(-k-2)",
                Some(nk[k]),
                Some(k),
                to_f64(&tail),
                Relation::Ge,
                to_f64(&lower),
                tail >= lower,
            );
            report.push_exact(
                "tail beyond n_(k+1) = 4^(-k-1) - 4^-K",
                Some(nk[k]),
                Some(k),
                to_f64(&tail),
                Relation::Eq,
                to_f64(&value),
                tail == value,
            );
        }
        if k + 3 <= levels {
            // smallest gap and largest a_n on the block
            let gap = gap_exact(end);
            let worst =
                (start..=end).max_by(|&i, &j| values[i - 1].total_cmp(&values[j - 1]).then(j.cmp(&i))).unwrap_or(start);
            let bound = pow2(k as i64 - 4);
            let holds = gap >= &bound * a_exact(worst)?;
            report.push_exact(
                "ratio on n_k <= n < n_(k+1) >= 8^k 4^(-k-2)",
                Some(worst),
                Some(k),
                to_f64(&gap) / values[worst - 1],
                Relation::Ge,
                to_f64(&bound),
                holds,
            );
        }
    }
    for k in 1..levels.saturating_sub(1) {
        let (prev, next) = (ratios_at_start[k - 1], ratios_at_start[k]);
        report.push("ratio at n_k non-decreasing in k", Some(nk[k]), Some(k + 1), next, Relation::Ge, prev, 0.0);
    }
    report.vectors.push(("x".into(), x));
    Ok((weights, report))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_singletons() {
        let (w, r) = blockweight_witness(&ASequence::Geometric8, 10, None).unwrap();
        assert!(r.passed(), "{}", r.summary());
        assert!(w.blocks().iter().all(|b| b.size == 1));
        assert_eq!(r.params["n_k"], "1 2 3 4 5 6 7 8 9 10");
        assert_eq!(r.rows.iter().filter(|row| row.check.starts_with("ratio on")).count(), 6);
        assert_eq!(r.rows.iter().filter(|row| row.check.starts_with("exhaustive")).count(), 10);
    }

    #[test]
    fn harmonic_blocks_grow() {
        let (w, r) = blockweight_witness(&ASequence::Harmonic, 4, None).unwrap();
        assert!(r.passed(), "{}", r.summary());
        let sizes: Vec<usize> = w.blocks().iter().map(|b| b.size).collect();
        assert_eq!(sizes, vec![8, 56, 448, 3584]);
    }
}
