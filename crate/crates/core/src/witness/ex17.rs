use super::report::{Relation, WitnessReport};
use crate::decomp::{ASequence, GapMode, GapRow, GapTable};
use crate::error::{Error, Result};
use crate::norms::{summing_prefix_project, C0Norm, NormEngine};
use crate::seqvec::SparseVec;

/// `c0` in summing-basis coordinates: `x(1) = max_j a_j^{1/2} + 1` and
/// `x(j) = a_{j-1}^{1/2}` for `2 <= j <= n_max + 1`.
///
/// Wherever `|x(n+1)| <= 1/2` the partial-sum projection satisfies
/// `‖P_n x‖∞ = ‖x‖∞ - x(n+1)`, so the gap ratio is `a_n^{-1/2}`.
pub fn ex17_witness(a: &ASequence, n_max: usize) -> Result<WitnessReport> {
    if n_max == 0 {
        return Err(Error::Precondition("the window needs n_max >= 1".into()));
    }
    let window = a.window(n_max)?;
    if window[n_max - 1] > 0.25 {
        return Err(Error::Precondition(format!(
            "a is not eventually <= 1/4 on the window (a_{n_max} = {})",
            window[n_max - 1]
        )));
    }
    let roots: Vec<f64> = window.iter().map(|v| v.sqrt()).collect();
    let head = roots.iter().fold(0.0f64, |m, &r| m.max(r)) + 1.0;
    let x =
        SparseVec::from_pairs(std::iter::once((1, head)).chain(roots.iter().enumerate().map(|(i, &r)| (i + 2, r))))?;

    let mut report = WitnessReport::new("ex1.7");
    report.param("a", a.id()).param("n_max", n_max).param("x(1)", head);

    let dominance = roots.iter().fold(f64::INFINITY, |m, &r| m.min(head - r));
    report.push("head dominance x(1) - |x(j)|", None, None, dominance, Relation::Ge, 1.0, 0.0);

    let engine = C0Norm;
    let norm = engine.eval(&x);
    report.push("norm equals x(1)", None, None, norm, Relation::Eq, head, 0.0);

    let mut rows = Vec::with_capacity(n_max);
    for n in 1..=n_max {
        let next = x.get(n + 1);
        let sup_term = engine.eval(&summing_prefix_project(&x, n));
        let gap = norm - sup_term;
        let a_n = window[n - 1];
        let ratio = gap / a_n;
        rows.push(GapRow { n, norm, sup_term, gap, a_n, ratio });
        if next.abs() <= 0.5 {
            report.push_close("prefix sup equals ‖x‖∞ - x(n+1)", Some(n), None, sup_term, norm - next, 1e-12);
            report.push_close("ratio equals a_n^(-1/2)", Some(n), None, ratio, a_n.powf(-0.5), 1e-10);
        }
    }
    report.vectors.push(("x".into(), x.clone()));
    report.table = Some(GapTable { engine: engine.name(), mode: GapMode::SummingPrefix, x, rows });
    Ok(report)
}
