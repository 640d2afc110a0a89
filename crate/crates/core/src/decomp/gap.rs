use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::norms::{summing_prefix_project, NormEngine};
use crate::seqvec::SparseVec;

/// Largest support searched exhaustively (`2^16` subsets).
pub const MAX_EXHAUSTIVE_SUPPORT: usize = 16;

/// How the `n`-term approximation in a gap is chosen.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GapMode {
    /// Best projection onto at most `n` coordinates.
    Subset,
    /// Projection onto `{1, .., n}`.
    Prefix,
    /// Partial-sum projection of the summing basis of `c0`.
    SummingPrefix,
}

impl std::str::FromStr for GapMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "subset" => Ok(GapMode::Subset),
            "prefix" => Ok(GapMode::Prefix),
            "summing-prefix" => Ok(GapMode::SummingPrefix),
            _ => Err(Error::Precondition(format!("unknown gap mode `{s}`"))),
        }
    }
}

/// `sup_{|A| <= n} ‖P_A x‖`.
///
/// Symmetric lattice-monotone engines are evaluated on `A_n(x)`; any other
/// engine needs a support small enough for exhaustive search.
pub fn subset_sup(engine: &dyn NormEngine, x: &SparseVec, n: usize) -> Result<f64> {
    if n >= x.len() {
        return Ok(engine.eval(x));
    }
    if engine.flags().symmetric_lattice() {
        return Ok(greedy_subset_sup(engine, x, n));
    }
    exhaustive_subset_sup(engine, x, n)
}

/// `‖P_{A_n(x)} x‖`.
pub fn greedy_subset_sup(engine: &dyn NormEngine, x: &SparseVec, n: usize) -> f64 {
    engine.eval(&x.project(&x.greedy_support(n)))
}

/// `sup_{|A| <= n} ‖P_A x‖` by enumerating every subset of the support.
pub fn exhaustive_subset_sup(engine: &dyn NormEngine, x: &SparseVec, n: usize) -> Result<f64> {
    let profile = subset_sup_profile(engine, x)?;
    Ok(profile[n.min(x.len())])
}

/// Entry `k` is `max_{A ⊆ supp x, |A| <= k} ‖P_A x‖`, for `k = 0..=|supp x|`.
pub fn subset_sup_profile(engine: &dyn NormEngine, x: &SparseVec) -> Result<Vec<f64>> {
    let s = x.len();
    if s > MAX_EXHAUSTIVE_SUPPORT {
        return Err(Error::SupportTooLarge { size: s, limit: MAX_EXHAUSTIVE_SUPPORT });
    }
    let values: Vec<f64> = (0u64..1 << s).into_par_iter().map(|mask| engine.eval(&x.project_mask(mask))).collect();
    let mut best = vec![0.0f64; s + 1];
    for (mask, v) in values.into_iter().enumerate() {
        let k = mask.count_ones() as usize;
        best[k] = best[k].max(v);
    }
    for k in 1..=s {
        best[k] = best[k].max(best[k - 1]);
    }
    Ok(best)
}

/// `‖x‖ - sup_{|A| <= n} ‖P_A x‖`.
pub fn subset_gap(engine: &dyn NormEngine, x: &SparseVec, n: usize) -> Result<f64> {
    Ok(engine.eval(x) - subset_sup(engine, x, n)?)
}

/// `‖x‖ - ‖P_n x‖`.
pub fn prefix_gap(engine: &dyn NormEngine, x: &SparseVec, n: usize) -> f64 {
    engine.eval(x) - engine.eval(&x.prefix(n))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GapRow {
    pub n: usize,
    pub norm: f64,
    pub sup_term: f64,
    pub gap: f64,
    pub a_n: f64,
    pub ratio: f64,
}

/// Gaps `δ_n` against a reference sequence over the window `1..=n_max`.
#[derive(Debug, Clone, Serialize)]
pub struct GapTable {
    pub engine: String,
    pub mode: GapMode,
    pub x: SparseVec,
    pub rows: Vec<GapRow>,
}

/// Builds the rows `n = 1..=n_max`; `a[n - 1]` is `a_n`.
pub fn gap_table(engine: &dyn NormEngine, x: &SparseVec, a: &[f64], n_max: usize, mode: GapMode) -> Result<GapTable> {
    if a.len() < n_max {
        return Err(Error::Precondition(format!("reference sequence has {} terms, the window needs {n_max}", a.len())));
    }
    if let Some(n) = a[..n_max].iter().position(|v| !(*v > 0.0 && v.is_finite())) {
        return Err(Error::Precondition(format!("a_{} = {} is not positive", n + 1, a[n])));
    }
    let norm = engine.eval(x);
    let profile = match mode {
        GapMode::Subset if !engine.flags().symmetric_lattice() && n_max < x.len() => {
            Some(subset_sup_profile(engine, x)?)
        }
        _ => None,
    };
    let sup_terms: Vec<f64> = (1..=n_max)
        .into_par_iter()
        .map(|n| match mode {
            GapMode::Subset if n >= x.len() => norm,
            GapMode::Subset => match &profile {
                Some(p) => p[n],
                None => greedy_subset_sup(engine, x, n),
            },
            GapMode::Prefix => engine.eval(&x.prefix(n)),
            GapMode::SummingPrefix => engine.eval(&summing_prefix_project(x, n)),
        })
        .collect();
    let rows = sup_terms
        .into_iter()
        .enumerate()
        .map(|(i, sup_term)| {
            let gap = norm - sup_term;
            let a_n = a[i];
            GapRow { n: i + 1, norm, sup_term, gap, a_n, ratio: gap / a_n }
        })
        .collect();
    Ok(GapTable { engine: engine.name(), mode, x: x.clone(), rows })
}

impl GapTable {
    /// Row with the smallest ratio: the windowed stand-in for the liminf.
    pub fn min_ratio(&self) -> Option<&GapRow> {
        self.rows.iter().min_by(|a, b| a.ratio.total_cmp(&b.ratio))
    }

    pub fn max_ratio(&self) -> Option<&GapRow> {
        self.rows.iter().max_by(|a, b| a.ratio.total_cmp(&b.ratio))
    }

    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        for row in &self.rows {
            out.serialize(row).map_err(|e| Error::Io(e.to_string()))?;
        }
        out.flush()?;
        Ok(())
    }

    /// Two whitespace-separated columns `n ratio`.
    pub fn gnuplot(&self) -> String {
        let mut s = format!("# {} {:?} gap ratio\n# n ratio\n", self.engine, self.mode);
        for r in &self.rows {
            s.push_str(&format!("{} {}\n", r.n, r.ratio));
        }
        s
    }
}
