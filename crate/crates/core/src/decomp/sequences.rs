use std::path::Path;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{pow2, pow8, ratio, Exact};
use crate::norms::NormEngine;
use crate::seqvec::SparseVec;

/// Reference null sequences `(a_n)`, indexed from `n = 1`.
#[derive(Debug, Clone, PartialEq)]
pub enum ASequence {
    /// `1/n`.
    Harmonic,
    /// `8^-n`.
    Geometric8,
    /// `2^-n`.
    Dyadic,
    /// Finitely many user values.
    Values { label: String, values: Vec<f64> },
}

impl ASequence {
    /// `harmonic`, `geometric8`, `dyadic`, or a path to a file with one
    /// value per line (`#` starts a comment).
    pub fn from_id(id: &str) -> Result<Self> {
        match id {
            "harmonic" => Ok(ASequence::Harmonic),
            "geometric8" => Ok(ASequence::Geometric8),
            "dyadic" => Ok(ASequence::Dyadic),
            path => {
                let text = std::fs::read_to_string(Path::new(path))
                    .map_err(|e| Error::Io(format!("cannot read sequence file `{path}`: {e}")))?;
                Self::parse(path, &text)
            }
        }
    }

    pub fn parse(label: &str, text: &str) -> Result<Self> {
        let mut values = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let v: f64 =
                line.parse().map_err(|_| Error::Parse { line: i + 1, message: format!("not a number: `{line}`") })?;
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Parse {
                    line: i + 1,
                    message: format!("sequence values must be positive, got {v}"),
                });
            }
            values.push(v);
        }
        if values.is_empty() {
            return Err(Error::Parse { line: 0, message: "sequence file has no values".into() });
        }
        Ok(ASequence::Values { label: label.to_string(), values })
    }

    pub fn id(&self) -> &str {
        match self {
            ASequence::Harmonic => "harmonic",
            ASequence::Geometric8 => "geometric8",
            ASequence::Dyadic => "dyadic",
            ASequence::Values { label, .. } => label,
        }
    }

    /// Number of available terms; `None` for the built-in sequences.
    pub fn available(&self) -> Option<usize> {
        match self {
            ASequence::Values { values, .. } => Some(values.len()),
            _ => None,
        }
    }

    /// `a_n`, or `None` past the end of a finite sequence. Built-in values
    /// are correctly rounded (exact for the geometric ones until underflow).
    pub fn get(&self, n: usize) -> Option<f64> {
        if n == 0 {
            return None;
        }
        match self {
            ASequence::Harmonic => Some(1.0 / n as f64),
            ASequence::Geometric8 => Some(2f64.powi(-3 * n.min(400) as i32)),
            ASequence::Dyadic => Some(2f64.powi(-(n.min(1100) as i32))),
            ASequence::Values { values, .. } => values.get(n - 1).copied(),
        }
    }

    /// The exact `a_n`.
    pub fn exact(&self, n: usize) -> Option<Exact> {
        if n == 0 {
            return None;
        }
        match self {
            ASequence::Harmonic => Some(ratio(1, n as i64)),
            ASequence::Geometric8 => Some(pow8(-(n as i64))),
            ASequence::Dyadic => Some(pow2(-(n as i64))),
            ASequence::Values { values, .. } => values.get(n - 1).and_then(|&v| crate::exact::from_f64(v)),
        }
    }

    /// `[a_1, .., a_{n_max}]`, all positive.
    pub fn window(&self, n_max: usize) -> Result<Vec<f64>> {
        (1..=n_max)
            .map(|n| match self.get(n) {
                Some(v) if v > 0.0 => Ok(v),
                Some(_) => Err(Error::Precondition(format!("a_{n} of `{}` underflows to zero", self.id()))),
                None => Err(Error::Precondition(format!(
                    "sequence `{}` has {} terms, the window needs {n_max}",
                    self.id(),
                    n - 1
                ))),
            })
            .collect()
    }
}

/// Result of combining a family `(a_{m,n})` into one sequence.
#[derive(Debug, Clone, Serialize)]
pub struct CombinedSequence {
    pub m_max: usize,
    pub n_max: usize,
    /// `a_n = Σ_{m <= m_max} 2^-m a_{m,n}/(1 + a_{m,n})`.
    pub a: Vec<f64>,
    /// Bound on the omitted terms `m > m_max`.
    pub truncation_bound: f64,
    /// `max_{k <= n_max} (a_{m,k} + 1)` for `m = 1..=m_max`; a lower bound
    /// of the constant over all `k`.
    pub window_max: Vec<f64>,
    /// Smallest `2^m a_n max_k(a_{m,k}+1) - a_{m,n}` over the window, and where.
    pub worst_margin: f64,
    pub worst_pair: (usize, usize),
    pub violations: usize,
    /// Smallest `n0` with `a` non-increasing on `[n0, n_max]`.
    pub monotone_from: usize,
}

impl CombinedSequence {
    pub fn inequality_holds(&self) -> bool {
        self.violations == 0
    }

    /// `a` is non-increasing over the second half of the window and ends
    /// strictly below where that half starts.
    pub fn tail_decreasing(&self) -> bool {
        let half = (self.n_max / 2).max(1);
        self.monotone_from <= half && self.a[self.n_max - 1] < self.a[half - 1]
    }
}

/// Combines `family(m, n)` over `m <= m_max`, `n <= n_max`, and checks
/// `a_{m,n} <= 2^m a_n max_k(a_{m,k} + 1)` at every window pair.
pub fn combine_sequences<F>(family: F, m_max: usize, n_max: usize) -> Result<CombinedSequence>
where
    F: Fn(usize, usize) -> f64 + Sync,
{
    if m_max == 0 || n_max == 0 {
        return Err(Error::Precondition("the window needs m_max, n_max >= 1".into()));
    }
    let table: Vec<Vec<f64>> =
        (1..=m_max).into_par_iter().map(|m| (1..=n_max).map(|n| family(m, n)).collect()).collect();
    for (mi, row) in table.iter().enumerate() {
        if let Some(ni) = row.iter().position(|v| !(*v > 0.0 && v.is_finite())) {
            return Err(Error::Precondition(format!("a_{{{},{}}} = {} is not positive", mi + 1, ni + 1, row[ni])));
        }
    }
    let a: Vec<f64> = (0..n_max)
        .map(|ni| {
            // smallest terms first
            (0..m_max).rev().map(|mi| pow2f(mi + 1) * table[mi][ni] / (1.0 + table[mi][ni])).sum()
        })
        .collect();
    let window_max: Vec<f64> = table.iter().map(|row| row.iter().fold(0.0f64, |acc, v| acc.max(v + 1.0))).collect();

    let mut worst_margin = f64::INFINITY;
    let mut worst_pair = (1, 1);
    let mut violations = 0;
    for (mi, row) in table.iter().enumerate() {
        let scale = 2f64.powi(mi as i32 + 1) * window_max[mi];
        for (ni, &amn) in row.iter().enumerate() {
            let margin = scale * a[ni] - amn;
            if margin < -1e-9 {
                violations += 1;
            }
            if margin < worst_margin {
                worst_margin = margin;
                worst_pair = (mi + 1, ni + 1);
            }
        }
    }
    let mut monotone_from = n_max;
    while monotone_from > 1 && a[monotone_from - 2] >= a[monotone_from - 1] {
        monotone_from -= 1;
    }
    Ok(CombinedSequence {
        m_max,
        n_max,
        a,
        truncation_bound: 2f64.powi(-(m_max.min(1100) as i32)),
        window_max,
        worst_margin,
        worst_pair,
        violations,
        monotone_from,
    })
}

fn pow2f(m: usize) -> f64 {
    2f64.powi(-(m.min(1100) as i32))
}

/// `λ_n = ‖e_1 + .. + e_n‖` for `n = 1..=n_max`: the infimum of
/// `‖Σ_{γ∈A} e_γ‖` over `|A| >= n` for symmetric lattice-monotone engines.
pub fn lambda_sequence(engine: &dyn NormEngine, n_max: usize) -> Result<Vec<f64>> {
    if !engine.flags().symmetric_lattice() {
        return Err(Error::FlagsUnmet { engine: engine.name(), required: "symmetric, lattice-monotone".into() });
    }
    Ok((1..=n_max).into_par_iter().map(|n| engine.eval(&SparseVec::ones(n))).collect())
}
