//! The non-symmetric `c0` renorming built from block weights.
//!
//! Weights `q_j = 2^{-k}/|H_k|` live on consecutive index blocks `H_k`, and
//! the norm is the supremum of `±e*_j` and of the functionals
//! `2 Σ_{j∈L} s_j q_j e*_j` over admissible index sets `L`. For a vector
//! supported inside the stored blocks the supremum is attained at the block
//! union itself, so [`BlockWeightNorm::eval`] is exact there and a lower bound
//! elsewhere.

use std::fmt::Write as _;

use num_traits::Zero;

use super::{NormEngine, NormFlags};
use crate::error::{Error, Result};
use crate::exact::{int, pow2, Exact};
use crate::seqvec::SparseVec;

/// One block `H_k = {start, .., start + size - 1}` at level `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub level: u32,
    pub size: usize,
    pub start: usize,
}

impl Block {
    pub fn end(&self) -> usize {
        self.start + self.size - 1
    }

    pub fn contains(&self, j: usize) -> bool {
        self.start <= j && j <= self.end()
    }

    pub fn q(&self) -> f64 {
        2f64.powi(-(self.level as i32)) / self.size as f64
    }

    pub fn q_exact(&self) -> Exact {
        pow2(-(self.level as i64)) / int(self.size as i64)
    }
}

/// Ordered blocks with strictly increasing levels, disjoint increasing index
/// ranges, and weights non-increasing along the union.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockWeights {
    blocks: Vec<Block>,
}

impl BlockWeights {
    pub fn new(blocks: Vec<Block>) -> Result<Self> {
        for (i, b) in blocks.iter().enumerate() {
            if b.level == 0 || b.size == 0 || b.start == 0 {
                return Err(Error::InvalidBlocks(format!("block {}: level, size and start must be positive", i + 1)));
            }
            if b.level > 1000 {
                return Err(Error::InvalidBlocks(format!("block {}: level {} is too deep", i + 1, b.level)));
            }
        }
        for (i, w) in blocks.windows(2).enumerate() {
            let (a, b) = (&w[0], &w[1]);
            if b.level <= a.level {
                return Err(Error::InvalidBlocks(format!("block {}: levels must increase", i + 2)));
            }
            if b.start <= a.end() {
                return Err(Error::InvalidBlocks(format!("block {}: max H_k must be below min H_(k+1)", i + 2)));
            }
            if b.q_exact() > a.q_exact() {
                return Err(Error::InvalidBlocks(format!(
                    "block {}: weights must not increase along the blocks",
                    i + 2
                )));
            }
        }
        Ok(Self { blocks })
    }

    /// Parses lines `k |H_k| min_index`, `#` comments allowed.
    pub fn parse(text: &str) -> Result<Self> {
        let mut blocks = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let body = raw.split('#').next().unwrap_or("").trim();
            if body.is_empty() {
                continue;
            }
            let err = |message: String| Error::Parse { line: lineno + 1, message };
            let fields: Vec<&str> = body.split_whitespace().collect();
            if fields.len() != 3 {
                return Err(err(format!("expected `k size min_index`, got `{body}`")));
            }
            let num = |s: &str| s.parse::<usize>().map_err(|_| err(format!("bad integer `{s}`")));
            let level = u32::try_from(num(fields[0])?).map_err(|_| err("level out of range".into()))?;
            blocks.push(Block { level, size: num(fields[1])?, start: num(fields[2])? });
        }
        Self::new(blocks)
    }

    pub fn format(&self) -> String {
        let mut out = String::from("# k |H_k| min_index\n");
        for b in &self.blocks {
            let _ = writeln!(out, "{} {} {}", b.level, b.size, b.start);
        }
        out
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    /// The block holding index `j`.
    pub fn block_of(&self, j: usize) -> Option<&Block> {
        let pos = self.blocks.partition_point(|b| b.end() < j);
        self.blocks.get(pos).filter(|b| b.contains(j))
    }

    pub fn q(&self, j: usize) -> Option<f64> {
        self.block_of(j).map(Block::q)
    }

    pub fn q_exact(&self, j: usize) -> Option<Exact> {
        self.block_of(j).map(Block::q_exact)
    }

    /// Total number of block members `|L|`.
    pub fn member_count(&self) -> usize {
        self.blocks.iter().map(|b| b.size).sum()
    }

    /// `Σ_k 2^{-k}` over the stored levels, which equals `Σ_{j∈L} q_j`.
    pub fn level_mass(&self) -> Exact {
        self.blocks.iter().fold(Exact::zero(), |acc, b| acc + pow2(-(b.level as i64)))
    }

    /// Members of `L` in increasing order.
    pub fn members(&self) -> impl Iterator<Item = usize> + '_ {
        self.blocks.iter().flat_map(|b| b.start..=b.end())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BlockNormMode {
    /// Requires the attainment hypotheses and returns the exact norm.
    Certified,
    /// Maximizes over the coordinate functionals and the prefix sets of `L`.
    LowerBound,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BlockNormValue {
    pub value: f64,
    /// `false` means "lower bound only".
    pub certified: bool,
}

/// Evaluates the block-weight norm in the requested mode.
///
/// Certified mode needs `|x|` non-increasing on its support, the support
/// inside the blocks, and `‖x‖∞ < 2 Σ q_j |x(j)|`; it then returns that sum.
pub fn blockweight_norm(w: &BlockWeights, x: &SparseVec, mode: BlockNormMode) -> Result<BlockNormValue> {
    match mode {
        BlockNormMode::Certified => {
            let mut weighted = 0.0;
            for (j, v) in x.iter() {
                let q = w.q(j).ok_or_else(|| Error::Hypothesis(format!("index {j} lies outside the stored blocks")))?;
                weighted += q * v.abs();
            }
            if let Some(pair) = x.values().collect::<Vec<_>>().windows(2).find(|p| p[1].abs() > p[0].abs()) {
                return Err(Error::Hypothesis(format!(
                    "|x| is not non-increasing on its support ({} then {})",
                    pair[0].abs(),
                    pair[1].abs()
                )));
            }
            let sup = x.sup_norm();
            if !(sup < 2.0 * weighted) {
                return Err(Error::Hypothesis(format!("sup norm {sup} is not below 2 Σ q|x| = {}", 2.0 * weighted)));
            }
            Ok(BlockNormValue { value: 2.0 * weighted, certified: true })
        }
        BlockNormMode::LowerBound => {
            // prefix sets L_n of the stored union, walked in index order
            let mut partial = 0.0;
            let mut best: f64 = 0.0;
            for (j, v) in x.iter() {
                if let Some(q) = w.q(j) {
                    partial += q * v.abs();
                    best = best.max(partial);
                }
            }
            Ok(BlockNormValue { value: x.sup_norm().max(2.0 * best), certified: false })
        }
    }
}

#[derive(Debug, Clone)]
pub struct BlockWeightNorm {
    label: String,
    weights: BlockWeights,
}

impl BlockWeightNorm {
    pub fn new(label: impl Into<String>, weights: BlockWeights) -> Self {
        Self { label: label.into(), weights }
    }

    pub fn weights(&self) -> &BlockWeights {
        &self.weights
    }

    /// `sup_{|A|<=n} ‖P_A x‖` for `x` supported inside the blocks:
    /// `max(‖x‖∞, 2 × (sum of the n largest q_j|x(j)|))` once `n >= 1`.
    pub fn subset_sup(&self, x: &SparseVec, n: usize) -> Result<f64> {
        if n == 0 || x.is_zero() {
            return Ok(0.0);
        }
        let mut terms = Vec::with_capacity(x.len());
        for (j, v) in x.iter() {
            let q = self
                .weights
                .q(j)
                .ok_or_else(|| Error::Hypothesis(format!("index {j} lies outside the stored blocks")))?;
            terms.push(q * v.abs());
        }
        terms.sort_by(|a, b| b.total_cmp(a));
        let top: f64 = terms.iter().take(n).rev().sum();
        Ok(x.sup_norm().max(2.0 * top))
    }

    /// Exact norm of a vector with exact coordinates supported in the blocks.
    pub fn eval_exact(&self, x: &[(usize, Exact)]) -> Result<Exact> {
        let mut sup = Exact::zero();
        let mut weighted = Exact::zero();
        for (j, v) in x {
            let q = self
                .weights
                .q_exact(*j)
                .ok_or_else(|| Error::Hypothesis(format!("index {j} lies outside the stored blocks")))?;
            let a = if *v < Exact::zero() { -v.clone() } else { v.clone() };
            weighted += q * &a;
            if a > sup {
                sup = a;
            }
        }
        let doubled = int(2) * weighted;
        Ok(if doubled > sup { doubled } else { sup })
    }
}

impl NormEngine for BlockWeightNorm {
    fn name(&self) -> String {
        format!("blockweight:{}", self.label)
    }

    fn eval(&self, x: &SparseVec) -> f64 {
        blockweight_norm(&self.weights, x, BlockNormMode::LowerBound)
            .map(|v| v.value)
            .expect("lower-bound mode is infallible")
    }

    fn flags(&self) -> NormFlags {
        NormFlags { symmetric: false, one_unconditional: true, lattice_monotone: true }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    fn singletons(levels: u32) -> BlockWeights {
        BlockWeights::new((1..=levels).map(|k| Block { level: k, size: 1, start: k as usize }).collect()).unwrap()
    }

    #[test]
    fn single_block_example() {
        let w = BlockWeights::new(vec![Block { level: 1, size: 1, start: 4 }]).unwrap();
        let x = SparseVec::from_pairs([(4, 1.0)]).unwrap();
        let lb = blockweight_norm(&w, &x, BlockNormMode::LowerBound).unwrap();
        assert_eq!(lb, BlockNormValue { value: 1.0, certified: false });
        // 2 q x = 1 is not strictly above the sup norm
        assert!(blockweight_norm(&w, &x, BlockNormMode::Certified).is_err());
    }

    #[test]
    fn truncated_singleton_witness() {
        let w = singletons(6);
        let x = SparseVec::from_pairs((1..=6).map(|k| (k, 1.5 * 2f64.powi(-(k as i32))))).unwrap();
        let cert = blockweight_norm(&w, &x, BlockNormMode::Certified).unwrap();
        let direct: f64 = (1..=6).map(|k| 3.0 * 4f64.powi(-k)).sum();
        assert!((cert.value - direct).abs() < 1e-15);
        assert!(cert.certified);
        let lb = blockweight_norm(&w, &x, BlockNormMode::LowerBound).unwrap();
        assert_eq!(lb.value, cert.value);
    }

    #[test]
    fn certified_mode_names_the_failed_hypothesis() {
        let w = singletons(3);
        let outside = SparseVec::from_pairs([(1, 0.75), (9, 0.1)]).unwrap();
        let increasing = SparseVec::from_pairs([(1, 0.1), (2, 0.5)]).unwrap();
        let e = |x: &SparseVec| match blockweight_norm(&w, x, BlockNormMode::Certified) {
            Err(Error::Hypothesis(m)) => m,
            other => panic!("unexpected {other:?}"),
        };
        assert!(e(&outside).contains("outside"));
        assert!(e(&increasing).contains("non-increasing"));
    }

    #[test]
    fn validation_and_text_format() {
        let w = BlockWeights::parse("# k size start\n1 1 1\n2 2 2\n3 4 4 # tail\n").unwrap();
        assert_eq!(w.member_count(), 7);
        assert_eq!(w.q_exact(5), Some(ratio(1, 32)));
        assert_eq!(w.q(10), None);
        assert_eq!(BlockWeights::parse(&w.format()).unwrap(), w);
        assert_eq!(w.level_mass(), ratio(7, 8));

        assert!(BlockWeights::parse("1 1 1\n1 1 2\n").is_err());
        assert!(BlockWeights::parse("1 2 1\n2 1 2\n").is_err());
        // q would increase: 2^-1/4 < 2^-2/1
        assert!(BlockWeights::parse("1 4 1\n2 1 5\n").is_err());
        assert!(matches!(BlockWeights::parse("1 1\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn block_lookup() {
        let w = BlockWeights::parse("1 2 3\n2 3 10\n").unwrap();
        assert_eq!(w.block_of(4).map(|b| b.level), Some(1));
        assert_eq!(w.block_of(12).map(|b| b.level), Some(2));
        assert!(w.block_of(5).is_none());
        assert!(w.block_of(13).is_none());
        assert_eq!(w.members().collect::<Vec<_>>(), vec![3, 4, 10, 11, 12]);
    }

    #[test]
    fn subset_sup_takes_largest_weighted_terms() {
        let engine = BlockWeightNorm::new("s", singletons(4));
        let x = SparseVec::from_pairs((1..=4).map(|k| (k, 1.5 * 2f64.powi(-(k as i32))))).unwrap();
        // 2 (3/8 + 3/32)
        assert!((engine.subset_sup(&x, 2).unwrap() - 0.9375).abs() < 1e-15);
        assert_eq!(engine.subset_sup(&x, 1).unwrap(), 0.75);
        assert_eq!(engine.subset_sup(&x, 0).unwrap(), 0.0);
        assert_eq!(engine.eval_exact(&[(1, ratio(3, 4))]).unwrap(), ratio(3, 4));
    }
}
