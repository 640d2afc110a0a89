//! Finite-support coordinate vectors over the positive integers.
//!
//! A [`SparseVec`] stores its nonzero coordinates sorted by index. All the
//! coordinate projections used by the norm engines and the decomposition
//! checks live here: restriction to an [`IndexSet`], its complement, the
//! prefix projection onto `{1..n}`, and the greedy set `A_n(x)` of the `n`
//! largest moduli.

mod rearrange;
mod text;

pub use rearrange::{rearrangement_dot, sorted_desc};
pub use text::{format_vector, parse_vector};

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A finite set of positive indices.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IndexSet(BTreeSet<usize>);

impl IndexSet {
    pub fn new() -> Self {
        Self(BTreeSet::new())
    }

    /// `{1, .., n}`.
    pub fn prefix(n: usize) -> Self {
        Self((1..=n).collect())
    }

    pub fn insert(&mut self, index: usize) -> Result<bool> {
        if index == 0 {
            return Err(Error::InvalidIndex(index));
        }
        Ok(self.0.insert(index))
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0.contains(&index)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn max(&self) -> Option<usize> {
        self.0.last().copied()
    }

    pub fn min(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.0.is_subset(&other.0)
    }
}

impl FromIterator<usize> for IndexSet {
    /// Zero indices are silently dropped; use [`IndexSet::insert`] to reject them.
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Self(iter.into_iter().filter(|&i| i > 0).collect())
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
        }
        f.write_str("}")
    }
}

/// A real vector with finitely many nonzero coordinates, indexed from 1.
///
/// No stored coordinate is zero, so the stored indices are exactly the
/// support. Entries are kept sorted by index.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct SparseVec {
    entries: Vec<(usize, f64)>,
}

impl SparseVec {
    /// The zero vector.
    pub fn zero() -> Self {
        Self::default()
    }

    /// The unit vector `e_index`.
    pub fn unit(index: usize) -> Result<Self> {
        Self::from_pairs([(index, 1.0)])
    }

    /// Builds a vector from `(index, value)` pairs in any order. Zero values
    /// are dropped; a repeated index is an error.
    pub fn from_pairs<I: IntoIterator<Item = (usize, f64)>>(pairs: I) -> Result<Self> {
        let mut entries: Vec<(usize, f64)> = Vec::new();
        for (index, value) in pairs {
            if index == 0 {
                return Err(Error::InvalidIndex(index));
            }
            if !value.is_finite() {
                return Err(Error::NonFinite { index, value });
            }
            entries.push((index, value));
        }
        entries.sort_by_key(|&(i, _)| i);
        if let Some(w) = entries.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(Error::DuplicateIndex(w[0].0));
        }
        entries.retain(|&(_, v)| v != 0.0);
        Ok(Self { entries })
    }

    /// Coordinates `values[k]` placed at index `k + 1`.
    pub fn from_dense(values: &[f64]) -> Result<Self> {
        Self::from_pairs(values.iter().enumerate().map(|(k, &v)| (k + 1, v)))
    }

    /// Internal constructor for entries already sorted, distinct, finite and nonzero.
    fn from_sorted_unchecked(entries: Vec<(usize, f64)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|&(i, v)| i > 0 && v != 0.0 && v.is_finite()));
        Self { entries }
    }

    pub fn get(&self, index: usize) -> f64 {
        match self.entries.binary_search_by_key(&index, |&(i, _)| i) {
            Ok(pos) => self.entries[pos].1,
            Err(_) => 0.0,
        }
    }

    /// Number of nonzero coordinates.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl ExactSizeIterator<Item = (usize, f64)> + '_ {
        self.entries.iter().copied()
    }

    pub fn values(&self) -> impl ExactSizeIterator<Item = f64> + '_ {
        self.entries.iter().map(|&(_, v)| v)
    }

    pub fn support(&self) -> IndexSet {
        IndexSet(self.entries.iter().map(|&(i, _)| i).collect())
    }

    /// Support indices in increasing order.
    pub fn indices(&self) -> Vec<usize> {
        self.entries.iter().map(|&(i, _)| i).collect()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|&(i, _)| i)
    }

    /// `P_A x`: keeps the coordinates with index in `a`.
    pub fn project(&self, a: &IndexSet) -> SparseVec {
        Self::from_sorted_unchecked(self.entries.iter().copied().filter(|&(i, _)| a.contains(i)).collect())
    }

    /// `R_A x = x - P_A x`.
    pub fn remainder(&self, a: &IndexSet) -> SparseVec {
        Self::from_sorted_unchecked(self.entries.iter().copied().filter(|&(i, _)| !a.contains(i)).collect())
    }

    /// `P_n x`, the projection onto `{1..n}`.
    pub fn prefix(&self, n: usize) -> SparseVec {
        let end = self.entries.partition_point(|&(i, _)| i <= n);
        Self::from_sorted_unchecked(self.entries[..end].to_vec())
    }

    /// Projection onto the support positions selected by `mask` (bit `k`
    /// keeps the `k`-th support index in increasing order).
    pub fn project_mask(&self, mask: u64) -> SparseVec {
        Self::from_sorted_unchecked(
            self.entries.iter().enumerate().filter(|(k, _)| mask >> k & 1 == 1).map(|(_, &e)| e).collect(),
        )
    }

    /// The supremum norm; zero for the zero vector.
    pub fn sup_norm(&self) -> f64 {
        self.entries.iter().fold(0.0, |m, &(_, v)| m.max(v.abs()))
    }

    pub fn l1_norm(&self) -> f64 {
        self.entries.iter().map(|&(_, v)| v.abs()).sum()
    }

    /// Support indices ordered by decreasing modulus, ties broken by the
    /// smaller index. This is the enumeration `γ_1, γ_2, ..` behind `A_n(x)`.
    pub fn greedy_order(&self) -> Vec<usize> {
        let mut order: Vec<(usize, f64)> = self.entries.iter().map(|&(i, v)| (i, v.abs())).collect();
        order.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        order.into_iter().map(|(i, _)| i).collect()
    }

    /// `A_n(x)`: the `min(n, |supp x|)` indices carrying the largest moduli.
    pub fn greedy_support(&self, n: usize) -> IndexSet {
        self.greedy_order().into_iter().take(n).collect()
    }

    /// Moduli of the coordinates sorted non-increasingly.
    pub fn decreasing_rearrangement(&self) -> Vec<f64> {
        sorted_desc(self.entries.iter().map(|&(_, v)| v.abs()))
    }

    pub fn scale(&self, t: f64) -> SparseVec {
        if t == 0.0 {
            return Self::zero();
        }
        Self::from_sorted_unchecked(self.entries.iter().map(|&(i, v)| (i, v * t)).collect())
    }

    /// Coordinatewise absolute value.
    pub fn abs(&self) -> SparseVec {
        Self::from_sorted_unchecked(self.entries.iter().map(|&(i, v)| (i, v.abs())).collect())
    }

    /// Multiplies the `k`-th support coordinate by `-1` whenever bit `k` of
    /// `pattern` is set.
    pub fn flip_signs(&self, pattern: u64) -> SparseVec {
        Self::from_sorted_unchecked(
            self.entries
                .iter()
                .enumerate()
                .map(|(k, &(i, v))| if pattern >> k & 1 == 1 { (i, -v) } else { (i, v) })
                .collect(),
        )
    }

    /// Applies `f` to every stored coordinate, dropping results that are zero.
    pub fn map_values<F: FnMut(usize, f64) -> f64>(&self, mut f: F) -> SparseVec {
        Self::from_sorted_unchecked(
            self.entries.iter().map(|&(i, v)| (i, f(i, v))).filter(|&(_, v)| v != 0.0).collect(),
        )
    }

    pub fn add(&self, other: &SparseVec) -> SparseVec {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut a, mut b) = (self.entries.iter().peekable(), other.entries.iter().peekable());
        loop {
            match (a.peek(), b.peek()) {
                (Some(&&(i, u)), Some(&&(j, w))) => {
                    if i < j {
                        out.push((i, u));
                        a.next();
                    } else if j < i {
                        out.push((j, w));
                        b.next();
                    } else {
                        let s = u + w;
                        if s != 0.0 {
                            out.push((i, s));
                        }
                        a.next();
                        b.next();
                    }
                }
                (Some(&&e), None) => {
                    out.push(e);
                    a.next();
                }
                (None, Some(&&e)) => {
                    out.push(e);
                    b.next();
                }
                (None, None) => break,
            }
        }
        Self::from_sorted_unchecked(out)
    }

    pub fn sub(&self, other: &SparseVec) -> SparseVec {
        self.add(&other.scale(-1.0))
    }

    /// Pairing with a finite-support functional given in coordinates.
    pub fn dot(&self, other: &SparseVec) -> f64 {
        let mut s = 0.0;
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (i, u) = self.entries[a];
            let (j, w) = other.entries[b];
            match i.cmp(&j) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    s += u * w;
                    a += 1;
                    b += 1;
                }
            }
        }
        s
    }

    /// `Σ_{k≤n} e_k`.
    pub fn ones(n: usize) -> SparseVec {
        Self::from_sorted_unchecked((1..=n).map(|i| (i, 1.0)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(pairs: &[(usize, f64)]) -> SparseVec {
        SparseVec::from_pairs(pairs.iter().copied()).unwrap()
    }

    fn set(items: &[usize]) -> IndexSet {
        items.iter().copied().collect()
    }

    #[test]
    fn project_examples() {
        assert_eq!(v(&[(1, 2.0), (3, 5.0)]).project(&set(&[3])), v(&[(3, 5.0)]));
        assert!(v(&[(1, 2.0)]).project(&set(&[])).is_zero());
        let x = v(&[(1, 1.0), (2, 1.0), (3, 1.0)]);
        assert_eq!(x.project(&set(&[1, 2, 3, 9])), x);
    }

    #[test]
    fn remainder_examples() {
        assert_eq!(v(&[(1, 2.0), (3, 5.0)]).remainder(&set(&[3])), v(&[(1, 2.0)]));
        assert!(v(&[(1, 2.0)]).remainder(&set(&[1])).is_zero());
        let x = v(&[(1, 1.0), (2, -1.0)]);
        assert_eq!(x.remainder(&set(&[])), x);
    }

    #[test]
    fn prefix_examples() {
        assert_eq!(v(&[(1, 1.0), (5, 2.0)]).prefix(3), v(&[(1, 1.0)]));
        assert!(v(&[(1, 1.0)]).prefix(0).is_zero());
        assert_eq!(v(&[(2, 7.0)]).prefix(2), v(&[(2, 7.0)]));
    }

    #[test]
    fn sup_norm_examples() {
        assert_eq!(v(&[(1, -3.0), (2, 2.0)]).sup_norm(), 3.0);
        assert_eq!(SparseVec::zero().sup_norm(), 0.0);
        assert_eq!(v(&[(7, 0.5)]).sup_norm(), 0.5);
    }

    #[test]
    fn greedy_support_examples() {
        assert_eq!(v(&[(1, 1.0), (2, 3.0), (5, 2.0)]).greedy_support(2), set(&[2, 5]));
        assert_eq!(v(&[(1, 1.0)]).greedy_support(5), set(&[1]));
        assert_eq!(v(&[(1, 2.0), (2, -2.0)]).greedy_support(1), set(&[1]));
    }

    #[test]
    fn decreasing_rearrangement_examples() {
        assert_eq!(v(&[(1, -3.0), (2, 1.0), (4, 2.0)]).decreasing_rearrangement(), vec![3.0, 2.0, 1.0]);
        assert!(SparseVec::zero().decreasing_rearrangement().is_empty());
        assert_eq!(v(&[(9, 0.5), (10, 0.5)]).decreasing_rearrangement(), vec![0.5, 0.5]);
    }

    #[test]
    fn zero_coordinates_are_not_stored() {
        let x = v(&[(1, 0.0), (2, 3.0)]);
        assert_eq!(x.len(), 1);
        assert_eq!(x.support(), set(&[2]));
        assert!(x.scale(0.0).is_zero());
        assert!(x.sub(&x).is_zero());
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(SparseVec::from_pairs([(0, 1.0)]), Err(Error::InvalidIndex(0)));
        assert_eq!(SparseVec::from_pairs([(2, 1.0), (2, 3.0)]), Err(Error::DuplicateIndex(2)));
        assert!(matches!(SparseVec::from_pairs([(1, f64::NAN)]), Err(Error::NonFinite { .. })));
        assert!(IndexSet::new().insert(0).is_err());
    }

    #[test]
    fn add_and_dot() {
        let x = v(&[(1, 1.0), (3, 2.0)]);
        let y = v(&[(2, 5.0), (3, -2.0)]);
        assert_eq!(x.add(&y), v(&[(1, 1.0), (2, 5.0)]));
        assert_eq!(x.dot(&y), -4.0);
    }

    #[test]
    fn masks_follow_support_order() {
        let x = v(&[(2, 1.0), (5, -2.0), (9, 3.0)]);
        assert_eq!(x.project_mask(0b101), v(&[(2, 1.0), (9, 3.0)]));
        assert_eq!(x.flip_signs(0b010), v(&[(2, 1.0), (5, 2.0), (9, 3.0)]));
    }
}
