use crate::error::{Error, Result};

/// Collects and sorts non-increasingly.
pub fn sorted_desc<I: IntoIterator<Item = f64>>(values: I) -> Vec<f64> {
    let mut v: Vec<f64> = values.into_iter().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

/// `Σ_k c_k d_{π(k)}` for non-increasing, non-negative `c` and `d` of equal
/// length. `perm` is 0-based: `perm[k]` is the position of `d` paired with
/// `c[k]`. The identity permutation maximizes this sum.
pub fn rearrangement_dot(c: &[f64], d: &[f64], perm: &[usize]) -> Result<f64> {
    if c.len() != d.len() {
        return Err(Error::LengthMismatch { left: c.len(), right: d.len() });
    }
    if perm.len() != c.len() {
        return Err(Error::LengthMismatch { left: c.len(), right: perm.len() });
    }
    for (position, &value) in c.iter().chain(d.iter()).enumerate() {
        if value < 0.0 {
            return Err(Error::NegativeEntry { position: position % c.len().max(1), value });
        }
    }
    let mut seen = vec![false; perm.len()];
    for &p in perm {
        if p >= perm.len() || std::mem::replace(&mut seen[p], true) {
            return Err(Error::InvalidPermutation(perm.len()));
        }
    }
    Ok(c.iter().zip(perm).map(|(&ck, &p)| ck * d[p]).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(rearrangement_dot(&[2.0, 1.0], &[3.0, 1.0], &[0, 1]).unwrap(), 7.0);
        assert_eq!(rearrangement_dot(&[2.0, 1.0], &[3.0, 1.0], &[1, 0]).unwrap(), 5.0);
        for perm in [[0, 1, 2], [2, 1, 0], [1, 2, 0]] {
            assert_eq!(rearrangement_dot(&[1.0; 3], &[3.0, 2.0, 1.0], &perm).unwrap(), 6.0);
        }
    }

    #[test]
    fn errors() {
        assert!(matches!(rearrangement_dot(&[1.0], &[1.0, 2.0], &[0]), Err(Error::LengthMismatch { .. })));
        assert!(matches!(rearrangement_dot(&[1.0, -1.0], &[1.0, 0.0], &[0, 1]), Err(Error::NegativeEntry { .. })));
        assert!(matches!(rearrangement_dot(&[1.0, 1.0], &[1.0, 0.0], &[0, 0]), Err(Error::InvalidPermutation(2))));
    }
}
