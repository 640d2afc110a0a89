use crate::decomp::ASequence;
use crate::error::{Error, Result};

/// Largest window searched by default.
pub const MAX_DEFAULT_WINDOW: usize = 1 << 24;

/// The window `[a_1, .., a_W]` the block positions are chosen from: `W` is
/// `requested`, else every value of a file sequence, else twice the first
/// `n` with `a_n <= 8^-K` (capped at [`MAX_DEFAULT_WINDOW`]).
pub fn block_window(a: &ASequence, levels: usize, requested: Option<usize>) -> Result<Vec<f64>> {
    let w = match (requested, a.available()) {
        (Some(w), _) => w,
        (None, Some(len)) => len,
        (None, None) => {
            let target = 8f64.powi(-(levels as i32));
            let first = (1..=MAX_DEFAULT_WINDOW).find(|&n| a.get(n).is_some_and(|v| v <= target));
            first.map_or(MAX_DEFAULT_WINDOW, |n| (2 * n).min(MAX_DEFAULT_WINDOW))
        }
    };
    a.window(w)
}

/// Positions `n_1 < .. < n_K` with `a_n <= 8^-k` for every window `n >= n_k`,
/// each as small as possible. With `growing`, block lengths `n_k - n_{k-1}`
/// (where `n_0 = 0`) are also kept non-decreasing.
pub fn block_positions(window: &[f64], levels: usize, growing: bool) -> Result<Vec<usize>> {
    if levels == 0 || levels > 300 {
        return Err(Error::Precondition(format!("block count must be in 1..=300, got {levels}")));
    }
    let w = window.len();
    let mut suffix_max = vec![0.0f64; w + 1];
    for n in (0..w).rev() {
        suffix_max[n] = suffix_max[n + 1].max(window[n]);
    }
    let mut positions: Vec<usize> = Vec::with_capacity(levels);
    for k in 1..=levels {
        let threshold = 8f64.powi(-(k as i32));
        // first 1-based n with sup_{j>=n} a_j <= 8^-k
        let first = suffix_max[..w].partition_point(|&m| m > threshold) + 1;
        let prev = positions.last().copied().unwrap_or(0);
        let before = if positions.len() >= 2 { positions[positions.len() - 2] } else { 0 };
        let mut n_k = first.max(prev + 1);
        if growing {
            n_k = n_k.max(2 * prev - before);
        }
        if n_k > w {
            return Err(Error::Precondition(format!(
                "window of {w} terms is too short to place {levels} blocks (level {k} needs n >= {n_k})"
            )));
        }
        positions.push(n_k);
    }
    Ok(positions)
}
