use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::seqvec::SparseVec;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `support` distinct indices from `1..=max_index.max(support)`, values
/// uniform in `[-scale, scale] \ {0}`.
pub fn random_vector<R: Rng>(rng: &mut R, support: usize, max_index: usize, scale: f64) -> SparseVec {
    let range = max_index.max(support);
    let mut pairs: Vec<(usize, f64)> = sample(rng, range, support)
        .into_iter()
        .map(|i| {
            let mut v = 0.0;
            while v == 0.0 {
                v = rng.gen_range(-scale..=scale);
            }
            (i + 1, v)
        })
        .collect();
    pairs.sort_by_key(|p| p.0);
    SparseVec::from_pairs(pairs).expect("distinct positive indices and finite values")
}
