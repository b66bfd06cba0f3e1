//! Seeded random test vectors for the randomized property checks.

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::VertexId;
use crate::space::SparseVector;

/// Largest support drawn by [`random_sparse_vector`].
pub const MAX_RANDOM_SUPPORT: usize = 16;

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A vector supported on at most `max_support` distinct vertices of `pool`,
/// coefficients uniform in `[-1, 1]`. Never the zero vector unless `pool`
/// is empty.
pub fn random_sparse_vector<R: Rng + ?Sized>(
    rng: &mut R,
    pool: &[VertexId],
    max_support: usize,
) -> SparseVector {
    if pool.is_empty() || max_support == 0 {
        return SparseVector::zero();
    }
    let size = rng.random_range(1..=max_support.min(pool.len()));
    loop {
        let v: SparseVector = index::sample(rng, pool.len(), size)
            .into_iter()
            .map(|p| (pool[p], rng.random_range(-1.0..=1.0)))
            .collect();
        if !v.is_zero() {
            return v;
        }
    }
}
