//! Seeded sampling of small rationals for the verification suites.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::Q;

/// Deterministic generator used throughout; construct from an explicit seed.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Self { rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Derives an independent stream, e.g. one per suite case.
    pub fn fork(&mut self) -> Self {
        Self::new(self.rng.gen())
    }

    /// An integer in [−3, 3], halved one time in five.
    pub fn small_q(&mut self) -> Q {
        let n: i64 = self.rng.gen_range(-3..=3);
        let d: i64 = if self.rng.gen_ratio(1, 5) { 2 } else { 1 };
        Q::new(n.into(), d.into())
    }

    pub fn nonzero_q(&mut self) -> Q {
        loop {
            let q = self.small_q();
            if !q.is_zero() {
                return q;
            }
        }
    }

    pub fn small_int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    pub fn vector(&mut self, n: usize) -> Vec<Q> {
        (0..n).map(|_| self.small_q()).collect()
    }

    /// A vector with roughly `density` of its entries nonzero, never all zero.
    pub fn sparse_vector(&mut self, n: usize, density: f64) -> Vec<Q> {
        loop {
            let v: Vec<Q> =
                (0..n).map(|_| if self.rng.gen_bool(density) { self.small_q() } else { Q::zero() }).collect();
            if v.iter().any(|c| !c.is_zero()) {
                return v;
            }
        }
    }

    pub fn coin(&mut self) -> bool {
        self.rng.gen()
    }

    pub fn next_u64(&mut self) -> u64 {
        self.rng.gen()
    }
}
