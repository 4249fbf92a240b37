//! Seeded randomness for reproducible runs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

/// The per-run random source.
///
/// Every run owns exactly one `RandomSource`; the contract is that an
/// identical seed plus an identical call sequence yields an identical
/// sample stream, so whole runs replay bit-for-bit. Backed by ChaCha8,
/// which is seed-stable across platforms. Gaussian samples come from the
/// `rand_distr` ziggurat implementation, which is likewise deterministic
/// given the underlying stream.
#[derive(Debug, Clone)]
pub struct RandomSource {
    seed: u64,
    rng: ChaCha8Rng,
}

impl RandomSource {
    pub fn new(seed: u64) -> Self {
        Self {
            seed,
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// The seed this source was created with.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Uniform sample on `[0, 1)`.
    pub fn uniform_01(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    /// Uniform sample on `[-1, 1)`.
    pub fn uniform_sym(&mut self) -> f64 {
        2.0 * self.rng.gen::<f64>() - 1.0
    }

    /// Standard Gaussian sample.
    pub fn gaussian(&mut self) -> f64 {
        self.rng.sample(StandardNormal)
    }

    /// Uniform integer in `0..n`.
    pub fn index(&mut self, n: usize) -> usize {
        debug_assert!(n > 0);
        self.rng.gen_range(0..n)
    }

    /// Uniform sample on `[lo, hi)`.
    pub fn uniform_in(&mut self, lo: f64, hi: f64) -> f64 {
        lo + (hi - lo) * self.uniform_01()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identical_seed_identical_stream() {
        let mut a = RandomSource::new(99);
        let mut b = RandomSource::new(99);
        for _ in 0..1000 {
            assert_eq!(a.uniform_01(), b.uniform_01());
            assert_eq!(a.gaussian(), b.gaussian());
            assert_eq!(a.index(17), b.index(17));
        }
    }

    #[test]
    fn different_seeds_diverge() {
        let mut a = RandomSource::new(1);
        let mut b = RandomSource::new(2);
        let xs: Vec<f64> = (0..16).map(|_| a.uniform_01()).collect();
        let ys: Vec<f64> = (0..16).map(|_| b.uniform_01()).collect();
        assert_ne!(xs, ys);
    }

    #[test]
    fn gaussian_moments_sane() {
        // mean/variance sanity over 1e5 draws
        let mut rng = RandomSource::new(42);
        let n = 100_000;
        let draws: Vec<f64> = (0..n).map(|_| rng.gaussian()).collect();
        let mean = draws.iter().sum::<f64>() / n as f64;
        let var = draws.iter().map(|g| (g - mean) * (g - mean)).sum::<f64>() / (n - 1) as f64;
        assert!(mean.abs() <= 0.02, "gaussian mean {mean}");
        assert!((var - 1.0).abs() <= 0.05, "gaussian var {var}");
    }

    #[test]
    fn uniform_sym_range() {
        let mut rng = RandomSource::new(5);
        for _ in 0..10_000 {
            let v = rng.uniform_sym();
            assert!((-1.0..1.0).contains(&v));
        }
    }
}
