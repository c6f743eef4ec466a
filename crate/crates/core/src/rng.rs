//! Reproducible per-replica random streams.
//!
//! Every replica owns an independent ChaCha8 stream addressed by
//! `(master_seed, replica_index)`, so trajectories are bit-for-bit
//! reproducible regardless of how replicas are scheduled across workers.
//! Gaussian variates come from the polar Box-Muller transform on the stream's
//! own uniforms rather than from a platform RNG, for the same reason.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Debug, Clone)]
pub struct RngStream {
    rng: ChaCha8Rng,
    pub master_seed: u64,
    pub replica_index: u64,
    cached_normal: Option<f64>,
}

impl RngStream {
    pub fn new(master_seed: u64, replica_index: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
        rng.set_stream(replica_index);
        Self {
            rng,
            master_seed,
            replica_index,
            cached_normal: None,
        }
    }

    /// Uniform on `[0, 1)`.
    pub fn uniform(&mut self) -> f64 {
        self.rng.gen::<f64>()
    }

    /// Uniform on `(0, 1]`, safe to feed into `ln`.
    pub fn positive_uniform(&mut self) -> f64 {
        1.0 - self.rng.gen::<f64>()
    }

    /// Standard normal via the polar (Marsaglia) transform.
    pub fn normal(&mut self) -> f64 {
        if let Some(v) = self.cached_normal.take() {
            return v;
        }
        loop {
            let u = 2.0 * self.uniform() - 1.0;
            let v = 2.0 * self.uniform() - 1.0;
            let s = u * u + v * v;
            if s > 0.0 && s < 1.0 {
                let factor = (-2.0 * s.ln() / s).sqrt();
                self.cached_normal = Some(v * factor);
                return u * factor;
            }
        }
    }

    /// Exponential waiting time with the given rate.
    pub fn exponential(&mut self, rate: f64) -> f64 {
        debug_assert!(rate > 0.0);
        -self.positive_uniform().ln() / rate
    }

    /// Uniform integer in `[0, bound)`.
    pub fn below(&mut self, bound: usize) -> usize {
        self.rng.gen_range(0..bound)
    }
}
