//! Box-Muller Gaussian deviates over a seedable uniform stream.
//!
//! The uniform stream is ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64`; each uniform is the top 53 bits of one 64-bit output
//! scaled to `[0, 1)`. Both are fixed by the `rand` 0.8 / `rand_chacha` 0.3
//! stability guarantees, so a seed reproduces the same deviates everywhere.

use std::f64::consts::PI;
use std::time::{SystemTime, UNIX_EPOCH};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Source of uniforms in `[0, 1)`.
pub trait UniformSource {
    fn next_uniform(&mut self) -> f64;
}

impl UniformSource for ChaCha8Rng {
    fn next_uniform(&mut self) -> f64 {
        self.gen::<f64>()
    }
}

/// `mu + sigma * sqrt(-2 ln s) * cos(2 pi t)`.
pub fn box_muller(mu: f64, sigma: f64, s: f64, t: f64) -> f64 {
    mu + sigma * (-2.0 * s.ln()).sqrt() * (2.0 * PI * t).cos()
}

/// One deviate; a zero `s` is redrawn.
pub fn gaussian_deviate<U: UniformSource + ?Sized>(mu: f64, sigma: f64, source: &mut U) -> f64 {
    let s = loop {
        let s = source.next_uniform();
        if s > 0.0 {
            break s;
        }
    };
    let t = source.next_uniform();
    box_muller(mu, sigma, s, t)
}

/// A Gaussian stream with fixed mean and standard deviation.
#[derive(Debug, Clone)]
pub struct NoiseState {
    pub mu: f64,
    pub sigma: f64,
    pub seed: u64,
    rng: ChaCha8Rng,
}

impl NoiseState {
    pub fn new(mu: f64, sigma: f64, seed: u64) -> Self {
        Self { mu, sigma, seed, rng: ChaCha8Rng::seed_from_u64(seed) }
    }

    /// Seeded from the current time, as the original program did.
    pub fn from_wall_clock(mu: f64, sigma: f64) -> Self {
        Self::new(mu, sigma, wall_clock_seed())
    }

    pub fn deviate(&mut self) -> f64 {
        gaussian_deviate(self.mu, self.sigma, &mut self.rng)
    }
}

/// Nanoseconds since the Unix epoch, truncated to 64 bits.
pub fn wall_clock_seed() -> u64 {
    SystemTime::now().duration_since(UNIX_EPOCH).map(|d| d.as_nanos() as u64).unwrap_or(0)
}
