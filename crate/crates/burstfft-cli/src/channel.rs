//! Burst channel and per-trial random streams.

use burstfft::decode::Burst;
use burstfft::{Elem, Field};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Where a burst starts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Start {
    Fixed(usize),
    /// Uniform over the non-wrapping starts 0..=n-ℓ.
    Random,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChannelConfig {
    pub burst_length: usize,
    pub start: Start,
    pub seed: u64,
}

/// RNG for trial `index`: ChaCha8 keyed by the seed, one stream per trial,
/// so results do not depend on scheduling.
pub fn trial_rng(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

pub fn random_elem<R: Rng>(f: &Field, rng: &mut R) -> Elem {
    rng.random_range(0..f.order()) as Elem
}

pub fn random_nonzero<R: Rng>(f: &Field, rng: &mut R) -> Elem {
    rng.random_range(1..f.order()) as Elem
}

pub fn random_vector<R: Rng>(f: &Field, len: usize, rng: &mut R) -> Vec<Elem> {
    (0..len).map(|_| random_elem(f, rng)).collect()
}

impl ChannelConfig {
    /// An ℓ-burst whose first and last entries are nonzero. Interior
    /// entries are uniform. ℓ = 0 gives the empty burst.
    pub fn sample<R: Rng>(&self, f: &Field, n: usize, rng: &mut R) -> anyhow::Result<Burst> {
        let ell = self.burst_length;
        anyhow::ensure!(ell <= n, "burst length {ell} exceeds n = {n}");
        let start = match self.start {
            Start::Fixed(s) => {
                anyhow::ensure!(s + ell <= n, "burst [{s}, {}) runs past n = {n}", s + ell);
                s
            }
            Start::Random => rng.random_range(0..=n - ell),
        };
        let values = (0..ell)
            .map(|i| if i == 0 || i + 1 == ell { random_nonzero(f, rng) } else { random_elem(f, rng) })
            .collect();
        Ok(Burst { start, values })
    }
}

/// Wilson score interval for `hits` successes out of `n` at normal quantile `z`.
pub fn wilson(hits: u64, n: u64, z: f64) -> (f64, f64) {
    if n == 0 {
        return (0.0, 1.0);
    }
    let n = n as f64;
    let p = hits as f64 / n;
    let z2 = z * z;
    let denom = 1.0 + z2 / n;
    let centre = (p + z2 / (2.0 * n)) / denom;
    let half = z * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    ((centre - half).max(0.0), (centre + half).min(1.0))
}
