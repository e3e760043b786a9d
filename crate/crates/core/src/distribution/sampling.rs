use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::stats::{summarize, HistogramSpec, LightCone, TimeDistribution};
use super::transform::cdf_of_times;
use super::{ClockCurve, DistributionError, SpectralDensity};

/// Samples per independent RNG stream. Chunk `c` draws from ChaCha8 stream
/// `c` keyed by the master seed, so results do not depend on thread count.
pub const SAMPLE_CHUNK: usize = 1 << 16;

pub const RNG_ALGORITHM: &str =
    "ChaCha8 (rand_chacha), seed_from_u64(seed), stream = chunk index, 65536 draws per chunk";

/// Sub-nodes per density-grid interval in the inverse-CDF table.
const REFINEMENT: usize = 16;

/// Tabulated cumulative of a [`SpectralDensity`] on a grid 16x denser than
/// the density grid, inverted by linear interpolation.
#[derive(Debug, Clone)]
pub struct InverseCdf {
    k: Vec<f64>,
    cdf: Vec<f64>,
}

impl InverseCdf {
    pub fn new(rho: &SpectralDensity) -> Self {
        let grid = rho.grid();
        let mut k = Vec::with_capacity((grid.len() - 1) * REFINEMENT + 1);
        for w in grid.windows(2) {
            let h = (w[1] - w[0]) / REFINEMENT as f64;
            k.extend((0..REFINEMENT).map(|j| w[0] + h * j as f64));
        }
        k.push(grid[grid.len() - 1]);
        let cdf = k.iter().map(|&x| rho.cumulative_at(x)).collect();
        Self { k, cdf }
    }

    /// Wave number with cumulative probability `u` in `[0, 1)`.
    pub fn quantile(&self, u: f64) -> f64 {
        let j = self
            .cdf
            .partition_point(|&c| c <= u)
            .clamp(1, self.cdf.len() - 1);
        let (c0, c1) = (self.cdf[j - 1], self.cdf[j]);
        let (k0, k1) = (self.k[j - 1], self.k[j]);
        if c1 > c0 {
            k0 + (u - c0) / (c1 - c0) * (k1 - k0)
        } else {
            k0
        }
    }
}

/// `n` wave numbers drawn from `rho`, bit-identical for a fixed seed.
pub fn sample_k(rho: &SpectralDensity, n: usize, seed: u64) -> Vec<f64> {
    let inv = InverseCdf::new(rho);
    let chunks = n.div_ceil(SAMPLE_CHUNK);
    let parts: Vec<Vec<f64>> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(c as u64);
            let len = SAMPLE_CHUNK.min(n - c * SAMPLE_CHUNK);
            (0..len)
                .map(|_| inv.quantile(rng.random::<f64>()))
                .collect()
        })
        .collect();
    parts.concat()
}

/// Monte Carlo distribution of clock readings: draw `k ~ rho`, map through
/// the clock curve, then histogram and summarize. The exact superluminal
/// probability is attached from the deterministic CDF.
pub fn sample_times(
    rho: &SpectralDensity,
    clock: &ClockCurve,
    n: usize,
    seed: u64,
    light: LightCone,
    bins: &HistogramSpec,
) -> Result<TimeDistribution, DistributionError> {
    if n == 0 {
        return Err(DistributionError::Empty);
    }
    let ks = sample_k(rho, n, seed);
    let samples: Vec<f64> = ks.par_iter().map(|&k| clock.eval(k)).collect();
    if let Some(i) = samples.iter().position(|t| !t.is_finite()) {
        return Err(DistributionError::NonFiniteClock(ks[i]));
    }
    let stats = summarize(&samples, light, bins)?;
    let exact = cdf_of_times(light.light_time(), rho, clock)?;
    Ok(TimeDistribution {
        samples,
        stats,
        light,
        superluminal_prob_exact: Some(exact),
        seed,
        n_samples: n,
        rng_algorithm: RNG_ALGORITHM,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Interval;

    fn density() -> SpectralDensity {
        let grid: Vec<f64> = (0..400).map(|i| 1.0 + i as f64 / 399.0).collect();
        let d = grid
            .iter()
            .map(|k| (-30.0 * (k - 1.4f64).powi(2)).exp())
            .collect();
        SpectralDensity::from_table(grid, d, Interval::new(1.0, 2.0).unwrap()).unwrap()
    }

    #[test]
    fn quantile_inverts_cumulative() {
        let rho = density();
        let inv = InverseCdf::new(&rho);
        for u in [0.001, 0.1, 0.5, 0.9, 0.999] {
            let k = inv.quantile(u);
            assert!((rho.cumulative_at(k) - u).abs() < 1e-6, "u = {u}");
        }
    }

    #[test]
    fn seeded_draws_are_reproducible() {
        let rho = density();
        let a = sample_k(&rho, 150_000, 42);
        let b = sample_k(&rho, 150_000, 42);
        assert_eq!(a.len(), 150_000);
        assert!(a.iter().zip(&b).all(|(x, y)| x.to_bits() == y.to_bits()));
        let c = sample_k(&rho, 150_000, 43);
        assert_ne!(a, c);
    }

    #[test]
    fn prefix_is_stable_under_length_change() {
        let rho = density();
        let a = sample_k(&rho, 70_000, 9);
        let b = sample_k(&rho, 140_000, 9);
        assert_eq!(&a[..], &b[..70_000]);
    }

    #[test]
    fn thread_count_does_not_change_samples() {
        let rho = density();
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(1)
            .build()
            .unwrap();
        let serial = pool.install(|| sample_k(&rho, 200_000, 5));
        let parallel = sample_k(&rho, 200_000, 5);
        assert_eq!(serial, parallel);
    }

    #[test]
    fn zero_samples_rejected() {
        let rho = density();
        let clock = ClockCurve::constant(1.0);
        let light = LightCone::new(1.0);
        assert!(sample_times(&rho, &clock, 0, 1, light, &HistogramSpec::new(0.1)).is_err());
    }
}
