use super::DistributionError;

/// CODATA 2018 fine-structure constant.
pub const FINE_STRUCTURE: f64 = 7.297_352_569_3e-3;

/// Speed of light in Rydberg atomic units (`hbar = 2m = 1`): `c = 2 / alpha`.
pub const SPEED_OF_LIGHT_AU: f64 = 2.0 / FINE_STRUCTURE;

/// Rydberg time unit `hbar / Ry` in attoseconds (twice the Hartree unit,
/// CODATA 2018: 24.188843265857 as).
pub const ATTOSECONDS_PER_AU: f64 = 2.0 * 24.188_843_265_857;

/// Percentile levels reported in every summary.
pub const PERCENTILE_LEVELS: [f64; 21] = [
    1.0, 5.0, 10.0, 15.0, 20.0, 25.0, 30.0, 35.0, 40.0, 45.0, 50.0, 55.0, 60.0, 65.0, 70.0, 75.0,
    80.0, 85.0, 90.0, 95.0, 99.0,
];

const MAX_BINS: usize = 5_000_000;

pub fn to_attoseconds(tau_au: f64) -> f64 {
    tau_au * ATTOSECONDS_PER_AU
}

pub fn from_attoseconds(tau_as: f64) -> f64 {
    tau_as / ATTOSECONDS_PER_AU
}

/// Light-crossing time of a region of the given width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LightCone {
    barrier_width: f64,
}

impl LightCone {
    pub fn new(barrier_width: f64) -> Self {
        Self { barrier_width }
    }

    pub fn barrier_width(&self) -> f64 {
        self.barrier_width
    }

    pub fn c_ryd(&self) -> f64 {
        SPEED_OF_LIGHT_AU
    }

    pub fn light_time(&self) -> f64 {
        self.barrier_width / SPEED_OF_LIGHT_AU
    }
}

/// Fixed-width binning. Without an explicit range the bins cover all
/// samples, with edges aligned to multiples of the bin width.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HistogramSpec {
    pub bin_width: f64,
    pub range: Option<(f64, f64)>,
}

impl HistogramSpec {
    pub fn new(bin_width: f64) -> Self {
        Self {
            bin_width,
            range: None,
        }
    }

    pub fn with_range(bin_width: f64, lo: f64, hi: f64) -> Self {
        Self {
            bin_width,
            range: Some((lo, hi)),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    /// `counts.len() + 1` edges.
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    /// Samples below the first edge / above the last edge.
    pub underflow: u64,
    pub overflow: u64,
}

impl Histogram {
    pub fn build(samples: &[f64], spec: &HistogramSpec) -> Result<Self, DistributionError> {
        let w = spec.bin_width;
        if !(w > 0.0 && w.is_finite()) {
            return Err(DistributionError::InvalidHistogram(format!(
                "bin width must be positive, got {w}"
            )));
        }
        let (lo, nbins) = match spec.range {
            Some((lo, hi)) => {
                if !(hi > lo) {
                    return Err(DistributionError::InvalidHistogram(format!(
                        "empty range [{lo}, {hi}]"
                    )));
                }
                (lo, ((hi - lo) / w).ceil().max(1.0))
            }
            None => {
                let min = samples.iter().cloned().fold(f64::INFINITY, f64::min);
                let max = samples.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
                if !min.is_finite() {
                    return Err(DistributionError::Empty);
                }
                let lo = (min / w).floor() * w;
                (lo, ((max - lo) / w).floor() + 1.0)
            }
        };
        if nbins > MAX_BINS as f64 {
            return Err(DistributionError::TooManyBins(nbins as usize));
        }
        let nbins = nbins as usize;
        let edges: Vec<f64> = (0..=nbins).map(|i| lo + w * i as f64).collect();
        let hi = edges[nbins];
        let mut counts = vec![0u64; nbins];
        let (mut underflow, mut overflow) = (0, 0);
        for &s in samples {
            if s < lo {
                underflow += 1;
            } else if s > hi || (s == hi && spec.range.is_some()) {
                overflow += 1;
            } else {
                let j = (((s - lo) / w).floor() as usize).min(nbins - 1);
                // Floating-point edge cases: keep edges authoritative.
                let j = if s < edges[j] {
                    j.saturating_sub(1)
                } else if s >= edges[j + 1] && j + 1 < nbins {
                    j + 1
                } else {
                    j
                };
                counts[j] += 1;
            }
        }
        Ok(Self {
            edges,
            counts,
            underflow,
            overflow,
        })
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum::<u64>() + self.underflow + self.overflow
    }

    pub fn bin_width(&self) -> f64 {
        self.edges[1] - self.edges[0]
    }

    pub fn center(&self, i: usize) -> f64 {
        0.5 * (self.edges[i] + self.edges[i + 1])
    }

    /// Index of the fullest bin with centre in `[lo, hi)`.
    pub fn mode_in(&self, lo: f64, hi: f64) -> Option<usize> {
        (0..self.counts.len())
            .filter(|&i| {
                let c = self.center(i);
                c >= lo && c < hi
            })
            .max_by_key(|&i| (self.counts[i], std::cmp::Reverse(i)))
    }

    /// Bin containing `x`, if inside the histogram range.
    pub fn bin_of(&self, x: f64) -> Option<usize> {
        if x < self.edges[0] || x > self.edges[self.edges.len() - 1] {
            return None;
        }
        let i = self.edges.partition_point(|&e| e <= x);
        Some(i.saturating_sub(1).min(self.counts.len() - 1))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SummaryStats {
    pub n: usize,
    pub mean: f64,
    pub std_dev: f64,
    /// Standard error of the mean.
    pub std_error: f64,
    pub min: f64,
    pub max: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    /// `(level, value)` at [`PERCENTILE_LEVELS`].
    pub percentiles: Vec<(f64, f64)>,
    pub light_time: f64,
    /// Fraction of samples below the light-crossing time.
    pub superluminal_prob: f64,
    pub histogram: Histogram,
}

impl SummaryStats {
    pub fn percentile(&self, level: f64) -> Option<f64> {
        self.percentiles
            .iter()
            .find(|(p, _)| *p == level)
            .map(|(_, v)| *v)
    }
}

/// Linear-interpolation percentile of sorted data (`p` in percent).
fn percentile_sorted(sorted: &[f64], p: f64) -> f64 {
    let pos = p / 100.0 * (sorted.len() - 1) as f64;
    let i = pos.floor() as usize;
    let frac = pos - i as f64;
    match sorted.get(i + 1) {
        Some(&next) if frac > 0.0 => sorted[i] + frac * (next - sorted[i]),
        _ => sorted[i],
    }
}

pub fn summarize(
    samples: &[f64],
    light: LightCone,
    bins: &HistogramSpec,
) -> Result<SummaryStats, DistributionError> {
    if samples.is_empty() {
        return Err(DistributionError::Empty);
    }
    let n = samples.len();
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    // Two-pass mean/variance.
    let mean = samples.iter().sum::<f64>() / n as f64;
    let var = if n > 1 {
        samples.iter().map(|s| (s - mean).powi(2)).sum::<f64>() / (n - 1) as f64
    } else {
        0.0
    };
    let std_dev = var.sqrt();
    let light_time = light.light_time();
    let below = sorted.partition_point(|&s| s < light_time);
    let percentiles = PERCENTILE_LEVELS
        .iter()
        .map(|&p| (p, percentile_sorted(&sorted, p)))
        .collect();
    Ok(SummaryStats {
        n,
        mean,
        std_dev,
        std_error: std_dev / (n as f64).sqrt(),
        min: sorted[0],
        max: sorted[n - 1],
        q1: percentile_sorted(&sorted, 25.0),
        median: percentile_sorted(&sorted, 50.0),
        q3: percentile_sorted(&sorted, 75.0),
        percentiles,
        light_time,
        superluminal_prob: below as f64 / n as f64,
        histogram: Histogram::build(samples, bins)?,
    })
}

/// Sampled clock readings with their summary.
#[derive(Debug, Clone)]
pub struct TimeDistribution {
    pub samples: Vec<f64>,
    pub stats: SummaryStats,
    pub light: LightCone,
    /// `P(tau < light time)` from the deterministic CDF.
    pub superluminal_prob_exact: Option<f64>,
    pub seed: u64,
    pub n_samples: usize,
    pub rng_algorithm: &'static str,
}
