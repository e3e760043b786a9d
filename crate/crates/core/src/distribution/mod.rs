//! From a wave-number density `rho(k)` and a clock curve `t_c(k)` to the
//! density of clock readings `rho_t(tau) = sum_j rho(k_j) / |t_c'(k_j)|`,
//! where the `k_j` solve `t_c(k) = tau`.
//!
//! Two routes are provided. [`density_of_times`] and [`cdf_of_times`] are
//! deterministic; [`sample_times`] draws wave numbers from `rho` and maps
//! them through the clock. The CDF is the canonical object for comparisons
//! because the density diverges (integrably) at critical values of the clock
//! curve.

mod grid;
mod sampling;
mod stats;
mod transform;

pub use grid::{adaptive_table, uniform_grid, MAX_GRID_POINTS, REFINE_TOL};
pub use sampling::{sample_k, sample_times, InverseCdf, RNG_ALGORITHM, SAMPLE_CHUNK};
pub use stats::{
    from_attoseconds, summarize, to_attoseconds, Histogram, HistogramSpec, LightCone, SummaryStats,
    TimeDistribution, ATTOSECONDS_PER_AU, FINE_STRUCTURE, PERCENTILE_LEVELS, SPEED_OF_LIGHT_AU,
};
pub use transform::{cdf_of_times, critical_points, density_of_times, mean_time, TimeDensity};

use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use thiserror::Error;

use crate::numerics::{self, Interval, NumericsError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DistributionError {
    #[error("invalid density table: {0}")]
    InvalidTable(String),
    #[error("clock curve is not finite at k = {0}")]
    NonFiniteClock(f64),
    #[error("root refinement failed in bracket [{lo}, {hi}]: {source}")]
    RootFailure {
        lo: f64,
        hi: f64,
        #[source]
        source: NumericsError,
    },
    #[error("no samples to summarize")]
    Empty,
    #[error("histogram would need {0} bins; widen the bins or restrict the range")]
    TooManyBins(usize),
    #[error("invalid histogram: {0}")]
    InvalidHistogram(String),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Normalized wave-number density tabulated on a strictly increasing grid.
///
/// Between nodes the density is the linear interpolant, and that
/// piecewise-linear function integrates to exactly one. Every consumer
/// (evaluation, cumulative, sampling) uses the same interpolant.
#[derive(Clone, PartialEq)]
pub struct SpectralDensity {
    grid: Vec<f64>,
    density: Vec<f64>,
    support: Interval,
    cumulative: Vec<f64>,
    norm_residual: f64,
    truncation_loss: f64,
}

impl fmt::Debug for SpectralDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SpectralDensity")
            .field("nodes", &self.grid.len())
            .field("support", &self.support)
            .field("norm_residual", &self.norm_residual)
            .field("truncation_loss", &self.truncation_loss)
            .finish()
    }
}

impl SpectralDensity {
    /// Builds the table from density values that are expected to be
    /// normalized already; any trapezoid mismatch is recorded as
    /// `norm_residual` and then removed.
    pub fn from_table(
        grid: Vec<f64>,
        density: Vec<f64>,
        support: Interval,
    ) -> Result<Self, DistributionError> {
        if grid.len() < 2 || grid.len() != density.len() {
            return Err(DistributionError::InvalidTable(format!(
                "need matching grid/density of length >= 2 (got {} and {})",
                grid.len(),
                density.len()
            )));
        }
        if grid.windows(2).any(|w| !(w[1] > w[0])) || grid.iter().any(|x| !x.is_finite()) {
            return Err(DistributionError::InvalidTable(
                "grid must be finite and strictly increasing".into(),
            ));
        }
        if density.iter().any(|&v| !(v >= 0.0) || !v.is_finite()) {
            return Err(DistributionError::InvalidTable(
                "density must be finite and non-negative".into(),
            ));
        }
        let mut cumulative = Vec::with_capacity(grid.len());
        cumulative.push(0.0);
        let mut acc = 0.0;
        for i in 1..grid.len() {
            acc += 0.5 * (density[i] + density[i - 1]) * (grid[i] - grid[i - 1]);
            cumulative.push(acc);
        }
        if !(acc > 0.0) {
            return Err(DistributionError::InvalidTable(
                "density integrates to zero".into(),
            ));
        }
        let density = density.into_iter().map(|v| v / acc).collect();
        cumulative.iter_mut().for_each(|c| *c /= acc);
        if let Some(last) = cumulative.last_mut() {
            *last = 1.0;
        }
        Ok(Self {
            grid,
            density,
            support,
            cumulative,
            norm_residual: (acc - 1.0).abs(),
            truncation_loss: 0.0,
        })
    }

    pub(crate) fn with_truncation_loss(mut self, loss: f64) -> Self {
        self.truncation_loss = loss;
        self
    }

    pub fn grid(&self) -> &[f64] {
        &self.grid
    }

    pub fn density(&self) -> &[f64] {
        &self.density
    }

    pub fn support(&self) -> Interval {
        self.support
    }

    pub fn len(&self) -> usize {
        self.grid.len()
    }

    pub fn is_empty(&self) -> bool {
        self.grid.is_empty()
    }

    /// `|trapezoid(input table) - 1|` before the table was renormalized.
    pub fn norm_residual(&self) -> f64 {
        self.norm_residual
    }

    /// Probability that fell outside the truncated support, when known.
    pub fn truncation_loss(&self) -> f64 {
        self.truncation_loss
    }

    pub fn trapezoid_total(&self) -> f64 {
        self.grid
            .windows(2)
            .zip(self.density.windows(2))
            .map(|(x, r)| 0.5 * (r[0] + r[1]) * (x[1] - x[0]))
            .sum()
    }

    /// Index `i` with `grid[i] <= k < grid[i + 1]`, clamped to valid intervals.
    fn interval_index(&self, k: f64) -> usize {
        let i = self.grid.partition_point(|&x| x <= k);
        i.saturating_sub(1).min(self.grid.len() - 2)
    }

    /// Linear interpolant of the table; zero outside the grid.
    pub fn eval(&self, k: f64) -> f64 {
        let (first, last) = (self.grid[0], self.grid[self.grid.len() - 1]);
        if !(k >= first && k <= last) {
            return 0.0;
        }
        let i = self.interval_index(k);
        let (x0, x1) = (self.grid[i], self.grid[i + 1]);
        let t = (k - x0) / (x1 - x0);
        self.density[i] + t * (self.density[i + 1] - self.density[i])
    }

    /// `P(K <= k)` under the piecewise-linear density.
    pub fn cumulative_at(&self, k: f64) -> f64 {
        let (first, last) = (self.grid[0], self.grid[self.grid.len() - 1]);
        if k <= first {
            return 0.0;
        }
        if k >= last {
            return 1.0;
        }
        let i = self.interval_index(k);
        self.cumulative[i] + self.partial_mass(i, k - self.grid[i])
    }

    /// Mass of interval `i` between `grid[i]` and `grid[i] + t`.
    fn partial_mass(&self, i: usize, t: f64) -> f64 {
        let h = self.grid[i + 1] - self.grid[i];
        let (r0, r1) = (self.density[i], self.density[i + 1]);
        r0 * t + 0.5 * (r1 - r0) * t * t / h
    }

    pub fn mass_between(&self, lo: f64, hi: f64) -> f64 {
        (self.cumulative_at(hi) - self.cumulative_at(lo)).max(0.0)
    }

    pub(crate) fn cumulative_nodes(&self) -> &[f64] {
        &self.cumulative
    }

    /// `int f(k) rho(k) dk` with one 15-point Kronrod panel per interval.
    pub fn expectation<F>(&self, f: F) -> Result<f64, NumericsError>
    where
        F: Fn(f64) -> f64 + Sync,
    {
        let parts: Result<Vec<f64>, NumericsError> = (0..self.grid.len() - 1)
            .into_par_iter()
            .map(|i| {
                let (a, b) = (self.grid[i], self.grid[i + 1]);
                if self.density[i] == 0.0 && self.density[i + 1] == 0.0 {
                    return Ok(0.0);
                }
                let weighted = |k: f64| f(k) * self.eval(k);
                numerics::gauss_kronrod_15(&weighted, a, b).map(|e| e.value)
            })
            .collect();
        Ok(parts?.iter().sum())
    }

    /// Grid node with the largest density.
    pub fn mode(&self) -> f64 {
        let i = self
            .density
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.total_cmp(b.1))
            .map(|(i, _)| i)
            .unwrap_or(0);
        self.grid[i]
    }
}

type Evaluator = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// A clock curve `k -> t_c(k)` with an optional table on a density grid.
#[derive(Clone)]
pub struct ClockCurve {
    evaluator: Evaluator,
    derivative_scale: f64,
    table: Option<(Vec<f64>, Vec<f64>)>,
}

impl fmt::Debug for ClockCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ClockCurve")
            .field("derivative_scale", &self.derivative_scale)
            .field("tabulated", &self.table.as_ref().map(|t| t.0.len()))
            .finish()
    }
}

impl ClockCurve {
    /// `derivative_scale` is the relative step used for `t_c'(k)`.
    pub fn new<F>(evaluator: F, derivative_scale: f64) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self {
            evaluator: Arc::new(evaluator),
            derivative_scale,
            table: None,
        }
    }

    /// Constant curve, e.g. the zero-width limit where every component
    /// reads the same time.
    pub fn constant(value: f64) -> Self {
        Self::new(move |_| value, numerics::DEFAULT_DERIVATIVE_SCALE)
    }

    pub fn eval(&self, k: f64) -> f64 {
        (self.evaluator)(k)
    }

    /// Tabulates the curve on `grid` (in parallel) and caches the table.
    pub fn tabulate(mut self, grid: &[f64]) -> Result<Self, DistributionError> {
        let values: Vec<f64> = grid.par_iter().map(|&k| self.eval(k)).collect();
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(DistributionError::NonFiniteClock(grid[i]));
        }
        self.table = Some((grid.to_vec(), values));
        Ok(self)
    }

    pub fn table(&self) -> Option<(&[f64], &[f64])> {
        self.table
            .as_ref()
            .map(|(k, t)| (k.as_slice(), t.as_slice()))
    }

    /// Clock values on `grid`, reusing the cached table when it matches.
    pub fn values_on(&self, grid: &[f64]) -> Result<Vec<f64>, DistributionError> {
        if let Some((k, t)) = &self.table {
            if k.as_slice() == grid {
                return Ok(t.clone());
            }
        }
        let values: Vec<f64> = grid.par_iter().map(|&k| self.eval(k)).collect();
        if let Some(i) = values.iter().position(|v| !v.is_finite()) {
            return Err(DistributionError::NonFiniteClock(grid[i]));
        }
        Ok(values)
    }

    /// Largest deviation between the cached table and the evaluator.
    pub fn table_consistency(&self) -> Option<f64> {
        self.table.as_ref().map(|(k, t)| {
            k.iter()
                .zip(t)
                .map(|(&k, &t)| (self.eval(k) - t).abs() / t.abs().max(1.0))
                .fold(0.0, f64::max)
        })
    }

    /// `t_c'(k)` by Richardson-extrapolated central differences. The step is
    /// `scale * max(1, |k|)`, capped at a quarter of the local table spacing
    /// so narrow resonances resolved by the grid are also resolved here.
    pub fn derivative(&self, k: f64) -> Result<f64, NumericsError> {
        let mut h = self.derivative_scale * k.abs().max(1.0);
        if let Some((grid, _)) = &self.table {
            let i = grid.partition_point(|&x| x <= k).clamp(1, grid.len() - 1);
            let spacing =
                (grid[i] - grid[i - 1]).min(grid.get(i + 1).map_or(f64::INFINITY, |x| x - grid[i]));
            h = h.min(0.25 * spacing);
        }
        numerics::derivative_with_step(|x| self.eval(x), k, h)
    }
}
