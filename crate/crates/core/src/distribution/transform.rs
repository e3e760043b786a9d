use std::fmt;

use crate::numerics::{self, brackets_from_samples, Bracket};

use super::{ClockCurve, DistributionError, SpectralDensity};

/// Below this `|t_c'|` a root is treated as a critical point of the curve.
const CRITICAL_SLOPE: f64 = 1e-12;

/// Value of `rho_t(tau)`. `Divergent` marks a critical value of the clock
/// curve, where the density has an integrable singularity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TimeDensity {
    Finite(f64),
    Divergent,
}

impl TimeDensity {
    pub fn finite(self) -> Option<f64> {
        match self {
            TimeDensity::Finite(v) => Some(v),
            TimeDensity::Divergent => None,
        }
    }

    pub fn is_divergent(self) -> bool {
        matches!(self, TimeDensity::Divergent)
    }
}

impl fmt::Display for TimeDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TimeDensity::Finite(v) => write!(f, "{v:.16e}"),
            TimeDensity::Divergent => f.write_str("divergent"),
        }
    }
}

fn refine(clock: &ClockCurve, tau: f64, br: Bracket) -> Result<f64, DistributionError> {
    numerics::find_root(|k| clock.eval(k) - tau, br, numerics::DEFAULT_ROOT_REL_TOL).map_err(
        |source| DistributionError::RootFailure {
            lo: br.lo,
            hi: br.hi,
            source,
        },
    )
}

/// All `k` on the density grid with `t_c(k) = tau`.
fn roots(
    rho: &SpectralDensity,
    clock: &ClockCurve,
    taus: &[f64],
    tau: f64,
) -> Result<Vec<f64>, DistributionError> {
    let g: Vec<f64> = taus.iter().map(|t| t - tau).collect();
    brackets_from_samples(rho.grid(), &g)
        .into_iter()
        .map(|br| refine(clock, tau, br))
        .collect()
}

/// `rho_t(tau) = sum_j rho(k_j) / |t_c'(k_j)|` over the roots of
/// `t_c(k) = tau` on the support. Zero when there are no roots.
pub fn density_of_times(
    tau: f64,
    rho: &SpectralDensity,
    clock: &ClockCurve,
) -> Result<TimeDensity, DistributionError> {
    let taus = clock.values_on(rho.grid())?;
    let mut total = 0.0;
    for k in roots(rho, clock, &taus, tau)? {
        let slope = clock.derivative(k)?;
        if slope.abs() < CRITICAL_SLOPE {
            return Ok(TimeDensity::Divergent);
        }
        total += rho.eval(k) / slope.abs();
    }
    Ok(TimeDensity::Finite(total))
}

/// `P(t_c(K) <= tau)`: the density mass on `{k : t_c(k) <= tau}`, with the
/// set's boundaries refined to the roots of `t_c(k) = tau`.
pub fn cdf_of_times(
    tau: f64,
    rho: &SpectralDensity,
    clock: &ClockCurve,
) -> Result<f64, DistributionError> {
    let taus = clock.values_on(rho.grid())?;
    cdf_from_table(tau, rho, clock, &taus)
}

pub(crate) fn cdf_from_table(
    tau: f64,
    rho: &SpectralDensity,
    clock: &ClockCurve,
    taus: &[f64],
) -> Result<f64, DistributionError> {
    let grid = rho.grid();
    let cum = rho.cumulative_nodes();
    let mut total = 0.0;
    for i in 0..grid.len() - 1 {
        let (g0, g1) = (taus[i] - tau, taus[i + 1] - tau);
        let (in0, in1) = (g0 <= 0.0, g1 <= 0.0);
        let full = cum[i + 1] - cum[i];
        match (in0, in1) {
            (true, true) => total += full,
            (false, false) => {}
            _ => {
                let root = if g0 == 0.0 {
                    grid[i]
                } else if g1 == 0.0 {
                    grid[i + 1]
                } else {
                    refine(
                        clock,
                        tau,
                        Bracket {
                            lo: grid[i],
                            hi: grid[i + 1],
                            f_lo: g0,
                            f_hi: g1,
                        },
                    )?
                };
                let left = rho.mass_between(grid[i], root);
                total += if in0 { left } else { full - left };
            }
        }
    }
    Ok(total.clamp(0.0, 1.0))
}

/// Clock-curve extrema on the density grid (including both support ends),
/// returned as sorted `(k, t_c(k))` pairs. Interior extrema are refined to
/// zeros of `t_c'`.
pub fn critical_points(
    rho: &SpectralDensity,
    clock: &ClockCurve,
) -> Result<Vec<(f64, f64)>, DistributionError> {
    let grid = rho.grid();
    let taus = clock.values_on(grid)?;
    let n = grid.len();
    let mut out = vec![(grid[0], taus[0])];
    for i in 1..n - 1 {
        let rising_before = taus[i] > taus[i - 1];
        let rising_after = taus[i + 1] > taus[i];
        if rising_before == rising_after {
            continue;
        }
        let slope = |k: f64| clock.derivative(k).unwrap_or(f64::NAN);
        let (a, b) = (grid[i - 1], grid[i + 1]);
        let (fa, fb) = (slope(a), slope(b));
        let k = match Bracket::new(a, b, fa, fb) {
            Ok(br) => numerics::find_root(slope, br, 1e-10).unwrap_or(grid[i]),
            Err(_) => grid[i],
        };
        let t = clock.eval(k);
        // Keep whichever of the refined point and the grid node is more extreme.
        let pick = if rising_before {
            t.max(taus[i])
        } else {
            t.min(taus[i])
        };
        out.push((if pick == t { k } else { grid[i] }, pick));
    }
    out.push((grid[n - 1], taus[n - 1]));
    Ok(out)
}

/// `<t_c> = int rho(k) t_c(k) dk`.
pub fn mean_time(rho: &SpectralDensity, clock: &ClockCurve) -> Result<f64, DistributionError> {
    Ok(rho.expectation(|k| clock.eval(k))?)
}
