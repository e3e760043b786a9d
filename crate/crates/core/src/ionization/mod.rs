//! Decay of a bound state after a sudden deformation of its binding
//! potential.
//!
//! Before the deformation the particle sits in the ground state of
//! `V1 = 0` on `(0, a)`, `V0` beyond, with a hard wall at the origin. The
//! potential is then switched to `V2 = V0` on `(a, b)` only, and the state is
//! expanded over the continuum eigenstates of `V2`: `rho(k) = S(k)^2`. The
//! clock time of each component is `t_c(k) = -dOmega/dV0`, where `Omega` is
//! the phase of the outer standing wave.

mod bound;
mod continuum;
mod overlap;

pub use bound::{penetration_probability, solve_ground_state, BoundState};
pub use continuum::{
    eigenstate_coefficients, ionization_clock_time, ionization_clock_time_analytic,
    ionization_clock_time_with_step, ContinuumEigenstate, HEIGHT_STEP,
};
pub use overlap::{overlap_s, overlap_with};

use std::f64::consts::PI;

use thiserror::Error;

use crate::distribution::{adaptive_table, ClockCurve, DistributionError, SpectralDensity};
use crate::numerics::{self, Interval, NumericsError};

/// Lower end of the default wave-number support.
pub const DEFAULT_K_MIN: f64 = 1e-4;

/// Tail weight beyond the default `k_max`.
pub const DEFAULT_TAIL_WEIGHT: f64 = 1e-6;

/// Largest accepted weight outside the support.
pub const MAX_TRUNCATION_LOSS: f64 = 1e-3;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IonizationError {
    #[error("invalid parameter {name} = {value}: {constraint}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },
    #[error("no bound state for V0 = {height}, a = {a} (need V0 a^2 > pi^2 / 4)")]
    NoBoundState { height: f64, a: f64 },
    #[error("bound-state matching residual {residual:e} at k0 = {k} is too large")]
    MatchingResidual { k: f64, residual: f64 },
    #[error("confined sine needs k0 a to be a multiple of pi, got k0 = {k0}, a = {a}")]
    NotConfined { k0: f64, a: f64 },
    #[error("wave number must be positive, got k = {0}")]
    Domain(f64),
    #[error("singular matching system at k = {0}")]
    SingularMatching(f64),
    #[error("phase branch jump at k = {k} with height step {step:e}; reduce the step")]
    BranchJump { k: f64, step: f64 },
    #[error("weight outside the support [{lo}, {hi}] is {loss:e} (> 1e-3); enlarge the support")]
    TruncationLoss { lo: f64, hi: f64, loss: f64 },
    #[error("grid must have at least 16 points, got {0}")]
    GridTooSmall(usize),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Distribution(#[from] DistributionError),
}

/// `V2`: barrier of height `V0` on `(a, b)`. `V0` is also the outer height
/// of `V1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WellSpec {
    height: f64,
    a: f64,
    b: f64,
}

impl WellSpec {
    pub fn new(height: f64, a: f64, b: f64) -> Result<Self, IonizationError> {
        let bad = |name, value, constraint| {
            Err(IonizationError::InvalidParameter {
                name,
                value,
                constraint,
            })
        };
        if !(height > 0.0 && height.is_finite()) {
            return bad("V0", height, "must be positive and finite");
        }
        if !(a > 0.0 && a.is_finite()) {
            return bad("a", a, "must be positive and finite");
        }
        if !(b > a && b.is_finite()) {
            return bad("b", b, "must be finite and greater than a");
        }
        Ok(Self { height, a, b })
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn inner_edge(&self) -> f64 {
        self.a
    }

    pub fn outer_edge(&self) -> f64 {
        self.b
    }

    pub fn width(&self) -> f64 {
        self.b - self.a
    }

    /// Boundary between tunneling and above-barrier wave numbers.
    pub fn tunneling_edge(&self) -> f64 {
        self.height.sqrt()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialStateSpec {
    /// Ground state of `V1`.
    GroundState,
    /// `sqrt(2/a) sin(k0 x)` on `(0, a)`, zero elsewhere.
    ConfinedSine { k0: f64 },
}

impl InitialStateSpec {
    pub fn resolve(&self, well: &WellSpec) -> Result<InitialState, IonizationError> {
        match *self {
            InitialStateSpec::GroundState => Ok(InitialState::Ground(solve_ground_state(well)?)),
            InitialStateSpec::ConfinedSine { k0 } => {
                let a = well.inner_edge();
                let n = k0 * a / PI;
                if !(k0 > 0.0) || (n - n.round()).abs() > 1e-9 * n.max(1.0) {
                    return Err(IonizationError::NotConfined { k0, a });
                }
                Ok(InitialState::ConfinedSine { k0 })
            }
        }
    }
}

/// Resolved initial state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum InitialState {
    Ground(BoundState),
    ConfinedSine { k0: f64 },
}

impl InitialState {
    pub fn wavefunction(&self, x: f64, well: &WellSpec) -> f64 {
        match self {
            InitialState::Ground(s) => s.wavefunction(x),
            InitialState::ConfinedSine { k0 } => {
                let a = well.inner_edge();
                if (0.0..=a).contains(&x) {
                    (2.0 / a).sqrt() * (k0 * x).sin()
                } else {
                    0.0
                }
            }
        }
    }

    /// Central wave number of the state.
    pub fn k0(&self) -> f64 {
        match self {
            InitialState::Ground(s) => s.k0(),
            InitialState::ConfinedSine { k0 } => *k0,
        }
    }
}

/// `S(k)^2` for a resolved state.
pub fn overlap_density(
    k: f64,
    initial: &InitialState,
    well: &WellSpec,
) -> Result<f64, IonizationError> {
    Ok(overlap_s(k, initial, well)?.powi(2))
}

fn density_or_zero(k: f64, initial: &InitialState, well: &WellSpec) -> f64 {
    overlap_density(k, initial, well).unwrap_or(0.0)
}

/// `int_0^lo S^2 dk`.
fn head_weight(lo: f64, initial: &InitialState, well: &WellSpec) -> Result<f64, IonizationError> {
    if lo <= 0.0 {
        return Ok(0.0);
    }
    let f = |k: f64| {
        if k > 0.0 {
            density_or_zero(k, initial, well)
        } else {
            0.0
        }
    };
    Ok(numerics::integrate(
        f,
        Interval::new(0.0, lo)?,
        1e-8,
        1e-16,
    )?)
}

/// `int_K^inf S^2 dk`, summed over doubling panels.
pub fn tail_weight(
    k_from: f64,
    initial: &InitialState,
    well: &WellSpec,
) -> Result<f64, IonizationError> {
    let f = |k: f64| density_or_zero(k, initial, well);
    let mut total = 0.0;
    let mut lo = k_from;
    for _ in 0..48 {
        let hi = 2.0 * lo;
        let panel =
            numerics::integrate_with_budget(f, Interval::new(lo, hi)?, 1e-8, 1e-16, 20_000)?.value;
        total += panel;
        if panel < 1e-13 || panel < 1e-9 * total {
            break;
        }
        lo = hi;
    }
    Ok(total)
}

/// `(1e-4, k_max)`, with `k_max` found by doubling from `2 sqrt(V0)` until
/// the weight beyond it is below `1e-6`. The eigenstates of `V2` are
/// complete, so this is the point where the cumulative exceeds `1 - 1e-6`.
pub fn default_support(
    initial: &InitialState,
    well: &WellSpec,
) -> Result<Interval, IonizationError> {
    let mut k_max = 2.0 * well.tunneling_edge();
    while tail_weight(k_max, initial, well)? >= DEFAULT_TAIL_WEIGHT {
        k_max *= 2.0;
        if k_max > 1e7 {
            return Err(IonizationError::TruncationLoss {
                lo: DEFAULT_K_MIN,
                hi: k_max,
                loss: tail_weight(k_max, initial, well)?,
            });
        }
    }
    Ok(Interval::new(DEFAULT_K_MIN, k_max)?)
}

/// Wave numbers below `sqrt(V0)` where `V1` has bound states. For an opaque
/// barrier the quasi-bound states of `V2` sit very close to them, and the
/// resonances there can be far narrower than any uniform grid.
pub fn resonance_seeds(well: &WellSpec) -> Vec<f64> {
    let (v0, a) = (well.height(), well.inner_edge());
    let edge = v0.sqrt();
    let f = |k: f64| k * (k * a).cos() + (v0 - k * k).max(0.0).sqrt() * (k * a).sin();
    let n = 64 + (8.0 * edge * a) as usize;
    let Ok(range) = Interval::new(1e-9 * edge, edge * (1.0 - 1e-12)) else {
        return Vec::new();
    };
    numerics::find_brackets(f, range, n)
        .into_iter()
        .filter_map(|br| numerics::find_root(f, br, 1e-14).ok())
        .collect()
}

/// `rho(k) = S(k)^2` tabulated on an adaptive grid over `support` that
/// starts from `n_grid` uniform points. The table is renormalized over the
/// support; the weight outside it (known from completeness) is recorded as
/// the truncation loss.
pub fn ionization_density(
    well: &WellSpec,
    initial: &InitialState,
    support: Interval,
    n_grid: usize,
) -> Result<SpectralDensity, IonizationError> {
    if n_grid < 16 {
        return Err(IonizationError::GridTooSmall(n_grid));
    }
    if support.lo() <= 0.0 {
        return Err(IonizationError::Domain(support.lo()));
    }
    let loss =
        head_weight(support.lo(), initial, well)? + tail_weight(support.hi(), initial, well)?;
    if loss > MAX_TRUNCATION_LOSS {
        return Err(IonizationError::TruncationLoss {
            lo: support.lo(),
            hi: support.hi(),
            loss,
        });
    }
    let mut seeds = resonance_seeds(well);
    seeds.push(initial.k0());
    let f = |k: f64| density_or_zero(k, initial, well);
    let (grid, density) = adaptive_table(&f, support, n_grid, &seeds);
    Ok(SpectralDensity::from_table(grid, density, support)?.with_truncation_loss(loss))
}

/// The ionization clock curve as a [`ClockCurve`].
pub fn ionization_clock_curve(well: &WellSpec) -> ClockCurve {
    let well = *well;
    ClockCurve::new(
        move |k| ionization_clock_time_analytic(k, &well).unwrap_or(f64::NAN),
        numerics::MATCHED_DERIVATIVE_SCALE,
    )
}

/// Probability of an above-barrier component, `int_{sqrt V0} rho dk`.
pub fn above_barrier_weight(rho: &SpectralDensity, well: &WellSpec) -> f64 {
    let edge = well.tunneling_edge();
    rho.mass_between(edge, rho.support().hi())
}
