//! Numerical kernel shared by the physics modules: adaptive Gauss-Kronrod
//! quadrature, grid bracket scanning, Brent root refinement and
//! Richardson-extrapolated central differences.
//!
//! Everything here is a pure function of its inputs.

mod diff;
mod quadrature;
mod roots;

pub use diff::{derivative, derivative_with_step};
pub use quadrature::{gauss_kronrod_15, integrate, integrate_with_budget, QuadratureEstimate};
pub use roots::{brackets_from_samples, find_brackets, find_root, find_root_with_budget};

use thiserror::Error;

pub const DEFAULT_REL_TOL: f64 = 1e-10;
pub const DEFAULT_ABS_TOL: f64 = 1e-12;
pub const DEFAULT_ROOT_REL_TOL: f64 = 1e-12;
/// Relative derivative step for closed-form functions.
pub const DEFAULT_DERIVATIVE_SCALE: f64 = 1e-6;
/// Relative derivative step for functions that are themselves obtained by
/// wavefunction matching; larger to dominate matching noise.
pub const MATCHED_DERIVATIVE_SCALE: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("invalid interval [{lo}, {hi}]: bounds must be finite with lo < hi")]
    InvalidInterval { lo: f64, hi: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("quadrature did not converge: estimate {estimate:e}, error bound {error:e} after {subdivisions} subdivisions")]
    NoConvergence {
        estimate: f64,
        error: f64,
        subdivisions: usize,
    },
    #[error("integrand is not finite at x = {x}")]
    NonFiniteIntegrand { x: f64 },
    #[error("root search exceeded {iterations} iterations; last bracket [{lo}, {hi}]")]
    RootBudgetExceeded { lo: f64, hi: f64, iterations: usize },
    #[error("bracket [{lo}, {hi}] has no sign change ({f_lo:e}, {f_hi:e})")]
    InvalidBracket {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
    #[error("function is not finite at x = {x} while differentiating")]
    NonFiniteDerivative { x: f64 },
}

/// A finite closed interval with `lo < hi`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

impl Interval {
    pub fn new(lo: f64, hi: f64) -> Result<Self, NumericsError> {
        if lo.is_finite() && hi.is_finite() && lo < hi {
            Ok(Self { lo, hi })
        } else {
            Err(NumericsError::InvalidInterval { lo, hi })
        }
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn midpoint(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }

    pub fn contains(&self, x: f64) -> bool {
        x >= self.lo && x <= self.hi
    }
}

/// A sign-change bracket `[lo, hi]` of some function.
///
/// A degenerate bracket (`lo == hi`) marks an exact zero found on a grid
/// node; [`find_root`] returns it unchanged.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bracket {
    pub lo: f64,
    pub hi: f64,
    pub f_lo: f64,
    pub f_hi: f64,
}

impl Bracket {
    pub fn new(lo: f64, hi: f64, f_lo: f64, f_hi: f64) -> Result<Self, NumericsError> {
        let degenerate = lo == hi && f_lo == 0.0;
        let strict = lo < hi && f_lo * f_hi < 0.0;
        if lo.is_finite() && hi.is_finite() && (degenerate || strict) {
            Ok(Self { lo, hi, f_lo, f_hi })
        } else {
            Err(NumericsError::InvalidBracket { lo, hi, f_lo, f_hi })
        }
    }

    pub fn exact(x: f64) -> Self {
        Self {
            lo: x,
            hi: x,
            f_lo: 0.0,
            f_hi: 0.0,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }
}
