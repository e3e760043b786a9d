//! Ground state of the semi-infinite well: zero potential on `(0, a)` with a
//! hard wall at `x = 0`, constant `V0` for `x > a`.
//!
//! Inside, `phi = N sin(k0 x)`; outside, `phi = N sin(k0 a) exp(q0 (a - x))`.
//! Continuity of `phi'/phi` at `x = a` gives `k0 cot(k0 a) = -q0`. The root
//! is sought as a zero of `k cos(ka) + q sin(ka)`, which has no poles: it is
//! `q > 0` at `k = pi / 2a` and negative at `k = min(pi / a, sqrt(V0))` once
//! `V0 a^2 > pi^2 / 4`.

use std::f64::consts::{FRAC_PI_2, PI};

use crate::numerics::{self, Bracket};

use super::{IonizationError, WellSpec};

/// Largest accepted `|k0 cot(k0 a) + q0|`.
const MATCHING_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundState {
    k0: f64,
    q0: f64,
    norm: f64,
    a: f64,
}

impl BoundState {
    pub fn k0(&self) -> f64 {
        self.k0
    }

    pub fn q0(&self) -> f64 {
        self.q0
    }

    /// Amplitude `N` of the normalized state.
    pub fn norm(&self) -> f64 {
        self.norm
    }

    pub fn energy(&self) -> f64 {
        self.k0 * self.k0
    }

    pub fn inner_edge(&self) -> f64 {
        self.a
    }

    /// `|k0 cot(k0 a) + q0|`, relative to `max(1, q0)`.
    pub fn matching_residual(&self) -> f64 {
        (self.k0 / (self.k0 * self.a).tan() + self.q0).abs() / self.q0.max(1.0)
    }

    pub fn wavefunction(&self, x: f64) -> f64 {
        if x < 0.0 {
            0.0
        } else if x <= self.a {
            self.norm * (self.k0 * x).sin()
        } else {
            self.norm * (self.k0 * self.a).sin() * (self.q0 * (self.a - x)).exp()
        }
    }

    /// Probability of finding the particle beyond `x = a`.
    pub fn tail_probability(&self) -> f64 {
        self.norm * self.norm * (self.k0 * self.a).sin().powi(2) / (2.0 * self.q0)
    }

    /// Probability on `(0, a)`.
    pub fn inner_probability(&self) -> f64 {
        let (k, a) = (self.k0, self.a);
        self.norm * self.norm * (a / 2.0 - (2.0 * k * a).sin() / (4.0 * k))
    }
}

/// Lowest bound state of the well `(V0, a)`; `b` plays no role.
pub fn solve_ground_state(well: &WellSpec) -> Result<BoundState, IonizationError> {
    let (v0, a) = (well.height(), well.inner_edge());
    let no_state = IonizationError::NoBoundState { height: v0, a };
    let lo = FRAC_PI_2 / a;
    let hi = (PI / a).min(v0.sqrt());
    if !(hi > lo) {
        return Err(no_state);
    }
    let f = |k: f64| k * (k * a).cos() + (v0 - k * k).max(0.0).sqrt() * (k * a).sin();
    let bracket = Bracket::new(lo, hi, f(lo), f(hi)).map_err(|_| no_state.clone())?;
    let k0 = numerics::find_root(f, bracket, 1e-15)?;
    let q0 = (v0 - k0 * k0).sqrt();
    if !(q0 > 0.0) {
        return Err(no_state);
    }
    let unnormalized =
        a / 2.0 - (2.0 * k0 * a).sin() / (4.0 * k0) + (k0 * a).sin().powi(2) / (2.0 * q0);
    let state = BoundState {
        k0,
        q0,
        norm: unnormalized.sqrt().recip(),
        a,
    };
    let residual = state.matching_residual();
    if !(residual < MATCHING_TOL) {
        return Err(IonizationError::MatchingResidual { k: k0, residual });
    }
    Ok(state)
}

/// `int_a^inf |phi0|^2 dx`.
pub fn penetration_probability(bound: &BoundState) -> f64 {
    bound.tail_probability()
}
