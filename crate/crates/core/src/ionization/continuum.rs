//! Delta-normalized continuum eigenstates of the deformed well: zero
//! potential on `(0, a)`, a barrier `V0` on `(a, b)`, zero beyond `b`, and a
//! hard wall at the origin.
//!
//! With `u = sin(kx)` on `(0, a)` and `u` propagated across the barrier,
//! the outer solution is `alpha cos(k(x - b) + Omega)` where
//! `alpha = hypot(u(b), u'(b)/k)` and `Omega = atan2(-u'(b)/k, u(b))`.
//! Scaling by `A = sqrt(2/pi) / alpha` fixes the outer amplitude.

use std::f64::consts::{PI, TAU};

use crate::propagator;

use super::{IonizationError, WellSpec};

/// Largest relative phase change allowed across one difference step.
const PHASE_STEP: f64 = 1e-3;

/// Initial relative step in the barrier height.
pub const HEIGHT_STEP: f64 = 1e-5;

/// Inner-edge data and outer phase of the unnormalized solution `u`.
#[derive(Debug, Clone, Copy)]
struct Matched {
    ua: f64,
    dua: f64,
    alpha: f64,
    omega: f64,
}

fn matched(k: f64, height: f64, a: f64, b: f64) -> Matched {
    let (ua, dua) = ((k * a).sin(), k * (k * a).cos());
    let (ub, dub) = propagator::propagate(height - k * k, b - a, ua, dua);
    Matched {
        ua,
        dua,
        alpha: ub.hypot(dub / k),
        omega: (-dub / k).atan2(ub),
    }
}

/// `psi(x) = A sin(kx)` on `(0, a)`, `C c(s, x - a) + D sn(s, x - a)` on
/// `(a, b)` and `sqrt(2/pi) cos(k(x - b) + Omega)` beyond `b`, with
/// `s = V0 - k^2` and `(c, sn)` the fundamental solutions of
/// [`crate::propagator`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ContinuumEigenstate {
    pub k: f64,
    pub coef_a: f64,
    pub coef_c: f64,
    pub coef_d: f64,
    /// In `(-pi, pi]`.
    pub omega: f64,
    s: f64,
    a: f64,
    b: f64,
}

impl ContinuumEigenstate {
    pub fn barrier_parameter(&self) -> f64 {
        self.s
    }

    pub fn wavefunction(&self, x: f64) -> f64 {
        self.value_and_slope(x).0
    }

    pub fn value_and_slope(&self, x: f64) -> (f64, f64) {
        let k = self.k;
        if x <= 0.0 {
            (0.0, self.coef_a * k)
        } else if x <= self.a {
            (self.coef_a * (k * x).sin(), self.coef_a * k * (k * x).cos())
        } else if x <= self.b {
            propagator::propagate(self.s, x - self.a, self.coef_c, self.coef_d)
        } else {
            let amp = (2.0 / PI).sqrt();
            let phase = k * (x - self.b) + self.omega;
            (amp * phase.cos(), -amp * k * phase.sin())
        }
    }

    /// Largest relative mismatch of value and slope between neighbouring
    /// pieces at `x = a` and `x = b`.
    pub fn matching_residual(&self) -> f64 {
        let k = self.k;
        let inner = (
            self.coef_a * (k * self.a).sin(),
            self.coef_a * k * (k * self.a).cos(),
        );
        let left_b = propagator::propagate(self.s, self.b - self.a, self.coef_c, self.coef_d);
        let amp = (2.0 / PI).sqrt();
        let right_b = (amp * self.omega.cos(), -amp * k * self.omega.sin());
        let rel = |x: (f64, f64), y: (f64, f64)| {
            let scale =
                x.0.hypot(x.1 / k)
                    .max(y.0.hypot(y.1 / k))
                    .max(f64::MIN_POSITIVE);
            ((x.0 - y.0).abs().max((x.1 - y.1).abs() / k)) / scale
        };
        rel(inner, (self.coef_c, self.coef_d)).max(rel(left_b, right_b))
    }
}

fn check_k(k: f64) -> Result<(), IonizationError> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(IonizationError::Domain(k))
    }
}

pub fn eigenstate_coefficients(
    k: f64,
    well: &WellSpec,
) -> Result<ContinuumEigenstate, IonizationError> {
    check_k(k)?;
    let (a, b) = (well.inner_edge(), well.outer_edge());
    let m = matched(k, well.height(), a, b);
    if !(m.alpha > 0.0 && m.alpha.is_finite()) {
        return Err(IonizationError::SingularMatching(k));
    }
    let scale = (2.0 / PI).sqrt() / m.alpha;
    Ok(ContinuumEigenstate {
        k,
        coef_a: scale,
        coef_c: scale * m.ua,
        coef_d: scale * m.dua,
        omega: m.omega,
        s: well.height() - k * k,
        a,
        b,
    })
}

/// `Omega` at barrier height `height`, moved by a multiple of `2 pi` next to
/// `reference`. `alpha > 0` fixes `Omega` modulo `2 pi`, so any remaining
/// jump larger than `pi / 2` means the step crossed a phase slip.
fn omega_near(
    k: f64,
    height: f64,
    well: &WellSpec,
    reference: f64,
    h: f64,
) -> Result<f64, IonizationError> {
    let w = matched(k, height, well.inner_edge(), well.outer_edge()).omega;
    let shifted = w - TAU * ((w - reference) / TAU).round();
    if (shifted - reference).abs() > PI / 2.0 {
        return Err(IonizationError::BranchJump { k, step: h });
    }
    Ok(shifted)
}

/// `-dOmega/dV0` by central differences with step `h` and one Richardson
/// level.
pub fn ionization_clock_time_with_step(
    k: f64,
    well: &WellSpec,
    h: f64,
) -> Result<f64, IonizationError> {
    check_k(k)?;
    let v0 = well.height();
    let reference = matched(k, v0, well.inner_edge(), well.outer_edge()).omega;
    let diff = |h: f64| -> Result<f64, IonizationError> {
        let up = omega_near(k, v0 + h, well, reference, h)?;
        let down = omega_near(k, v0 - h, well, reference, h)?;
        Ok((up - down) / (2.0 * h))
    };
    let coarse = diff(h)?;
    let fine = diff(0.5 * h)?;
    Ok(-(4.0 * fine - coarse) / 3.0)
}

/// Clock time `t_c(k) = -dOmega/dV0`, perturbing only the barrier height.
///
/// Starts from `h = 1e-5 V0`. Near narrow resonances `Omega` swings by `pi`
/// over a tiny range of `V0`, so the step is shrunk until the phase moves by
/// at most `1e-3` per step; a detected branch jump also shrinks the step.
pub fn ionization_clock_time(k: f64, well: &WellSpec) -> Result<f64, IonizationError> {
    let v0 = well.height();
    let floor = 1e-13 * v0;
    let mut h = HEIGHT_STEP * v0;
    loop {
        match ionization_clock_time_with_step(k, well, h) {
            Ok(t) if t.abs() * h <= PHASE_STEP || h <= floor => return Ok(t),
            Ok(t) => h = (PHASE_STEP / t.abs()).min(0.5 * h).max(floor),
            Err(IonizationError::BranchJump { .. }) if h > floor => h = (0.1 * h).max(floor),
            Err(e) => return Err(e),
        }
    }
}

/// `-dOmega/dV0` from the exact `s`-derivatives of the fundamental
/// solutions (`ds/dV0 = 1` at fixed `k`). Near narrow resonances the
/// difference quotient of [`ionization_clock_time`] carries the roundoff of
/// the growing barrier solution divided by a tiny step; this form does not,
/// so its `k`-derivative stays smooth right up to the caustic.
pub fn ionization_clock_time_analytic(k: f64, well: &WellSpec) -> Result<f64, IonizationError> {
    check_k(k)?;
    let (a, d) = (well.inner_edge(), well.width());
    let s = well.height() - k * k;
    let (c, sn) = propagator::fundamental(s, d);
    let (dc, dsn) = propagator::fundamental_ds(s, d);
    let (ua, dua) = ((k * a).sin(), k * (k * a).cos());
    let ub = ua * c + dua * sn;
    let dub = ua * s * sn + dua * c;
    let ub_s = ua * dc + dua * dsn;
    let dub_s = ua * (sn + s * dsn) + dua * dc;
    let alpha2 = ub * ub + dub * dub / (k * k);
    if !(alpha2 > 0.0 && alpha2.is_finite()) {
        return Err(IonizationError::SingularMatching(k));
    }
    Ok((ub * dub_s - dub * ub_s) / (k * alpha2))
}
