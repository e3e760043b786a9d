//! Closed-form overlaps `S(k) = int_0^inf phi(x) psi_k(x) dx` of an initial
//! state with the continuum eigenstates.
//!
//! Writing `psi_k = A u` with `u` the unnormalized matched solution, the
//! ground-state overlap splits into
//!
//! * `(0, a)`: `int sin(k0 x) sin(k x)`,
//! * `(a, b)`: `sin(k0 a) int_0^d e^{-q0 t} u(a + t) dt`. Since `u'' = s u`,
//!   integrating by parts twice gives
//!   `[u'(a) + q0 u(a) - e^{-q0 d} (u'(b) + q0 u(b))] / (q0^2 - s)`, where
//!   `q0^2 - s = k^2 - k0^2`. Close to `k0` the exponential form is used,
//! * `(b, inf)`: `sin(k0 a) e^{-q0 d} (q0 u(b) + u'(b)) / (q0^2 + k^2)`.

use super::bound::BoundState;
use super::continuum::{eigenstate_coefficients, ContinuumEigenstate};
use super::{InitialState, IonizationError, WellSpec};

/// Below this `|k^2 - k0^2| / q0^2` the by-parts denominator is avoided.
const NEAR_K0: f64 = 1e-2;

/// `sin(x) / x`.
fn sinc(x: f64) -> f64 {
    if x.abs() < 1e-4 {
        1.0 - x * x / 6.0
    } else {
        x.sin() / x
    }
}

/// `(1 - e^{-y}) / y`.
fn exprel_neg(y: f64) -> f64 {
    if y.abs() < 1e-5 {
        1.0 - y / 2.0 + y * y / 6.0
    } else {
        -(-y).exp_m1() / y
    }
}

/// `int_0^a sin(k0 x) sin(k x) dx`.
pub(crate) fn sine_overlap(k0: f64, k: f64, a: f64) -> f64 {
    0.5 * a * (sinc((k - k0) * a) - sinc((k + k0) * a))
}

/// `int_0^d e^{-p t} u(t) dt` for `u(0) = u0`, `u'(0) = du0` and `u'' = s u`.
fn damped_barrier_integral(p: f64, s: f64, d: f64, u0: f64, du0: f64) -> f64 {
    let gap = p * p - s;
    if gap.abs() > NEAR_K0 * p * p || s <= 0.0 {
        let (ud, dud) = crate::propagator::propagate(s, d, u0, du0);
        (du0 + p * u0 - (-p * d).exp() * (dud + p * ud)) / gap
    } else {
        // s close to p^2 > 0: u = u0 cosh(qt) + du0 sinh(qt) / q.
        let q = s.sqrt();
        let e_minus = d * exprel_neg((p - q) * d);
        let e_plus = d * exprel_neg((p + q) * d);
        u0 * 0.5 * (e_minus + e_plus) + du0 * (e_minus - e_plus) / (2.0 * q)
    }
}

fn ground_overlap(bound: &BoundState, e: &ContinuumEigenstate, well: &WellSpec) -> f64 {
    let (a, d) = (well.inner_edge(), well.width());
    let (k, k0, q0) = (e.k, bound.k0(), bound.q0());
    let amp = e.coef_a;
    let inner = sine_overlap(k0, k, a);
    let (ua, dua) = ((k * a).sin(), k * (k * a).cos());
    let barrier = damped_barrier_integral(q0, e.barrier_parameter(), d, ua, dua);
    let (ub, dub) = crate::propagator::propagate(e.barrier_parameter(), d, ua, dua);
    let outer = (-q0 * d).exp() * (q0 * ub + dub) / (q0 * q0 + k * k);
    bound.norm() * amp * (inner + (k0 * a).sin() * (barrier + outer))
}

/// `S(k)` for an eigenstate already matched at `k`.
pub fn overlap_with(initial: &InitialState, e: &ContinuumEigenstate, well: &WellSpec) -> f64 {
    match initial {
        InitialState::Ground(bound) => ground_overlap(bound, e, well),
        InitialState::ConfinedSine { k0 } => {
            let a = well.inner_edge();
            (2.0 / a).sqrt() * e.coef_a * sine_overlap(*k0, e.k, a)
        }
    }
}

pub fn overlap_s(k: f64, initial: &InitialState, well: &WellSpec) -> Result<f64, IonizationError> {
    let e = eigenstate_coefficients(k, well)?;
    Ok(overlap_with(initial, &e, well))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ionization::InitialStateSpec;
    use crate::numerics::{self, Interval};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    /// Direct quadrature of `phi psi_k`, piece by piece, truncated where the
    /// initial-state tail is below `1e-14`.
    fn brute_force(k: f64, initial: &InitialState, well: &WellSpec) -> f64 {
        let e = eigenstate_coefficients(k, well).unwrap();
        let phi = |x: f64| initial.wavefunction(x, well);
        let f = |x: f64| phi(x) * e.wavefunction(x);
        let (a, b) = (well.inner_edge(), well.outer_edge());
        let end = match initial {
            InitialState::Ground(s) => b.max(a + (1e-14f64).ln().abs() / s.q0()),
            InitialState::ConfinedSine { .. } => b,
        };
        let mut edges = vec![0.0, a, b];
        // Split the oscillatory tail into short panels.
        let mut x = b;
        while x < end {
            x = (x + 1.0).min(end);
            edges.push(x);
        }
        edges
            .windows(2)
            .filter(|w| w[1] > w[0])
            .map(|w| {
                numerics::integrate(f, Interval::new(w[0], w[1]).unwrap(), 1e-12, 1e-15).unwrap()
            })
            .sum()
    }

    #[test]
    fn closed_form_matches_quadrature() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for b in [3.0, 5.0] {
            let well = WellSpec::new(7.0, 1.0, b).unwrap();
            let initial = InitialStateSpec::GroundState.resolve(&well).unwrap();
            for _ in 0..100 {
                let k = rng.random_range(1e-3..10.0);
                let closed = overlap_s(k, &initial, &well).unwrap();
                let direct = brute_force(k, &initial, &well);
                assert!(
                    (closed - direct).abs() < 1e-8,
                    "b = {b}, k = {k}: {closed} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn closed_form_near_bound_state_energy() {
        let well = WellSpec::new(7.0, 1.0, 3.0).unwrap();
        let initial = InitialStateSpec::GroundState.resolve(&well).unwrap();
        let k0 = match &initial {
            InitialState::Ground(s) => s.k0(),
            _ => unreachable!(),
        };
        for dk in [0.0, 1e-12, -1e-9, 1e-6, -3e-4, 2e-2, -2e-2] {
            let k = k0 + dk;
            let closed = overlap_s(k, &initial, &well).unwrap();
            let direct = brute_force(k, &initial, &well);
            assert!(
                (closed - direct).abs() < 1e-8 * closed.abs().max(1.0),
                "dk = {dk}"
            );
        }
    }

    #[test]
    fn confined_sine_matches_quadrature() {
        let well = WellSpec::new(11.0, 1.0, 2.0).unwrap();
        let initial = InitialStateSpec::ConfinedSine { k0: PI }
            .resolve(&well)
            .unwrap();
        for k in [0.05, 1.0, PI, PI + 1e-7, 3.3, 7.0, 25.0] {
            let closed = overlap_s(k, &initial, &well).unwrap();
            let direct = brute_force(k, &initial, &well);
            assert!((closed - direct).abs() < 1e-10, "k = {k}");
        }
    }

    #[test]
    fn branch_switch_is_continuous() {
        let (p, d) = (2.3, 2.0);
        let s0 = p * p;
        for rel in [
            NEAR_K0 * 0.999,
            NEAR_K0 * 1.001,
            -NEAR_K0 * 0.999,
            -NEAR_K0 * 1.001,
        ] {
            let s = s0 * (1.0 - rel);
            let v = damped_barrier_integral(p, s, d, 0.7, -1.3);
            let direct = numerics::integrate(
                |t| (-p * t).exp() * crate::propagator::propagate(s, t, 0.7, -1.3).0,
                Interval::new(0.0, d).unwrap(),
                1e-13,
                1e-15,
            )
            .unwrap();
            assert!((v - direct).abs() < 1e-12, "rel = {rel}");
        }
    }
}
