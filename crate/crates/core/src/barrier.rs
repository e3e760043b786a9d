//! Gaussian packet scattering off a rectangular barrier occupying `(-L, L)`.
//!
//! Units are Rydberg atomic units (`hbar = 2m = 1`), so `E = k^2` and inside
//! the barrier `q = sqrt(V0 - k^2)`. Above the barrier `q` becomes imaginary;
//! every expression here is written in terms of the entire functions of
//! `s = q^2` from [`crate::propagator`], so both regimes and the point
//! `k^2 = V0` share one formula.

use std::f64::consts::PI;

use num_complex::Complex64;
use thiserror::Error;

use crate::distribution::{self, SpectralDensity};
use crate::numerics::{self, Interval, NumericsError};
use crate::propagator;

pub type ComplexAmplitude = Complex64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BarrierError {
    #[error("invalid parameter {name} = {value}: {constraint}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        constraint: &'static str,
    },
    #[error("wave number must be positive, got k = {0}")]
    Domain(f64),
    #[error("transmitted density has vanishing norm on support [{lo}, {hi}]")]
    VanishingNorm { lo: f64, hi: f64 },
    #[error("grid must have at least 16 points, got {0}")]
    GridTooSmall(usize),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
    #[error(transparent)]
    Distribution(#[from] crate::distribution::DistributionError),
}

/// Rectangular barrier of height `height` on `(-half_width, half_width)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BarrierSpec {
    height: f64,
    half_width: f64,
}

impl BarrierSpec {
    pub fn new(height: f64, half_width: f64) -> Result<Self, BarrierError> {
        if !(height > 0.0 && height.is_finite()) {
            return Err(BarrierError::InvalidParameter {
                name: "height",
                value: height,
                constraint: "must be finite and > 0",
            });
        }
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(BarrierError::InvalidParameter {
                name: "half_width",
                value: half_width,
                constraint: "must be finite and > 0",
            });
        }
        Ok(Self { height, half_width })
    }

    /// Barrier with full width `2L`.
    pub fn with_width(height: f64, width: f64) -> Result<Self, BarrierError> {
        Self::new(height, 0.5 * width)
    }

    pub fn height(&self) -> f64 {
        self.height
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn width(&self) -> f64 {
        2.0 * self.half_width
    }
}

/// Incident Gaussian packet centred at `x0` with spatial width `sigma` and
/// mean wave number `k0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GaussianPacketSpec {
    k0: f64,
    sigma: f64,
    x0: f64,
}

impl GaussianPacketSpec {
    pub fn new(k0: f64, sigma: f64, x0: f64) -> Result<Self, BarrierError> {
        if !(k0 > 0.0 && k0.is_finite()) {
            return Err(BarrierError::InvalidParameter {
                name: "k0",
                value: k0,
                constraint: "must be finite and > 0",
            });
        }
        if !(sigma > 0.0 && sigma.is_finite()) {
            return Err(BarrierError::InvalidParameter {
                name: "sigma",
                value: sigma,
                constraint: "must be finite and > 0",
            });
        }
        if !x0.is_finite() {
            return Err(BarrierError::InvalidParameter {
                name: "x0",
                value: x0,
                constraint: "must be finite",
            });
        }
        Ok(Self { k0, sigma, x0 })
    }

    /// Packet starting at `x0 = -8 sigma`.
    pub fn standard(k0: f64, sigma: f64) -> Result<Self, BarrierError> {
        Self::new(k0, sigma, -8.0 * sigma)
    }

    pub fn k0(&self) -> f64 {
        self.k0
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn x0(&self) -> f64 {
        self.x0
    }

    pub fn energy(&self) -> f64 {
        self.k0 * self.k0
    }

    /// Spread of `|A(k)|^2` in wave number.
    pub fn sigma_k(&self) -> f64 {
        0.5 / self.sigma
    }

    /// True when the packet starts far enough left to have negligible
    /// overlap with a barrier at the origin.
    pub fn is_well_separated(&self) -> bool {
        self.x0 <= -8.0 * self.sigma
    }
}

fn check_k(k: f64) -> Result<(), BarrierError> {
    if k > 0.0 && k.is_finite() {
        Ok(())
    } else {
        Err(BarrierError::Domain(k))
    }
}

/// Stationary transmission amplitude `T(k)` for a plane wave incident from
/// the left, with the transmitted wave `T e^{ikx}` for `x > L`.
pub fn transmission_amplitude(
    k: f64,
    barrier: &BarrierSpec,
) -> Result<ComplexAmplitude, BarrierError> {
    check_k(k)?;
    let v0 = barrier.height;
    let half = barrier.half_width;
    let d = 2.0 * half;
    let s = v0 - k * k;
    let i = Complex64::i();
    let phase = Complex64::from_polar(1.0, -2.0 * k * half);
    let x = if s > 0.0 { s.sqrt() * d } else { 0.0 };
    let t = if x > 20.0 {
        // Opaque barrier: factor e^{2Lq}/2 out of cosh and sinh.
        let q = s.sqrt();
        let e2 = (-2.0 * x).exp();
        let denom = (2.0 * k * k - v0) * (1.0 - e2) / q + 2.0 * i * k * (1.0 + e2);
        2.0 * i * k * phase * (2.0 * (-x).exp()) / denom
    } else {
        let (c, sn) = propagator::fundamental(s, d);
        let denom = (2.0 * k * k - v0) * sn + 2.0 * i * k * c;
        2.0 * i * k * phase / denom
    };
    Ok(t)
}

/// Spectral amplitude of the incident Gaussian packet over free plane waves.
pub fn spectral_amplitude(k: f64, packet: &GaussianPacketSpec) -> ComplexAmplitude {
    let sigma = packet.sigma;
    let dk = k - packet.k0;
    let modulus = (2.0 / PI).powf(0.25) * sigma.sqrt() * (-sigma * sigma * dk * dk).exp();
    Complex64::from_polar(modulus, -dk * packet.x0)
}

/// `|A(k)|^2`, the incident wave-number density.
pub fn incident_density(k: f64, packet: &GaussianPacketSpec) -> f64 {
    let sigma = packet.sigma;
    let dk = k - packet.k0;
    (2.0 / PI).sqrt() * sigma * (-2.0 * sigma * sigma * dk * dk).exp()
}

/// Stationary transmission clock time `t_c^T(k)` of a clock running inside
/// the barrier.
pub fn clock_time(k: f64, barrier: &BarrierSpec) -> Result<f64, BarrierError> {
    check_k(k)?;
    Ok(clock_time_unchecked(k, barrier.height, barrier.half_width))
}

fn clock_time_unchecked(k: f64, v0: f64, half: f64) -> f64 {
    let k2 = k * k;
    let s = v0 - k2;
    let y = 4.0 * half * half * s;
    if y.abs() < 1e-3 {
        // tanh(x)/x and sech^2(x) as series in y = x^2, x = 2qL.
        let tanhc =
            1.0 + y * (-1.0 / 3.0 + y * (2.0 / 15.0 + y * (-17.0 / 315.0 + y * 62.0 / 2835.0)));
        let sech2 = 1.0 + y * (-1.0 + y * (2.0 / 3.0 + y * (-17.0 / 45.0 + y * 62.0 / 315.0)));
        let gap = 2.0 / 3.0
            + y * (-8.0 / 15.0
                + y * (34.0 / 105.0 + y * (-496.0 / 2835.0 + y * 13820.0 / 155925.0)));
        let th = 2.0 * half * tanhc;
        let g = 8.0 * half * half * half * gap;
        tanh_form(k2, s, half, th, sech2, g)
    } else if s > 0.0 {
        let q = s.sqrt();
        let x = 2.0 * q * half;
        let th = x.tanh() / q;
        let sech = if x < 350.0 {
            1.0 / x.cosh()
        } else {
            2.0 * (-x).exp()
        };
        let sech2 = sech * sech;
        let g = (th - 2.0 * half * sech2) / s;
        tanh_form(k2, s, half, th, sech2, g)
    } else {
        // Multiply through by cos^2 so poles of tan/sec never appear.
        let kappa = (-s).sqrt();
        let z = 2.0 * kappa * half;
        let (sz, cz) = z.sin_cos();
        let sn = sz / kappa;
        let sc = sn * cz;
        let h = (sc - 2.0 * half) / s;
        let num = sc + k2 * h + 2.0 * half;
        let den = 4.0 * k2 * cz * cz + (s - k2).powi(2) * sn * sn;
        k2.sqrt() * num / den
    }
}

fn tanh_form(k2: f64, s: f64, half: f64, th: f64, sech2: f64, g: f64) -> f64 {
    let num = th + k2 * g + 2.0 * half * sech2;
    let den = 4.0 * k2 + (s - k2).powi(2) * th * th;
    k2.sqrt() * num / den
}

/// Default truncated support for the transmitted density: the incident
/// `k0 +- 8 sigma_k` window, extended upward while `|A T|^2` is still above
/// `1e-16` of its running peak (thick barriers shift weight to larger `k`).
pub fn default_support(
    packet: &GaussianPacketSpec,
    barrier: &BarrierSpec,
) -> Result<Interval, BarrierError> {
    let sk = packet.sigma_k();
    let lo = (packet.k0 - 8.0 * sk).max(1e-6);
    let base_hi = packet.k0 + 8.0 * sk;
    let cap = packet.k0 + 50.0 * sk;
    let step = sk / 16.0;
    let weight = |k: f64| -> Result<f64, BarrierError> {
        Ok(incident_density(k, packet) * transmission_amplitude(k, barrier)?.norm_sqr())
    };
    let mut peak = 0.0_f64;
    let mut k = lo;
    let mut hi = base_hi;
    while k <= cap {
        let w = weight(k)?;
        peak = peak.max(w);
        if k >= base_hi && w < 1e-16 * peak {
            hi = k;
            break;
        }
        hi = k;
        k += step;
    }
    Ok(Interval::new(lo, hi.max(base_hi))?)
}

/// Above-barrier transmission resonances `k^2 = V0 + (n pi / 2L)^2` up to
/// `k_max`, where `|T| = 1` and the clock time peaks. In thick barriers
/// they are narrower than any practical uniform grid.
pub fn resonance_wave_numbers(barrier: &BarrierSpec, k_max: f64) -> Vec<f64> {
    let mut out = Vec::new();
    for n in 1.. {
        let kappa = n as f64 * PI / barrier.width();
        let k = (barrier.height + kappa * kappa).sqrt();
        if k > k_max {
            break;
        }
        out.push(k);
    }
    out
}

/// Normalized transmitted wave-number density `N |A(k) T(k)|^2` on `n_grid`
/// uniform nodes over `support`, refined adaptively around the transmission
/// resonances and wherever linear interpolation is not accurate.
pub fn transmitted_density(
    packet: &GaussianPacketSpec,
    barrier: &BarrierSpec,
    support: Interval,
    n_grid: usize,
) -> Result<SpectralDensity, BarrierError> {
    if n_grid < 16 {
        return Err(BarrierError::GridTooSmall(n_grid));
    }
    if support.lo() <= 0.0 {
        return Err(BarrierError::Domain(support.lo()));
    }
    let vanishing = BarrierError::VanishingNorm {
        lo: support.lo(),
        hi: support.hi(),
    };
    let incident = numerics::integrate(
        |k| incident_density(k, packet),
        support,
        numerics::DEFAULT_REL_TOL,
        1e-14,
    )?;
    if incident < 1e-10 {
        return Err(vanishing);
    }

    let weight = |k: f64| {
        incident_density(k, packet)
            * transmission_amplitude(k, barrier).map_or(0.0, |t| t.norm_sqr())
    };
    let peak = distribution::uniform_grid(support, n_grid)
        .into_iter()
        .map(weight)
        .fold(0.0_f64, f64::max);
    if !(peak > 0.0) {
        return Err(vanishing);
    }
    let total = numerics::integrate(
        weight,
        support,
        numerics::DEFAULT_REL_TOL,
        1e-14 * peak * support.width(),
    )?;
    if !(total > 0.0) {
        return Err(vanishing);
    }
    let seeds = resonance_wave_numbers(barrier, support.hi());
    let (grid, density) =
        distribution::adaptive_table(&|k| weight(k) / total, support, n_grid, &seeds);
    Ok(SpectralDensity::from_table(grid, density, support)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn barrier(v0: f64, width: f64) -> BarrierSpec {
        BarrierSpec::with_width(v0, width).unwrap()
    }

    fn packet() -> GaussianPacketSpec {
        GaussianPacketSpec::standard(1.5, 5.0).unwrap()
    }

    /// Independent oracle: piecewise-constant matching in complex arithmetic.
    fn transfer_matrix_t(k: f64, v0: f64, half: f64) -> Complex64 {
        let i = Complex64::i();
        let kappa = Complex64::new(v0 - k * k, 0.0).sqrt();
        // Left: e^{ikx} + R e^{-ikx}; inside: F e^{kappa x} + G e^{-kappa x}; right: T e^{ikx}.
        // Match at x = L first for F, G in terms of T, then at x = -L.
        let el = |a: Complex64, x: f64| (a * x).exp();
        let ik = i * k;
        // At x = L: F e^{kL'} + G e^{-kL'} = T e^{ikL}; kappa (F e^{..} - G e^{..}) = ik T e^{ikL}.
        let et = el(ik, half);
        let f_over_t = et * (kappa + ik) / (2.0 * kappa) / el(kappa, half);
        let g_over_t = et * (kappa - ik) / (2.0 * kappa) / el(-kappa, half);
        // At x = -L: e^{-ikL} + R e^{ikL} = inside; ik (e^{-ikL} - R e^{ikL}) = inside'.
        let u = f_over_t * el(kappa, -half) + g_over_t * el(-kappa, -half);
        let du = kappa * (f_over_t * el(kappa, -half) - g_over_t * el(-kappa, -half));
        // incident amplitude per unit T: (u + du/(ik)) / (2 e^{-ikL})
        let inc = (u + du / ik) / (2.0 * el(ik, -half));
        1.0 / inc
    }

    #[test]
    fn zero_energy_limit() {
        let b = barrier(7.0, 2.0);
        let t = transmission_amplitude(1e-9, &b).unwrap();
        assert!(t.norm() < 1e-7);
    }

    #[test]
    fn matches_transfer_matrix_thick_barrier() {
        let b = barrier(7.0, 16.0);
        let t = transmission_amplitude(1.5, &b).unwrap().norm_sqr();
        let oracle = transfer_matrix_t(1.5, 7.0, 8.0).norm_sqr();
        assert!(((t - oracle) / oracle).abs() < 1e-10, "{t} vs {oracle}");
    }

    #[test]
    fn complex_amplitude_matches_transfer_matrix() {
        let b = barrier(7.0, 2.0);
        for k in [0.3, 1.5, 2.6, 2.7, 4.0] {
            let t = transmission_amplitude(k, &b).unwrap();
            let o = transfer_matrix_t(k, 7.0, 1.0);
            assert!(
                (t - o).norm() < 1e-12 * o.norm().max(1e-300),
                "k = {k}: {t} vs {o}"
            );
        }
    }

    #[test]
    fn continuous_at_barrier_top() {
        let v0: f64 = 7.0;
        let b = barrier(v0, 2.0);
        let k = v0.sqrt();
        let half = 1.0;
        // q -> 0 limit of the printed formula: 2ik e^{-2ikL} / (2ik + 2L k^2).
        let i = Complex64::i();
        let limit = 2.0 * i * k * Complex64::from_polar(1.0, -2.0 * k * half)
            / (2.0 * i * k + 2.0 * half * k * k);
        let at_top = transmission_amplitude(k, &b).unwrap();
        assert!((at_top - limit).norm() < 1e-12);
        let near = transmission_amplitude((v0 - 1e-12).sqrt(), &b).unwrap();
        assert!((near - limit).norm() < 1e-8);
    }

    #[test]
    fn transmission_probability_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let b = barrier(rng.random_range(0.5..20.0), rng.random_range(0.1..30.0));
            for _ in 0..1000 {
                let k = rng.random_range(1e-3..10.0);
                let t2 = transmission_amplitude(k, &b).unwrap().norm_sqr();
                assert!(t2 <= 1.0 + 1e-12 && t2 >= 0.0, "{t2}");
            }
        }
    }

    #[test]
    fn rejects_nonpositive_k() {
        let b = barrier(7.0, 2.0);
        assert_eq!(
            transmission_amplitude(0.0, &b),
            Err(BarrierError::Domain(0.0))
        );
        assert!(clock_time(-1.0, &b).is_err());
    }

    /// Paper-printed amplitude, valid for x0 = -8 sigma.
    fn printed_amplitude(k: f64, k0: f64, sigma: f64) -> Complex64 {
        let i = Complex64::i();
        let expo = 4.0 * k * sigma * (k0 * sigma + 4.0 * i)
            - sigma * (k + k0) * (k * sigma + k0 * sigma + 8.0 * i);
        (2.0 / PI).powf(0.25) * sigma.sqrt() * expo.exp()
    }

    #[test]
    fn spectral_amplitude_matches_printed_form() {
        let p = packet();
        for j in 0..=300 {
            let k = 3.0 * j as f64 / 300.0;
            let a = spectral_amplitude(k, &p);
            let printed = printed_amplitude(k, 1.5, 5.0);
            assert!((a.norm() - printed.norm()).abs() <= 1e-12 * printed.norm().max(1e-300));
            // Phases agree too when the modulus is representable.
            if printed.norm() > 1e-200 {
                assert!((a - printed).norm() <= 1e-11 * printed.norm(), "k = {k}");
            }
            let expected = (2.0 / PI).sqrt() * 5.0 * (-50.0 * (k - 1.5f64).powi(2)).exp();
            assert!((a.norm_sqr() - expected).abs() <= 1e-12 * expected.max(1e-300));
        }
    }

    #[test]
    fn spectral_amplitude_peak() {
        let a = spectral_amplitude(1.5, &packet());
        assert!((a.norm() - (2.0 / PI).powf(0.25) * 5f64.sqrt()).abs() < 1e-14);
        assert!(a.arg().abs() < 1e-15);
    }

    #[test]
    fn packet_is_unit_norm() {
        let p = packet();
        let lo = 1.5 - 8.0 * p.sigma_k();
        let hi = 1.5 + 8.0 * p.sigma_k();
        let n = numerics::integrate(
            |k| spectral_amplitude(k, &p).norm_sqr(),
            Interval::new(lo, hi).unwrap(),
            1e-12,
            1e-14,
        )
        .unwrap();
        assert!((n - 1.0).abs() < 1e-9, "{n}");
    }

    #[test]
    fn opaque_limit_of_clock_time() {
        let (v0, k) = (7.0_f64, 1.5_f64);
        let q = (v0 - k * k).sqrt();
        let t = clock_time(k, &barrier(v0, 50.0)).unwrap();
        assert!((t - k / (q * v0)).abs() < 1e-6);
    }

    /// -d(arg T)/dV0 by central differences of the barrier height.
    fn phase_time_oracle(k: f64, v0: f64, width: f64) -> f64 {
        let eta = 1e-6;
        let arg = |v: f64| transfer_matrix_t(k, v, 0.5 * width).arg();
        let mut d = arg(v0 + eta) - arg(v0 - eta);
        if d > PI {
            d -= 2.0 * PI;
        } else if d < -PI {
            d += 2.0 * PI;
        }
        -d / (2.0 * eta)
    }

    #[test]
    fn clock_time_is_phase_derivative_wrt_height() {
        for (k, width) in [(1.5, 2.0), (0.4, 2.0), (2.5, 3.0), (3.0, 2.0), (5.0, 1.0)] {
            let t = clock_time(k, &barrier(7.0, width)).unwrap();
            let oracle = phase_time_oracle(k, 7.0, width);
            assert!(
                (t - oracle).abs() < 1e-6 * oracle.abs().max(1.0),
                "k = {k}: {t} vs {oracle}"
            );
        }
    }

    #[test]
    fn empty_barrier_has_zero_clock_time() {
        let t = clock_time(1.5, &barrier(7.0, 1e-14)).unwrap();
        assert!(t.abs() < 1e-12);
    }

    #[test]
    fn clock_time_continuous_across_barrier_top() {
        let v0: f64 = 7.0;
        for width in [0.5, 2.0, 16.0] {
            let b = barrier(v0, width);
            let below = clock_time((v0 * (1.0 - 1e-8)).sqrt(), &b).unwrap();
            let above = clock_time((v0 * (1.0 + 1e-8)).sqrt(), &b).unwrap();
            assert!(((below - above) / below).abs() < 1e-4, "{below} {above}");
        }
    }

    #[test]
    fn clock_time_branches_agree_at_series_threshold() {
        let (v0, half) = (7.0_f64, 1.0_f64);
        for y in [1.001e-3, -1.001e-3, 0.999e-3, -0.999e-3] {
            let s = y / (4.0 * half * half);
            let k = (v0 - s).sqrt();
            let t = clock_time_unchecked(k, v0, half);
            let t2 = clock_time_unchecked(k, v0 * (1.0 + 1e-13), half);
            assert!((t - t2).abs() < 1e-9 * t.abs());
        }
        // both sides of the threshold
        let s_in = 0.9999e-3 / 4.0;
        let s_out = 1.0001e-3 / 4.0;
        let a = clock_time_unchecked((v0 - s_in).sqrt(), v0, half);
        let b = clock_time_unchecked((v0 - s_out).sqrt(), v0, half);
        assert!((a - b).abs() < 1e-7 * a.abs());
    }

    #[test]
    fn hartman_saturation_is_monotone() {
        let (v0, k) = (7.0_f64, 1.5_f64);
        let limit = k / ((v0 - k * k).sqrt() * v0);
        let gaps: Vec<f64> = [2.0, 3.0, 4.0]
            .iter()
            .map(|&w| (clock_time(k, &barrier(v0, w)).unwrap() - limit).abs())
            .collect();
        assert!(gaps[0] > gaps[1] && gaps[1] > gaps[2], "{gaps:?}");
        assert!((clock_time(k, &barrier(v0, 20.0)).unwrap() - limit).abs() < 1e-14);
    }

    fn grid_mode(rho: &SpectralDensity) -> f64 {
        let (i, _) = rho
            .density()
            .iter()
            .enumerate()
            .fold(
                (0, f64::MIN),
                |acc, (i, &v)| if v > acc.1 { (i, v) } else { acc },
            );
        rho.grid()[i]
    }

    #[test]
    fn transmitted_packet_speeds_up() {
        let p = packet();
        let b = barrier(7.0, 2.0);
        let rho = transmitted_density(&p, &b, default_support(&p, &b).unwrap(), 4096).unwrap();
        assert!(grid_mode(&rho) > 1.5);
        assert!(rho.density().iter().all(|&v| v >= 0.0));
        assert!((rho.trapezoid_total() - 1.0).abs() < 1e-8);
        assert!(rho.norm_residual() < 1e-8, "{}", rho.norm_residual());
    }

    #[test]
    fn free_particle_density_peaks_at_k0() {
        let p = packet();
        let b = barrier(1e-12, 2.0);
        let support = default_support(&p, &b).unwrap();
        let rho = transmitted_density(&p, &b, support, 4096).unwrap();
        let step = support.width() / 4095.0;
        assert!((grid_mode(&rho) - 1.5).abs() <= step);
    }

    #[test]
    fn thick_barrier_has_more_above_barrier_weight() {
        let p = packet();
        let top = 7f64.sqrt();
        let weight_above = |width: f64| {
            let b = barrier(7.0, width);
            let rho = transmitted_density(&p, &b, default_support(&p, &b).unwrap(), 4096).unwrap();
            1.0 - rho.cumulative_at(top)
        };
        let thin = weight_above(2.0);
        let thick = weight_above(16.0);
        assert!(thick > thin, "{thick} vs {thin}");
        assert!(thick > 0.0);
    }

    #[test]
    fn support_missing_the_packet_is_an_error() {
        let p = packet();
        let b = barrier(7.0, 2.0);
        let err = transmitted_density(&p, &b, Interval::new(6.0, 7.0).unwrap(), 64).unwrap_err();
        assert!(matches!(err, BarrierError::VanishingNorm { .. }));
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(BarrierSpec::new(-1.0, 1.0).is_err());
        assert!(BarrierSpec::new(1.0, 0.0).is_err());
        assert!(GaussianPacketSpec::new(0.0, 1.0, -8.0).is_err());
        assert!(GaussianPacketSpec::new(1.0, -1.0, -8.0).is_err());
        assert!(!GaussianPacketSpec::new(1.5, 5.0, 0.0)
            .unwrap()
            .is_well_separated());
    }
}
