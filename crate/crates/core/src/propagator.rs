//! Real solutions of `-u'' + V u = k^2 u` across a region of constant
//! potential, parametrised by `s = V - k^2`.
//!
//! The two fundamental solutions are
//!
//! * `c(s, d) = cosh(sqrt(s) d)` (or `cos(sqrt(-s) d)` for `s < 0`)
//! * `sn(s, d) = sinh(sqrt(s) d) / sqrt(s)` (or `sin(sqrt(-s) d) / sqrt(-s)`)
//!
//! Both are entire in `s`, so the classically forbidden (`s > 0`) and allowed
//! (`s < 0`) regimes share one code path and `s = 0` is a regular point.

/// Below this `|s| d^2` the Taylor series in `s` is used.
const SERIES_THRESHOLD: f64 = 1e-3;

/// `(c, sn)` for a region of length `d`.
pub fn fundamental(s: f64, d: f64) -> (f64, f64) {
    let z = s * d * d;
    if z.abs() < SERIES_THRESHOLD {
        // cosh(x) = sum z^n / (2n)!, sinh(x)/x = sum z^n / (2n+1)!, x^2 = z
        let c = 1.0 + z / 2.0 * (1.0 + z / 12.0 * (1.0 + z / 30.0 * (1.0 + z / 56.0)));
        let sn = d * (1.0 + z / 6.0 * (1.0 + z / 20.0 * (1.0 + z / 42.0 * (1.0 + z / 72.0))));
        (c, sn)
    } else if s > 0.0 {
        let q = s.sqrt();
        (f64::cosh(q * d), f64::sinh(q * d) / q)
    } else {
        let kappa = (-s).sqrt();
        (f64::cos(kappa * d), f64::sin(kappa * d) / kappa)
    }
}

/// Derivatives `(dc/ds, dsn/ds)` of the fundamental solutions in `s`.
///
/// `dc/ds = d sn / 2` and `dsn/ds = (d c - sn) / 2s`; the latter cancels
/// for small `s d^2`, where its power series is summed instead.
pub fn fundamental_ds(s: f64, d: f64) -> (f64, f64) {
    let (c, sn) = fundamental(s, d);
    let z = s * d * d;
    let dsn = if z.abs() < 1.0 {
        // dsn/ds = d^3 sum_{n>=1} n z^(n-1) / (2n+1)!
        let (mut sum, mut fact, mut pow) = (0.0, 6.0, 1.0);
        for n in 1..30 {
            let term = n as f64 * pow / fact;
            sum += term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
            pow *= z;
            fact *= ((2 * n + 2) * (2 * n + 3)) as f64;
        }
        d * d * d * sum
    } else {
        (d * c - sn) / (2.0 * s)
    };
    (0.5 * d * sn, dsn)
}

/// Propagates `(u, u')` across a constant-potential region of length `d`.
pub fn propagate(s: f64, d: f64, value: f64, slope: f64) -> (f64, f64) {
    let (c, sn) = fundamental(s, d);
    (value * c + slope * sn, value * s * sn + slope * c)
}
