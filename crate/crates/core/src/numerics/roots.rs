use super::{Bracket, Interval, NumericsError};

const DEFAULT_ROOT_ITERATIONS: usize = 200;

/// Samples `f` on a uniform `n_grid`-point grid and returns one bracket per
/// sign change. Grid nodes where `f` is exactly zero yield degenerate
/// brackets.
pub fn find_brackets<F>(f: F, interval: Interval, n_grid: usize) -> Vec<Bracket>
where
    F: Fn(f64) -> f64,
{
    let n = n_grid.max(2);
    let step = interval.width() / (n - 1) as f64;
    let xs: Vec<f64> = (0..n)
        .map(|i| {
            if i == n - 1 {
                interval.hi()
            } else {
                interval.lo() + step * i as f64
            }
        })
        .collect();
    let fs: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
    brackets_from_samples(&xs, &fs)
}

/// Bracket scan over pre-computed samples on an arbitrary increasing grid.
/// Non-finite samples break the scan locally: no bracket is reported across
/// them.
pub fn brackets_from_samples(xs: &[f64], fs: &[f64]) -> Vec<Bracket> {
    debug_assert_eq!(xs.len(), fs.len());
    let mut out = Vec::new();
    for (i, (&x, &fx)) in xs.iter().zip(fs).enumerate() {
        if fx == 0.0 {
            out.push(Bracket::exact(x));
            continue;
        }
        if let (Some(&xn), Some(&fxn)) = (xs.get(i + 1), fs.get(i + 1)) {
            if fx.is_finite() && fxn.is_finite() && fxn != 0.0 && (fx < 0.0) != (fxn < 0.0) {
                out.push(Bracket {
                    lo: x,
                    hi: xn,
                    f_lo: fx,
                    f_hi: fxn,
                });
            }
        }
    }
    out
}

/// Brent's method on a sign-change bracket. The returned root is always
/// inside the bracket and its sign change is confined to a width of at most
/// `rel_tol * max(1, |r|)`.
pub fn find_root<F>(f: F, bracket: Bracket, rel_tol: f64) -> Result<f64, NumericsError>
where
    F: Fn(f64) -> f64,
{
    find_root_with_budget(f, bracket, rel_tol, DEFAULT_ROOT_ITERATIONS)
}

pub fn find_root_with_budget<F>(
    f: F,
    bracket: Bracket,
    rel_tol: f64,
    max_iterations: usize,
) -> Result<f64, NumericsError>
where
    F: Fn(f64) -> f64,
{
    if bracket.is_exact() {
        return Ok(bracket.lo);
    }
    let (mut a, mut b) = (bracket.lo, bracket.hi);
    let (mut fa, mut fb) = (bracket.f_lo, bracket.f_hi);
    if fa * fb > 0.0 {
        return Err(NumericsError::InvalidBracket {
            lo: a,
            hi: b,
            f_lo: fa,
            f_hi: fb,
        });
    }
    if fa == 0.0 {
        return Ok(a);
    }
    if fb == 0.0 {
        return Ok(b);
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;
    for _ in 0..max_iterations {
        if (fb > 0.0) == (fc > 0.0) {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }
        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * rel_tol * b.abs().max(1.0);
        let m = 0.5 * (c - b);
        if m.abs() <= tol || fb == 0.0 {
            return Ok(b);
        }
        if e.abs() >= tol && fa.abs() > fb.abs() {
            // Inverse quadratic interpolation, or secant when only two points.
            let s = fb / fa;
            let (mut p, mut q) = if a == c {
                (2.0 * m * s, 1.0 - s)
            } else {
                let qa = fa / fc;
                let r = fb / fc;
                (
                    s * (2.0 * m * qa * (qa - r) - (b - a) * (r - 1.0)),
                    (qa - 1.0) * (r - 1.0) * (s - 1.0),
                )
            };
            if p > 0.0 {
                q = -q;
            } else {
                p = -p;
            }
            if 2.0 * p < (3.0 * m * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = m;
                e = m;
            }
        } else {
            d = m;
            e = m;
        }
        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(m) };
        fb = f(b);
        if !fb.is_finite() {
            return Err(NumericsError::NonFiniteIntegrand { x: b });
        }
    }
    let (lo, hi) = if b < c { (b, c) } else { (c, b) };
    Err(NumericsError::RootBudgetExceeded {
        lo,
        hi,
        iterations: max_iterations,
    })
}
