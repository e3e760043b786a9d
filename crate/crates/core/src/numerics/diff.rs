use super::NumericsError;

/// Central difference with step `h = scale * max(1, |x|)` and one level of
/// Richardson extrapolation (`(4 D(h/2) - D(h)) / 3`).
pub fn derivative<F>(f: F, x: f64, scale: f64) -> Result<f64, NumericsError>
where
    F: Fn(f64) -> f64,
{
    derivative_with_step(f, x, scale * x.abs().max(1.0))
}

/// Same as [`derivative`] with an explicit absolute step.
pub fn derivative_with_step<F>(f: F, x: f64, h: f64) -> Result<f64, NumericsError>
where
    F: Fn(f64) -> f64,
{
    if !(h > 0.0 && h.is_finite()) {
        return Err(NumericsError::InvalidArgument(format!(
            "derivative step must be positive, got {h}"
        )));
    }
    let eval = |p: f64| {
        let y = f(p);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(NumericsError::NonFiniteDerivative { x: p })
        }
    };
    let coarse = (eval(x + h)? - eval(x - h)?) / (2.0 * h);
    let half = 0.5 * h;
    let fine = (eval(x + half)? - eval(x - half)?) / h;
    Ok((4.0 * fine - coarse) / 3.0)
}
