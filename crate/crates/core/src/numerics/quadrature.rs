use std::cmp::Ordering;
use std::collections::BinaryHeap;

use super::{Interval, NumericsError};

// Kronrod abscissae for the 15-point rule, positive half (the 7-point Gauss
// nodes sit at the odd indices).
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

const DEFAULT_SUBDIVISION_BUDGET: usize = 4000;

/// One application of the 7/15 Gauss-Kronrod pair.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureEstimate {
    pub value: f64,
    pub error: f64,
}

/// Applies the G7/K15 pair once on `[a, b]`, returning the Kronrod value and
/// a QUADPACK-style error estimate.
pub fn gauss_kronrod_15<F>(f: &F, a: f64, b: f64) -> Result<QuadratureEstimate, NumericsError>
where
    F: Fn(f64) -> f64 + ?Sized,
{
    gk15_with_floor(f, a, b).map(|(est, _)| est)
}

/// The estimate together with its roundoff floor `50 eps int |f|`.
fn gk15_with_floor<F>(f: &F, a: f64, b: f64) -> Result<(QuadratureEstimate, f64), NumericsError>
where
    F: Fn(f64) -> f64 + ?Sized,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |x: f64| -> Result<f64, NumericsError> {
        let y = f(x);
        if y.is_finite() {
            Ok(y)
        } else {
            Err(NumericsError::NonFiniteIntegrand { x })
        }
    };

    let fc = eval(center)?;
    let mut res_k = fc * WGK[7];
    let mut res_g = fc * WG[3];
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 7];
    let mut fv2 = [0.0; 7];
    for j in 0..7 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }
    let mean = 0.5 * res_k;
    let mut res_asc = WGK[7] * (fc - mean).abs();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }
    let scale = half.abs();
    let value = res_k * half;
    res_abs *= scale;
    res_asc *= scale;
    let mut error = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    let floor = 50.0 * f64::EPSILON * res_abs;
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(floor);
    }
    Ok((QuadratureEstimate { value, error }, floor))
}

struct Segment {
    a: f64,
    b: f64,
    est: QuadratureEstimate,
    floor: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.est.error == other.est.error
    }
}

impl Eq for Segment {}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.est.error.total_cmp(&other.est.error)
    }
}

/// Globally adaptive G7/K15 quadrature with the default subdivision budget.
///
/// Converged when the summed error estimate is at most
/// `max(abs_tol, rel_tol * |I|)`.
pub fn integrate<F>(
    f: F,
    interval: Interval,
    rel_tol: f64,
    abs_tol: f64,
) -> Result<f64, NumericsError>
where
    F: Fn(f64) -> f64,
{
    integrate_with_budget(f, interval, rel_tol, abs_tol, DEFAULT_SUBDIVISION_BUDGET)
        .map(|e| e.value)
}

pub fn integrate_with_budget<F>(
    f: F,
    interval: Interval,
    rel_tol: f64,
    abs_tol: f64,
    max_subdivisions: usize,
) -> Result<QuadratureEstimate, NumericsError>
where
    F: Fn(f64) -> f64,
{
    if !(rel_tol > 0.0 && abs_tol > 0.0) {
        return Err(NumericsError::InvalidArgument(format!(
            "tolerances must be positive (rel_tol = {rel_tol}, abs_tol = {abs_tol})"
        )));
    }
    let (a, b) = (interval.lo(), interval.hi());
    let (first, floor) = gk15_with_floor(&f, a, b)?;
    let mut total = first;
    let mut heap = BinaryHeap::new();
    heap.push(Segment {
        a,
        b,
        est: first,
        floor,
    });

    let mut subdivisions = 0;
    loop {
        if total.error <= abs_tol.max(rel_tol * total.value.abs()) {
            return Ok(total);
        }
        if subdivisions >= max_subdivisions {
            return Err(NumericsError::NoConvergence {
                estimate: total.value,
                error: total.error,
                subdivisions,
            });
        }
        let worst = heap.pop().expect("segment heap is never empty");
        if worst.est.error <= worst.floor * (1.0 + 1e-9) {
            // Every segment is at its roundoff floor; splitting cannot help.
            return Ok(total);
        }
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Segment cannot be split further in floating point.
            return Err(NumericsError::NoConvergence {
                estimate: total.value,
                error: total.error,
                subdivisions,
            });
        }
        let (left, left_floor) = gk15_with_floor(&f, worst.a, mid)?;
        let (right, right_floor) = gk15_with_floor(&f, mid, worst.b)?;
        total.value += left.value + right.value - worst.est.value;
        total.error += left.error + right.error - worst.est.error;
        heap.push(Segment {
            a: worst.a,
            b: mid,
            est: left,
            floor: left_floor,
        });
        heap.push(Segment {
            a: mid,
            b: worst.b,
            est: right,
            floor: right_floor,
        });
        subdivisions += 1;

        // Running sums drift; recompute exactly every so often.
        if subdivisions % 64 == 0 {
            total.value = heap.iter().map(|s| s.est.value).sum();
            total.error = heap.iter().map(|s| s.est.error).sum();
        }
    }
}
