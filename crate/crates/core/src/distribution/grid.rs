use rayon::prelude::*;

use crate::numerics::Interval;

/// Largest area error `h |(f0 + f1)/2 - f(mid)|` tolerated on an interval.
pub const REFINE_TOL: f64 = 1e-10;
/// Hard cap on the number of table nodes.
pub const MAX_GRID_POINTS: usize = 2_000_000;

/// `n` equally spaced nodes spanning `support`, with the last node exact.
pub fn uniform_grid(support: Interval, n: usize) -> Vec<f64> {
    let step = support.width() / (n - 1) as f64;
    (0..n)
        .map(|i| {
            if i == n - 1 {
                support.hi()
            } else {
                support.lo() + step * i as f64
            }
        })
        .collect()
}

/// Tabulates `f` on `n_grid` uniform nodes plus geometric clusters (ratio
/// 1.25, down to `1e-10` relative spacing) around each seed, then bisects
/// every interval whose linear interpolant is off by more than
/// [`REFINE_TOL`] in area. Narrow features near the seeds are caught even
/// when they fall between uniform nodes.
pub fn adaptive_table<F>(
    f: &F,
    support: Interval,
    n_grid: usize,
    seeds: &[f64],
) -> (Vec<f64>, Vec<f64>)
where
    F: Fn(f64) -> f64 + Sync,
{
    let mut xs = uniform_grid(support, n_grid);
    let base_step = support.width() / (n_grid - 1) as f64;
    for &c in seeds.iter().filter(|&&c| support.contains(c)) {
        xs.push(c);
        let mut delta = base_step;
        while delta > 1e-10 * c {
            for x in [c - delta, c + delta] {
                if support.contains(x) {
                    xs.push(x);
                }
            }
            delta /= 1.25;
        }
    }
    xs.sort_by(f64::total_cmp);
    xs.dedup_by(|b, a| (*b - *a).abs() <= 1e-14 * a.abs().max(1.0));
    let mut ys: Vec<f64> = xs.par_iter().map(|&x| f(x)).collect();

    let mut active: Vec<usize> = (0..xs.len() - 1).collect();
    while !active.is_empty() && xs.len() < MAX_GRID_POINTS {
        let mids: Vec<(usize, f64, f64)> = active
            .par_iter()
            .map(|&i| {
                let m = 0.5 * (xs[i] + xs[i + 1]);
                (i, m, f(m))
            })
            .collect();
        let mut split = vec![None; xs.len() - 1];
        for &(i, m, fm) in &mids {
            let h = xs[i + 1] - xs[i];
            let err = h * (0.5 * (ys[i] + ys[i + 1]) - fm).abs();
            let small = h <= 1e-13 * xs[i].abs().max(1.0);
            split[i] = Some((m, fm, err > REFINE_TOL && !small));
        }
        let mut nx = Vec::with_capacity(xs.len() + mids.len());
        let mut ny = Vec::with_capacity(xs.len() + mids.len());
        let mut next = Vec::new();
        for i in 0..xs.len() - 1 {
            nx.push(xs[i]);
            ny.push(ys[i]);
            if let Some((m, fm, again)) = split[i] {
                nx.push(m);
                ny.push(fm);
                if again {
                    next.push(nx.len() - 2);
                    next.push(nx.len() - 1);
                }
            }
        }
        nx.push(xs[xs.len() - 1]);
        ny.push(ys[ys.len() - 1]);
        xs = nx;
        ys = ny;
        active = next;
    }
    (xs, ys)
}
