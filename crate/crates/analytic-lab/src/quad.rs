use std::sync::OnceLock;

use nalgebra::DMatrix;
use rayon::prelude::*;

const ORDER: usize = 16;

/// Gauss–Legendre nodes and weights on [−1, 1] from the Jacobi matrix.
fn rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| {
        let n = ORDER;
        let j = DMatrix::from_fn(n, n, |i, k| {
            let m = i.max(k);
            if i.abs_diff(k) == 1 {
                m as f64 / ((4 * m * m - 1) as f64).sqrt()
            } else {
                0.0
            }
        });
        let eig = j.symmetric_eigen();
        let mut pairs: Vec<(f64, f64)> =
            (0..n).map(|k| (eig.eigenvalues[k], 2.0 * eig.eigenvectors[(0, k)].powi(2))).collect();
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        pairs.into_iter().unzip()
    })
}

/// Panel endpoints on [a, b], graded geometrically towards `p`.
pub(crate) fn graded_breaks(a: f64, b: f64, p: f64, finest: f64) -> Vec<f64> {
    let mut out = vec![a, b];
    if p > a && p < b {
        out.push(p);
    }
    for (lo, hi, dir) in [(a, p.min(b), -1.0), (p.max(a), b, 1.0)] {
        let mut step = finest;
        while p + dir * step > lo && p + dir * step < hi {
            out.push(p + dir * step);
            step *= 2.0;
        }
    }
    out.sort_by(f64::total_cmp);
    out.dedup();
    out
}

/// Tensor Gauss–Legendre over the panels xs × ys; panels run in parallel.
pub(crate) fn integrate_2d<F>(xs: &[f64], ys: &[f64], f: F) -> f64
where
    F: Fn(f64, f64) -> f64 + Sync,
{
    let (nodes, weights) = rule();
    let cells: Vec<(usize, usize)> =
        (0..xs.len() - 1).flat_map(|i| (0..ys.len() - 1).map(move |j| (i, j))).collect();
    cells
        .par_iter()
        .map(|&(i, j)| {
            let (hx, cx) = ((xs[i + 1] - xs[i]) / 2.0, (xs[i + 1] + xs[i]) / 2.0);
            let (hy, cy) = ((ys[j + 1] - ys[j]) / 2.0, (ys[j + 1] + ys[j]) / 2.0);
            let mut s = 0.0;
            for (a, wa) in nodes.iter().zip(weights) {
                for (b, wb) in nodes.iter().zip(weights) {
                    s += wa * wb * f(cx + hx * a, cy + hy * b);
                }
            }
            s * hx * hy
        })
        .collect::<Vec<f64>>()
        .iter()
        .sum()
}

/// Composite Gauss–Legendre over [0, 1] with equal panels.
pub(crate) fn integrate_1d<F>(panels: usize, f: F) -> f64
where
    F: Fn(f64) -> f64,
{
    let (nodes, weights) = rule();
    let h = 1.0 / panels as f64;
    (0..panels)
        .map(|k| {
            let c = (k as f64 + 0.5) * h;
            nodes.iter().zip(weights).map(|(a, w)| w * f(c + 0.5 * h * a)).sum::<f64>() * 0.5 * h
        })
        .sum()
}

/// ∫₀^a ∫₀^b log √(x² + y²) dy dx for a, b ≥ 0.
fn log_corner(a: f64, b: f64) -> f64 {
    if a == 0.0 || b == 0.0 {
        return 0.0;
    }
    0.5 * (a * b * (a * a + b * b).ln() - 3.0 * a * b + a * a * (b / a).atan() + b * b * (a / b).atan())
}

/// ∫ log|u − p| over the rectangle [x0, x1] × [y0, y1].
pub(crate) fn log_rect(x0: f64, x1: f64, y0: f64, y1: f64, p: (f64, f64)) -> f64 {
    let g = |x: f64, y: f64| {
        let (dx, dy) = (x - p.0, y - p.1);
        dx.signum() * dy.signum() * log_corner(dx.abs(), dy.abs())
    };
    g(x1, y1) - g(x0, y1) - g(x1, y0) + g(x0, y0)
}
