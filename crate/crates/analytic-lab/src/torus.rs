use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;

use crate::pairing::GreenFunction;
use crate::quad::{graded_breaks, integrate_2d, log_rect};
use crate::theta::TorusModulus;
use crate::LabError;

/// A point of C/(Z + τZ) with z = x + yτ, x, y ∈ [0, 1).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TorusPoint {
    pub x: f64,
    pub y: f64,
}

impl TorusPoint {
    pub fn from_complex(z: Complex64, m: &TorusModulus) -> Self {
        let tau = m.tau();
        let y = z.im / tau.im;
        let x = z.re - y * tau.re;
        TorusPoint { x: x.rem_euclid(1.0) % 1.0, y: y.rem_euclid(1.0) % 1.0 }
    }

    pub fn to_complex(self, m: &TorusModulus) -> Complex64 {
        m.tau() * self.y + self.x
    }
}

/// Closed form g(z, w) = −log|θ₁(z − w)| + π (Im(z − w))²/Im τ + C(τ) for the
/// flat form of unit area μ = dx∧dy / Im τ.
#[derive(Clone, Debug, PartialEq)]
pub struct TorusGreen {
    modulus: TorusModulus,
    constant: f64,
    quadrature: f64,
    closed_form: f64,
}

/// Finest panel next to the logarithmic point, relative to the cell size.
const FINEST: f64 = 1.0 / 64.0;

impl TorusGreen {
    /// Fixes C(τ) by ∫ g(0, ·) μ = 0. The quadrature value is authoritative;
    /// log|η(τ)| replaces it only when the two agree to 1e-6.
    pub fn new(modulus: TorusModulus) -> Result<Self, LabError> {
        let t = modulus.area();
        let (x0, x1, y0, y1) = (-0.5, 0.5, -t / 2.0, t / 2.0);
        let raw = integrate_subtracted(&modulus, (x0, x1, y0, y1), (0.0, 0.0), Complex64::new(0.0, 0.0))?;
        let quadrature = -raw / t;
        let closed_form = modulus.log_abs_eta();
        let constant = if (quadrature - closed_form).abs() <= 1e-6 * (1.0 + closed_form.abs()) {
            closed_form
        } else {
            quadrature
        };
        Ok(TorusGreen { modulus, constant, quadrature, closed_form })
    }

    pub fn modulus(&self) -> &TorusModulus {
        &self.modulus
    }

    pub fn constant(&self) -> f64 {
        self.constant
    }

    /// (quadrature, closed-form) values of C(τ).
    pub fn constant_routes(&self) -> (f64, f64) {
        (self.quadrature, self.closed_form)
    }

    /// g without the constant; periodic in u.
    fn shape(&self, u: Complex64) -> Result<f64, LabError> {
        let (u1, _) = self.modulus.reduce(u);
        let t = self.modulus.area();
        Ok(-self.modulus.log_abs_theta1_strip(u1)? + PI * u1.im * u1.im / t)
    }

    pub fn green(&self, z: Complex64, w: Complex64) -> Result<f64, LabError> {
        Ok(self.shape(z - w)? + self.constant)
    }

    /// g′(x, x) = lim (g(x′, x) + log d_μ(x′, x)) with
    /// d_μ = scale · |x′ − x| / √Im τ; the same at every point.
    pub fn diagonal(&self, scale: f64) -> f64 {
        -self.modulus.log_abs_theta1_prime0() + self.constant + scale.ln() - 0.5 * self.modulus.area().ln()
    }

    /// ∫ g(z₀, ·) μ over a fundamental rectangle placed so that z₀ sits at
    /// the fractional position `at` inside it.
    pub fn normalization_residual(&self, z0: Complex64, at: (f64, f64)) -> Result<f64, LabError> {
        let t = self.modulus.area();
        let (x0, y0) = (z0.re - at.0, z0.im - at.1 * t);
        let rect = (x0, x0 + 1.0, y0, y0 + t);
        let raw = integrate_subtracted(&self.modulus, rect, (z0.re, z0.im), z0)?;
        Ok(raw / t + self.constant)
    }

    /// Five-point Laplacian of g(·, 0) on the n×n fractional grid, step 1/n,
    /// skipping points within `exclusion` of a lattice point. Returns the
    /// largest deviation from Δg = 2π/Im τ and the number of points used.
    pub fn laplacian_residual(&self, n: usize, exclusion: f64) -> Result<(f64, usize), LabError> {
        let m = &self.modulus;
        let tau = m.tau();
        let h = 1.0 / n as f64;
        let expected = 2.0 * PI / m.area();
        let rows: Vec<Result<(f64, usize), LabError>> = (0..n)
            .into_par_iter()
            .map(|j| {
                let mut worst = 0.0f64;
                let mut used = 0;
                for i in 0..n {
                    let z = tau * (j as f64 * h) + i as f64 * h;
                    if lattice_distance(z, m) < exclusion {
                        continue;
                    }
                    let c = self.green(z, Complex64::new(0.0, 0.0))?;
                    let mut s = -4.0 * c;
                    for d in [Complex64::new(h, 0.0), Complex64::new(-h, 0.0), Complex64::new(0.0, h), Complex64::new(0.0, -h)] {
                        s += self.green(z + d, Complex64::new(0.0, 0.0))?;
                    }
                    worst = worst.max((s / (h * h) - expected).abs());
                    used += 1;
                }
                Ok((worst, used))
            })
            .collect();
        let mut worst = 0.0f64;
        let mut used = 0;
        for r in rows {
            let (w, u) = r?;
            worst = worst.max(w);
            used += u;
        }
        Ok((worst, used))
    }
}

/// Distance from z to the nearest point of Z + τZ.
pub fn lattice_distance(z: Complex64, m: &TorusModulus) -> f64 {
    let (u, _) = m.reduce(z);
    let tau = m.tau();
    let mut best = f64::INFINITY;
    for a in -1..=2 {
        for b in -1..=2 {
            best = best.min((u - tau * b as f64 - a as f64).norm());
        }
    }
    best
}

/// ∫ over the rectangle of (g − C)(u − s), with the logarithmic point `p`
/// (the rectangle's own copy of s) removed analytically.
fn integrate_subtracted(
    m: &TorusModulus,
    rect: (f64, f64, f64, f64),
    p: (f64, f64),
    s: Complex64,
) -> Result<f64, LabError> {
    let t = m.area();
    let (x0, x1, y0, y1) = rect;
    let xs = graded_breaks(x0, x1, p.0, FINEST);
    let ys = graded_breaks(y0, y1, p.1, FINEST);
    let failed = std::sync::atomic::AtomicBool::new(false);
    let smooth = integrate_2d(&xs, &ys, |x, y| {
        let u = Complex64::new(x, y) - s;
        let (u1, _) = m.reduce(u);
        match m.log_abs_theta1_strip(u1) {
            Ok(l) => -l + PI * u1.im * u1.im / t + 0.5 * ((x - p.0).powi(2) + (y - p.1).powi(2)).ln(),
            Err(_) => {
                failed.store(true, std::sync::atomic::Ordering::Relaxed);
                0.0
            }
        }
    });
    if failed.into_inner() {
        return Err(LabError::Coincident);
    }
    Ok(smooth - log_rect(x0, x1, y0, y1, p))
}

impl GreenFunction for TorusGreen {
    type Point = Complex64;

    fn green(&self, a: &Complex64, b: &Complex64) -> Result<f64, LabError> {
        TorusGreen::green(self, *a, *b)
    }

    fn diagonal(&self, _x: &Complex64, scale: f64) -> f64 {
        TorusGreen::diagonal(self, scale)
    }
}
