use num_complex::Complex64;

use crate::pairing::GreenFunction;
use crate::quad::integrate_1d;
use crate::LabError;

/// A point of P¹ in the affine chart, or the point at infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    pub fn new(re: f64, im: f64) -> Self {
        SpherePoint::Finite(Complex64::new(re, im))
    }

    /// z ↦ (az + b)/(cz + d).
    pub fn mobius(self, m: [Complex64; 4]) -> Self {
        let [a, b, c, d] = m;
        match self {
            SpherePoint::Finite(z) => {
                let den = c * z + d;
                if den.norm() == 0.0 {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite((a * z + b) / den)
                }
            }
            SpherePoint::Infinity if c.norm() == 0.0 => SpherePoint::Infinity,
            SpherePoint::Infinity => SpherePoint::Finite(a / c),
        }
    }
}

/// −log|z − w| + ½ log(1 + |z|²) + ½ log(1 + |w|²): minus the log of the
/// chordal distance, so ∞ is handled by the limit ½ log(1 + |z|²).
pub fn green_sphere(z: SpherePoint, w: SpherePoint) -> Result<f64, LabError> {
    match (z, w) {
        (SpherePoint::Infinity, SpherePoint::Infinity) => Err(LabError::Coincident),
        (SpherePoint::Finite(a), SpherePoint::Infinity) | (SpherePoint::Infinity, SpherePoint::Finite(a)) => {
            Ok(0.5 * a.norm_sqr().ln_1p())
        }
        (SpherePoint::Finite(a), SpherePoint::Finite(b)) => {
            let d = (a - b).norm();
            if d == 0.0 {
                return Err(LabError::Coincident);
            }
            Ok(-d.ln() + 0.5 * a.norm_sqr().ln_1p() + 0.5 * b.norm_sqr().ln_1p())
        }
    }
}

/// Fubini–Study Green function as a [`GreenFunction`]. With
/// d_μ(z, w) = scale·|z − w|/(1 + |z|²) the regularized diagonal is log scale.
#[derive(Clone, Copy, Debug, Default)]
pub struct SphereGreen;

impl GreenFunction for SphereGreen {
    type Point = SpherePoint;

    fn green(&self, a: &SpherePoint, b: &SpherePoint) -> Result<f64, LabError> {
        green_sphere(*a, *b)
    }

    fn diagonal(&self, _x: &SpherePoint, scale: f64) -> f64 {
        scale.ln()
    }
}

/// (z₃ − z₁)(z₄ − z₂) / ((z₃ − z₂)(z₄ − z₁)).
pub fn cross_ratio(z: [Complex64; 4]) -> Result<Complex64, LabError> {
    let [z1, z2, z3, z4] = z;
    let den = (z3 - z2) * (z4 - z1);
    if den.norm() == 0.0 || (z3 - z1).norm() == 0.0 || (z4 - z2).norm() == 0.0 {
        return Err(LabError::Coincident);
    }
    Ok((z3 - z1) * (z4 - z2) / den)
}

/// Re ∫_{z₄}^{z₃} (1/(z − z₁) − 1/(z − z₂)) dz, by quadrature along a
/// two-segment path that keeps away from the poles. Residues are real, so the
/// real part does not depend on the path.
pub fn residue_integral(z: [Complex64; 4]) -> Result<f64, LabError> {
    let [z1, z2, z3, z4] = z;
    if [z1, z2].iter().any(|p| (p - z3).norm() == 0.0 || (p - z4).norm() == 0.0) || (z1 - z2).norm() == 0.0 {
        return Err(LabError::Coincident);
    }
    let chord = z3 - z4;
    let mid = (z3 + z4) * 0.5;
    let clearance = |m: Complex64| {
        [z1, z2]
            .iter()
            .map(|&p| segment_distance(p, z4, m).min(segment_distance(p, m, z3)))
            .fold(f64::INFINITY, f64::min)
    };
    let m = [0.0, 0.5, -0.5, 1.0, -1.0, 2.0, -2.0]
        .iter()
        .map(|&t| mid + Complex64::new(0.0, t) * chord)
        .max_by(|a, b| clearance(*a).total_cmp(&clearance(*b)))
        .expect("non-empty candidates");
    let span = chord.norm();
    let panels = ((span / clearance(m).max(1e-300)).ceil() as usize * 8).clamp(8, 1 << 16);
    let f = |z: Complex64| 1.0 / (z - z1) - 1.0 / (z - z2);
    let leg = |a: Complex64, b: Complex64| integrate_1d(panels, |s| (f(a + (b - a) * s) * (b - a)).re);
    Ok(leg(z4, m) + leg(m, z3))
}

fn segment_distance(p: Complex64, a: Complex64, b: Complex64) -> f64 {
    let d = b - a;
    let s = if d.norm_sqr() == 0.0 { 0.0 } else { (((p - a) * d.conj()).re / d.norm_sqr()).clamp(0.0, 1.0) };
    (p - (a + d * s)).norm()
}
