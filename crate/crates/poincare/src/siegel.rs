use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::PoincareError;

/// Ω ∈ ℍ_g: symmetric with Im Ω ≻ 0.
#[derive(Clone, Debug, PartialEq)]
pub struct SiegelPoint {
    omega: DMatrix<Complex64>,
}

impl SiegelPoint {
    pub fn new(omega: DMatrix<Complex64>) -> Result<Self, PoincareError> {
        if !omega.is_square() {
            return Err(PoincareError::Dimension { expected: omega.nrows(), got: omega.ncols() });
        }
        let scale = omega.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let defect = (&omega - omega.transpose()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if defect > 1e-12 * scale {
            return Err(PoincareError::Asymmetric(defect));
        }
        let omega = (&omega + omega.transpose()).map(|z| z * 0.5);
        if omega.map(|z| z.im).cholesky().is_none() {
            return Err(PoincareError::NotPositive);
        }
        Ok(SiegelPoint { omega })
    }

    pub fn genus(&self) -> usize {
        self.omega.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<Complex64> {
        &self.omega
    }
}

/// (Ω, W, Z, ρ) with W a row and Z a column, both stored as vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct BiextensionPoint {
    pub omega: SiegelPoint,
    pub w: DVector<Complex64>,
    pub z: DVector<Complex64>,
    pub rho: Complex64,
}

impl BiextensionPoint {
    pub fn new(
        omega: SiegelPoint,
        w: DVector<Complex64>,
        z: DVector<Complex64>,
        rho: Complex64,
    ) -> Result<Self, PoincareError> {
        let g = omega.genus();
        for n in [w.len(), z.len()] {
            if n != g {
                return Err(PoincareError::Dimension { expected: g, got: n });
            }
        }
        Ok(BiextensionPoint { omega, w, z, rho })
    }

    pub fn genus(&self) -> usize {
        self.omega.genus()
    }
}

/// −2π Im ρ + 2π Im W (Im Ω)⁻¹ Im Z, solved through a Cholesky factor.
pub fn log_norm(x: &BiextensionPoint) -> f64 {
    let im = x.omega.matrix().map(|z| z.im);
    let chol = im.cholesky().expect("Siegel invariant");
    let iz = x.z.map(|z| z.im);
    let iw = x.w.map(|z| z.im);
    -2.0 * std::f64::consts::PI * x.rho.im + 2.0 * std::f64::consts::PI * iw.dot(&chol.solve(&iz))
}
