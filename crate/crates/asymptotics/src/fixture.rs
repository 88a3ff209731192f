use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::AsymptoticsError;

/// One coefficient of Ψ₀(s) = Σ_k s^{e_k} (Ω_k, W_k, Z_k, ρ_k).
#[derive(Clone, Debug, PartialEq)]
pub struct FixtureTerm {
    pub exponent: Vec<u32>,
    pub omega: DMatrix<Complex64>,
    pub w: DVector<Complex64>,
    pub z: DVector<Complex64>,
    pub rho: Complex64,
}

/// Ψ₀ as a polynomial in the polydisc parameter s, evaluated only for
/// ‖s‖_∞ ≤ radius < 1.
#[derive(Clone, Debug, PartialEq)]
pub struct HolomorphicFixture {
    pub genus: usize,
    pub vars: usize,
    pub radius: f64,
    pub terms: Vec<FixtureTerm>,
}

impl HolomorphicFixture {
    pub fn constant(
        omega: DMatrix<Complex64>,
        w: DVector<Complex64>,
        z: DVector<Complex64>,
        rho: Complex64,
    ) -> Result<Self, AsymptoticsError> {
        let genus = omega.nrows();
        let f = HolomorphicFixture {
            genus,
            vars: 0,
            radius: 0.5,
            terms: vec![FixtureTerm { exponent: vec![], omega, w, z, rho }],
        };
        f.check()?;
        Ok(f)
    }

    /// Ω₀ = i·Im, everything else zero.
    pub fn imaginary(im: &DMatrix<f64>) -> Self {
        let g = im.nrows();
        Self::constant(im.map(|v| Complex64::new(0.0, v)), DVector::zeros(g), DVector::zeros(g), Complex64::new(0.0, 0.0))
            .expect("square by construction")
    }

    pub fn polynomial(genus: usize, vars: usize, radius: f64, terms: Vec<FixtureTerm>) -> Result<Self, AsymptoticsError> {
        let f = HolomorphicFixture { genus, vars, radius, terms };
        f.check()?;
        Ok(f)
    }

    fn check(&self) -> Result<(), AsymptoticsError> {
        let g = self.genus;
        for t in &self.terms {
            let dims = [t.omega.nrows(), t.omega.ncols(), t.w.len(), t.z.len()];
            if let Some(&bad) = dims.iter().find(|&&n| n != g) {
                return Err(AsymptoticsError::Lengths { expected: g, got: bad });
            }
            if !t.exponent.is_empty() && t.exponent.len() != self.vars {
                return Err(AsymptoticsError::Lengths { expected: self.vars, got: t.exponent.len() });
            }
        }
        Ok(())
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|t| t.exponent.iter().all(|&k| k == 0))
    }

    pub fn eval(
        &self,
        s: &[Complex64],
    ) -> Result<(DMatrix<Complex64>, DVector<Complex64>, DVector<Complex64>, Complex64), AsymptoticsError> {
        let g = self.genus;
        if !self.is_constant() {
            if s.len() != self.vars {
                return Err(AsymptoticsError::Lengths { expected: self.vars, got: s.len() });
            }
            let norm = s.iter().map(|x| x.norm()).fold(0.0, f64::max);
            if norm > self.radius {
                return Err(AsymptoticsError::OutsideRadius { norm, radius: self.radius });
            }
        }
        let mut out = (DMatrix::zeros(g, g), DVector::zeros(g), DVector::zeros(g), Complex64::new(0.0, 0.0));
        for t in &self.terms {
            let c: Complex64 = t.exponent.iter().zip(s).map(|(&k, x)| x.powu(k)).product();
            out.0 += &t.omega * c;
            out.1 += &t.w * c;
            out.2 += &t.z * c;
            out.3 += t.rho * c;
        }
        Ok(out)
    }
}

/// y_e > 0 per edge and the offset h₀; evaluation uses y′ = y − h₀.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeParameters {
    pub y: Vec<f64>,
    pub h0: f64,
}

impl EdgeParameters {
    pub fn new(y: Vec<f64>) -> Self {
        EdgeParameters { y, h0: 0.0 }
    }

    pub fn with_offset(y: Vec<f64>, h0: f64) -> Self {
        EdgeParameters { y, h0 }
    }

    pub fn shifted(&self, edges: &[String]) -> Result<Vec<f64>, AsymptoticsError> {
        if self.y.len() != edges.len() {
            return Err(AsymptoticsError::Lengths { expected: edges.len(), got: self.y.len() });
        }
        self.y
            .iter()
            .zip(edges)
            .map(|(&y, e)| {
                if y > self.h0 && y.is_finite() {
                    Ok(y - self.h0)
                } else {
                    Err(AsymptoticsError::BelowOffset { edge: e.clone(), y, h0: self.h0 })
                }
            })
            .collect()
    }
}
