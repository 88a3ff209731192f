use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::siegel::{BiextensionPoint, SiegelPoint};
use crate::PoincareError;

/// J = [[0, I], [−I, 0]].
pub fn symplectic_form(g: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * g, 2 * g);
    for i in 0..g {
        j[(i, g + i)] = 1.0;
        j[(g + i, i)] = -1.0;
    }
    j
}

fn defect(m: &DMatrix<Complex64>) -> f64 {
    let g = m.nrows() / 2;
    let j = symplectic_form(g).map(Complex64::from);
    (m.transpose() * &j * m - j).iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// ‖ᵗMJM − J‖_∞ ≤ 1e-10.
pub fn is_symplectic(m: &DMatrix<f64>) -> bool {
    m.is_square() && m.nrows().is_multiple_of(2) && defect(&m.map(Complex64::from)) <= 1e-10
}

fn real(z: Complex64) -> bool {
    z.im == 0.0
}

/// An element of G̃ in the block form
/// [[1, λ₁, λ₂, α], [0, A, B, μ₁], [0, C, D, μ₂], [0, 0, 0, 1]].
///
/// Entries are stored as complex numbers so that complexified unipotent
/// elements I + Σ z N act through the same code; the real group G̃_ℝ is the
/// subset where [`GroupElement::is_real`] holds.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupElement {
    pub lambda1: DVector<Complex64>,
    pub lambda2: DVector<Complex64>,
    pub mu1: DVector<Complex64>,
    pub mu2: DVector<Complex64>,
    pub alpha: Complex64,
    pub sp: DMatrix<Complex64>,
}

fn cvec(x: &[f64]) -> DVector<Complex64> {
    DVector::from_iterator(x.len(), x.iter().map(|&v| Complex64::from(v)))
}

impl GroupElement {
    pub fn identity(g: usize) -> Self {
        let z = DVector::zeros(g);
        GroupElement {
            lambda1: z.clone(),
            lambda2: z.clone(),
            mu1: z.clone(),
            mu2: z,
            alpha: Complex64::new(0.0, 0.0),
            sp: DMatrix::identity(2 * g, 2 * g),
        }
    }

    /// A real element; the symplectic block must satisfy ᵗMJM = J to
    /// 1e-12 relative to the squared size of its entries.
    pub fn new(
        lambda1: &[f64],
        lambda2: &[f64],
        mu1: &[f64],
        mu2: &[f64],
        alpha: Complex64,
        sp: DMatrix<f64>,
    ) -> Result<Self, PoincareError> {
        let g = sp.nrows() / 2;
        if sp.nrows() != 2 * g || sp.ncols() != 2 * g {
            return Err(PoincareError::Dimension { expected: 2 * g, got: sp.ncols() });
        }
        for n in [lambda1.len(), lambda2.len(), mu1.len(), mu2.len()] {
            if n != g {
                return Err(PoincareError::Dimension { expected: g, got: n });
            }
        }
        let sp = sp.map(Complex64::from);
        let scale = sp.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let d = defect(&sp);
        if d > 1e-12 * scale * scale {
            return Err(PoincareError::NotSymplectic(d));
        }
        Ok(GroupElement { lambda1: cvec(lambda1), lambda2: cvec(lambda2), mu1: cvec(mu1), mu2: cvec(mu2), alpha, sp })
    }

    pub fn symplectic(sp: DMatrix<f64>) -> Result<Self, PoincareError> {
        let g = sp.nrows() / 2;
        let z = vec![0.0; g];
        Self::new(&z, &z, &z, &z, Complex64::new(0.0, 0.0), sp)
    }

    pub fn lambda(lambda1: &[f64], lambda2: &[f64]) -> Result<Self, PoincareError> {
        let g = lambda1.len();
        let z = vec![0.0; g];
        Self::new(lambda1, lambda2, &z, &z, Complex64::new(0.0, 0.0), DMatrix::identity(2 * g, 2 * g))
    }

    pub fn mu(mu1: &[f64], mu2: &[f64]) -> Result<Self, PoincareError> {
        let g = mu1.len();
        let z = vec![0.0; g];
        Self::new(&z, &z, mu1, mu2, Complex64::new(0.0, 0.0), DMatrix::identity(2 * g, 2 * g))
    }

    pub fn central(g: usize, alpha: Complex64) -> Self {
        GroupElement { alpha, ..Self::identity(g) }
    }

    /// Reads the block form of a (2g+2)-square matrix. Complex entries are
    /// allowed; the symplectic block is checked with the bilinear transpose.
    pub fn from_matrix(m: &DMatrix<Complex64>) -> Result<Self, PoincareError> {
        let n = m.nrows();
        if n < 2 || !n.is_multiple_of(2) || m.ncols() != n {
            return Err(PoincareError::NotInGroup);
        }
        let g = (n - 2) / 2;
        let one = Complex64::new(1.0, 0.0);
        let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
        let tol = 1e-12 * scale;
        let off = |z: Complex64, want: Complex64| (z - want).norm() > tol;
        if off(m[(0, 0)], one) || off(m[(n - 1, n - 1)], one) {
            return Err(PoincareError::NotInGroup);
        }
        for i in 1..n {
            if off(m[(i, 0)], 0.0.into()) || off(m[(n - 1, i - 1)], 0.0.into()) {
                return Err(PoincareError::NotInGroup);
            }
        }
        let sp = m.view((1, 1), (2 * g, 2 * g)).into_owned();
        let d = defect(&sp);
        if d > 1e-10 * scale * scale {
            return Err(PoincareError::NotSymplectic(d));
        }
        Ok(GroupElement {
            lambda1: DVector::from_fn(g, |i, _| m[(0, 1 + i)]),
            lambda2: DVector::from_fn(g, |i, _| m[(0, 1 + g + i)]),
            mu1: DVector::from_fn(g, |i, _| m[(1 + i, n - 1)]),
            mu2: DVector::from_fn(g, |i, _| m[(1 + g + i, n - 1)]),
            alpha: m[(0, n - 1)],
            sp,
        })
    }

    pub fn genus(&self) -> usize {
        self.lambda1.len()
    }

    pub fn matrix(&self) -> DMatrix<Complex64> {
        let g = self.genus();
        let n = 2 * g + 2;
        let mut m = DMatrix::zeros(n, n);
        m[(0, 0)] = Complex64::new(1.0, 0.0);
        m[(n - 1, n - 1)] = Complex64::new(1.0, 0.0);
        m.view_mut((0, 1), (1, g)).copy_from(&self.lambda1.transpose());
        m.view_mut((0, 1 + g), (1, g)).copy_from(&self.lambda2.transpose());
        m.view_mut((1, 1), (2 * g, 2 * g)).copy_from(&self.sp);
        m.view_mut((1, n - 1), (g, 1)).copy_from(&self.mu1);
        m.view_mut((1 + g, n - 1), (g, 1)).copy_from(&self.mu2);
        m[(0, n - 1)] = self.alpha;
        m
    }

    /// The matrix product self · other.
    pub fn compose(&self, other: &Self) -> Self {
        Self::from_matrix(&(self.matrix() * other.matrix())).expect("G̃ is closed under products")
    }

    /// λ, μ and the symplectic block are real; α may be complex.
    pub fn is_real(&self) -> bool {
        self.lambda1.iter().chain(&self.lambda2).chain(&self.mu1).chain(&self.mu2).all(|z| real(*z))
            && self.sp.iter().all(|z| real(*z))
    }

    /// All entries, α included, are integers.
    pub fn is_integral(&self) -> bool {
        self.matrix().iter().all(|z| z.im == 0.0 && z.re.fract() == 0.0)
    }

    /// g̃ = N(α) · U(μ) · L(λ Sp⁻¹) · S, so the symplectic part acts first,
    /// then the λ translation, then μ, then α.
    pub fn act(&self, x: &BiextensionPoint) -> Result<BiextensionPoint, PoincareError> {
        let g = self.genus();
        if x.genus() != g {
            return Err(PoincareError::Dimension { expected: g, got: x.genus() });
        }
        let (a, b) = (self.sp.view((0, 0), (g, g)), self.sp.view((0, g), (g, g)));
        let (c, d) = (self.sp.view((g, 0), (g, g)), self.sp.view((g, g), (g, g)));
        let omega = x.omega.matrix();
        let m = c * omega + d;
        let minv = m.try_inverse().ok_or(PoincareError::Singular)?;
        let minv_t = minv.transpose();
        let omega1 = (a * omega + b) * &minv;
        let omega1 = SiegelPoint::new((&omega1 + omega1.transpose()).map(|z| z * 0.5))?;
        let w1 = &minv_t * &x.w;
        let z1 = &minv_t * &x.z;
        let rho1 = x.rho - (c * &x.w).dot(&z1);

        let sp_inv = self.sp.clone().try_inverse().ok_or(PoincareError::Singular)?;
        let lam = sp_inv.transpose() * concat(&self.lambda1, &self.lambda2);
        let (l1, l2) = (lam.rows(0, g).into_owned(), lam.rows(g, g).into_owned());
        let om = omega1.matrix();
        let w2 = &w1 + om * &l1 + l2;
        let rho2 = rho1 + l1.dot(&z1);

        let z3 = &z1 + &self.mu1 - om * &self.mu2;
        let rho3 = rho2 - w2.dot(&self.mu2);

        BiextensionPoint::new(omega1, w2, z3, rho3 + self.alpha)
    }
}

fn concat(a: &DVector<Complex64>, b: &DVector<Complex64>) -> DVector<Complex64> {
    DVector::from_iterator(a.len() + b.len(), a.iter().chain(b).copied())
}
