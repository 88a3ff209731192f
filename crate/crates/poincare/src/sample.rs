//! Random points and group elements for tests and the CLI self-checks.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rand::Rng;

use crate::group::{symplectic_form, GroupElement};
use crate::siegel::{BiextensionPoint, SiegelPoint};

fn symmetric<R: Rng>(rng: &mut R, g: usize, r: f64) -> DMatrix<f64> {
    let mut s = DMatrix::zeros(g, g);
    for i in 0..g {
        for j in i..g {
            let v = rng.gen_range(-r..=r);
            s[(i, j)] = v;
            s[(j, i)] = v;
        }
    }
    s
}

/// Ω = X + iY with Y = LLᵀ + I/2.
pub fn random_siegel<R: Rng>(rng: &mut R, g: usize) -> SiegelPoint {
    let x = symmetric(rng, g, 1.0);
    let l = DMatrix::from_fn(g, g, |_, _| rng.gen_range(-1.0..1.0));
    let y = &l * l.transpose() + DMatrix::identity(g, g) * 0.5;
    SiegelPoint::new(DMatrix::from_fn(g, g, |i, j| Complex64::new(x[(i, j)], y[(i, j)]))).expect("Im part is PD")
}

pub fn random_point<R: Rng>(rng: &mut R, g: usize) -> BiextensionPoint {
    let omega = random_siegel(rng, g);
    let mut c = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let w = DVector::from_fn(g, |_, _| c());
    let z = DVector::from_fn(g, |_, _| c());
    let rho = c();
    BiextensionPoint::new(omega, w, z, rho).expect("sizes agree")
}

/// A product of one to three generators: shears [[I,S],[0,I]] and
/// [[I,0],[S,I]], [[A,0],[0,A⁻ᵀ]] with A near I, and J.
pub fn random_symplectic<R: Rng>(rng: &mut R, g: usize) -> DMatrix<f64> {
    let mut m = DMatrix::identity(2 * g, 2 * g);
    for _ in 0..rng.gen_range(1..=3) {
        let mut f = DMatrix::identity(2 * g, 2 * g);
        match rng.gen_range(0..4) {
            0 => f.view_mut((0, g), (g, g)).copy_from(&symmetric(rng, g, 1.0)),
            1 => f.view_mut((g, 0), (g, g)).copy_from(&symmetric(rng, g, 1.0)),
            2 => {
                let a = DMatrix::identity(g, g) + DMatrix::from_fn(g, g, |_, _| rng.gen_range(-0.3..0.3));
                let a_inv_t = a.clone().try_inverse().expect("near identity").transpose();
                f.view_mut((0, 0), (g, g)).copy_from(&a);
                f.view_mut((g, g), (g, g)).copy_from(&a_inv_t);
            }
            _ => f = symplectic_form(g),
        }
        m = f * m;
    }
    m
}

/// A real element of G̃ with α real.
pub fn random_element<R: Rng>(rng: &mut R, g: usize) -> GroupElement {
    let mut v = || (0..g).map(|_| rng.gen_range(-1.0..1.0)).collect::<Vec<f64>>();
    let (l1, l2, m1, m2) = (v(), v(), v(), v());
    let alpha = Complex64::new(rng.gen_range(-1.0..1.0), 0.0);
    GroupElement::new(&l1, &l2, &m1, &m2, alpha, random_symplectic(rng, g)).expect("symplectic by construction")
}
