use std::f64::consts::PI;

use graph_core::Multigraph;
use monodromy::fixtures::Fixture;
use monodromy::{build_ne, NilpotentBlock};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use poincare::{log_norm, BiextensionPoint, GroupElement, SiegelPoint};
use poly_core::{rational_to_f64, Rational};
use symanzik::{symanzik_ratio_eval, MomentumAssignment};

use crate::fixture::{EdgeParameters, HolomorphicFixture};
use crate::AsymptoticsError;

/// The momentum-contracted blocks of one N_e in floating point.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgeBlock {
    pub edge: String,
    pub m: DMatrix<f64>,
    pub p2w: DVector<f64>,
    pub zp1: DVector<f64>,
    pub gamma: f64,
}

impl EdgeBlock {
    pub fn genus(&self) -> usize {
        self.p2w.len()
    }

    /// g = 1 with M̃ = 1, p₂W̃ = w, Z̃ᵗp₁ = z, p₂Γᵗp₁ = γ.
    pub fn scalar(edge: &str, w: f64, z: f64, gamma: f64) -> Self {
        EdgeBlock {
            edge: edge.into(),
            m: DMatrix::from_element(1, 1, 1.0),
            p2w: DVector::from_element(1, w),
            zp1: DVector::from_element(1, z),
            gamma,
        }
    }

    /// N_e as a (2g+2)-square complex matrix.
    pub fn nilpotent(&self) -> DMatrix<Complex64> {
        let g = self.genus();
        let n = 2 * g + 2;
        let mut a = DMatrix::zeros(n, n);
        for j in 0..g {
            a[(0, 1 + g + j)] = self.p2w[j].into();
            a[(1 + j, n - 1)] = self.zp1[j].into();
            for i in 0..g {
                a[(1 + i, 1 + g + j)] = self.m[(i, j)].into();
            }
        }
        a[(0, n - 1)] = self.gamma.into();
        a
    }
}

impl From<&NilpotentBlock> for EdgeBlock {
    fn from(b: &NilpotentBlock) -> Self {
        let g = b.genus;
        let f = |v: &[Rational]| DVector::from_iterator(v.len(), v.iter().map(rational_to_f64));
        EdgeBlock {
            edge: b.edge.clone(),
            m: DMatrix::from_fn(g, g, |i, j| rational_to_f64(&b.m[i][j])),
            p2w: f(&b.p2w),
            zp1: f(&b.zp1),
            gamma: rational_to_f64(&b.gamma),
        }
    }
}

fn edge_ids(blocks: &[EdgeBlock]) -> Vec<String> {
    blocks.iter().map(|b| b.edge.clone()).collect()
}

fn check_genus(f: &HolomorphicFixture, blocks: &[EdgeBlock]) -> Result<(), AsymptoticsError> {
    match blocks.iter().find(|b| b.genus() != f.genus) {
        Some(b) => Err(AsymptoticsError::Genus { fixture: f.genus, blocks: b.genus() }),
        None => Ok(()),
    }
}

/// −2π Im ρ₀ − 2π Σ y′_e γ_e +
/// 2π (Im W₀ + Σ y′_e p₂W̃_e)(Im Ω₀ + Σ y′_e M̃_e)⁻¹(Im Z₀ + Σ y′_e Z̃_eᵗp₁),
/// the middle matrix factored by Cholesky.
pub fn height_eval(
    f: &HolomorphicFixture,
    blocks: &[EdgeBlock],
    ep: &EdgeParameters,
    s: &[Complex64],
) -> Result<f64, AsymptoticsError> {
    check_genus(f, blocks)?;
    let y = ep.shifted(&edge_ids(blocks))?;
    let (omega, w, z, rho) = f.eval(s)?;
    let mut mid = omega.map(|c| c.im);
    let mut u = w.map(|c| c.im);
    let mut v = z.map(|c| c.im);
    let mut linear = rho.im;
    for (b, &ye) in blocks.iter().zip(&y) {
        mid += &b.m * ye;
        u += &b.p2w * ye;
        v += &b.zp1 * ye;
        linear += ye * b.gamma;
    }
    let chol = mid.cholesky().ok_or_else(|| AsymptoticsError::NotPositive { y: ep.y.clone() })?;
    Ok(-2.0 * PI * linear + 2.0 * PI * u.dot(&chol.solve(&v)))
}

/// The same quantity as log_norm((I + Σ z_e N_e)·Ψ₀) with z_e = x_e + i y′_e;
/// the N_e commute and square to zero, so I + Σ z_e N_e = exp(Σ z_e N_e).
pub fn height_via_orbit(
    f: &HolomorphicFixture,
    blocks: &[EdgeBlock],
    ep: &EdgeParameters,
    s: &[Complex64],
    x: &[f64],
) -> Result<f64, AsymptoticsError> {
    check_genus(f, blocks)?;
    let y = ep.shifted(&edge_ids(blocks))?;
    if x.len() != y.len() {
        return Err(AsymptoticsError::Lengths { expected: y.len(), got: x.len() });
    }
    let g = f.genus;
    let mut m = DMatrix::<Complex64>::identity(2 * g + 2, 2 * g + 2);
    for ((b, &ye), &xe) in blocks.iter().zip(&y).zip(x) {
        m += b.nilpotent() * Complex64::new(xe, ye);
    }
    let (omega, w, z, rho) = f.eval(s)?;
    let omega = SiegelPoint::new(omega)?;
    let psi0 = BiextensionPoint::new(omega, w, z, rho)?;
    let phi = GroupElement::from_matrix(&m)?.act(&psi0).map_err(|e| match e {
        poincare::PoincareError::NotPositive => AsymptoticsError::NotPositive { y: ep.y.clone() },
        other => other.into(),
    })?;
    Ok(log_norm(&phi))
}

/// 2π φ(p₁, p₂, y)/ψ(y), the bilinear ratio taken by polarization of the
/// quadratic one.
pub fn tropical_height(
    g: &Multigraph,
    p1: &MomentumAssignment,
    p2: &MomentumAssignment,
    y: &[f64],
) -> Result<f64, AsymptoticsError> {
    let sum = p1.add(p2)?;
    let r = |p: &MomentumAssignment| symanzik_ratio_eval(g, p, y);
    Ok(PI * (r(&sum)? - r(p1)? - r(p2)?))
}

/// One Minkowski component pair (a, b): weight q_ab, a biextension fixture
/// and the scalar blocks built from components a of p₁ and b of p₂.
#[derive(Clone, Debug, PartialEq)]
pub struct Channel {
    pub weight: f64,
    pub fixture: HolomorphicFixture,
    pub blocks: Vec<EdgeBlock>,
}

/// The height as Σ_ab q_ab h_ab over channels.
#[derive(Clone, Debug, PartialEq)]
pub struct HeightData {
    pub channels: Vec<Channel>,
}

impl HeightData {
    pub fn scalar(fixture: HolomorphicFixture, blocks: Vec<EdgeBlock>) -> Self {
        HeightData { channels: vec![Channel { weight: 1.0, fixture, blocks }] }
    }

    /// Channels for every nonzero entry of the form, all sharing Ψ₀.
    pub fn from_monodromy(fix: &Fixture, psi0: &HolomorphicFixture) -> Result<Self, AsymptoticsError> {
        let d = fix.space.dim();
        let q = fix.space.form_f64();
        let comp = |p: &[Vec<Rational>], a: usize| -> Vec<Rational> { p.iter().map(|v| v[a].clone()).collect() };
        let mut channels = Vec::new();
        for a in 0..d {
            for b in 0..d {
                if q[a][b] == 0.0 {
                    continue;
                }
                let blocks = (0..fix.graph.edge_count())
                    .map(|e| {
                        build_ne(&fix.cycles, &fix.crossings, &comp(&fix.p1, a), &comp(&fix.p2, b), e)
                            .map(|n| EdgeBlock::from(&n))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                channels.push(Channel { weight: q[a][b], fixture: psi0.clone(), blocks });
            }
        }
        Ok(HeightData { channels })
    }

    /// Shifts p₂Γᵗp₁ on one edge in every channel, breaking γ_e = −ω₁ω₂.
    pub fn with_inconsistent_gamma(&self, e: usize, delta: f64) -> Self {
        let mut out = self.clone();
        for c in &mut out.channels {
            c.blocks[e].gamma += delta;
        }
        out
    }

    pub fn eval(&self, ep: &EdgeParameters, s: &[Complex64]) -> Result<f64, AsymptoticsError> {
        self.channels.iter().map(|c| Ok(c.weight * height_eval(&c.fixture, &c.blocks, ep, s)?)).sum()
    }

    pub fn eval_orbit(&self, ep: &EdgeParameters, s: &[Complex64], x: &[f64]) -> Result<f64, AsymptoticsError> {
        self.channels.iter().map(|c| Ok(c.weight * height_via_orbit(&c.fixture, &c.blocks, ep, s, x)?)).sum()
    }
}
