use graph_core::{CycleBasis, Multigraph};
use nalgebra::{DMatrix, DVector};
use poly_core::rational_to_f64;

use crate::momenta::{momentum_lift, MinkowskiSpace, MomentumAssignment, MomentumLift};
use crate::SymanzikError;

fn check_lengths(g: &Multigraph, y: &[f64]) -> Result<(), SymanzikError> {
    if y.len() != g.edge_count() {
        return Err(SymanzikError::Lengths { expected: g.edge_count(), got: y.len() });
    }
    match y.iter().position(|&v| !(v > 0.0 && v.is_finite())) {
        Some(e) => Err(SymanzikError::NonPositive(g.edges()[e].id.clone())),
        None => Ok(()),
    }
}

fn flows_f64(l: &MomentumLift) -> Vec<Vec<f64>> {
    l.flows.iter().map(|w| w.iter().map(rational_to_f64).collect()).collect()
}

/// −W₁ᵀ M⁻¹ W₂ + Q(ω₁, ω₂), paired through the form, for an arbitrary
/// integral basis and arbitrary lifts. M is factored by Cholesky.
pub fn symanzik_ratio_with_basis(
    basis: &CycleBasis,
    lift1: &MomentumLift,
    lift2: &MomentumLift,
    space: &MinkowskiSpace,
    y: &[f64],
) -> Result<f64, SymanzikError> {
    let h = basis.len();
    let d = space.dim();
    let q = space.form_f64();
    let w1 = flows_f64(lift1);
    let w2 = flows_f64(lift2);
    let c: Vec<Vec<f64>> = (0..y.len()).map(|e| basis.edge_coordinates(e).iter().map(|&k| k as f64).collect()).collect();
    let mut m = DMatrix::<f64>::zeros(h, h);
    for (e, ce) in c.iter().enumerate() {
        for i in 0..h {
            for j in 0..h {
                m[(i, j)] += y[e] * ce[i] * ce[j];
            }
        }
    }
    let border = |w: &[Vec<f64>], a: usize| {
        DVector::from_fn(h, |i, _| c.iter().enumerate().map(|(e, ce)| y[e] * ce[i] * w[e][a]).sum())
    };
    let chol = if h > 0 { Some(m.cholesky().ok_or(SymanzikError::Singular)?) } else { None };
    let solved: Vec<DVector<f64>> = (0..d)
        .map(|b| {
            let v = border(&w2, b);
            match &chol {
                Some(ch) => ch.solve(&v),
                None => v,
            }
        })
        .collect();
    let mut total = 0.0;
    for a in 0..d {
        let wa = border(&w1, a);
        for b in 0..d {
            if q[a][b] == 0.0 {
                continue;
            }
            let qab: f64 = (0..y.len()).map(|e| y[e] * w1[e][a] * w2[e][b]).sum();
            total += q[a][b] * (qab - wa.dot(&solved[b]));
        }
    }
    Ok(total)
}

/// Bilinear φ(p₁, p₂, y)/ψ(y) by the Schur complement on the cycle space.
pub fn symanzik_ratio_bilinear(
    g: &Multigraph,
    m1: &MomentumAssignment,
    m2: &MomentumAssignment,
    y: &[f64],
) -> Result<f64, SymanzikError> {
    check_lengths(g, y)?;
    if m1.space() != m2.space() {
        return Err(SymanzikError::SpaceMismatch);
    }
    let basis = g.cycle_basis()?;
    let l1 = momentum_lift(g, m1)?;
    let l2 = momentum_lift(g, m2)?;
    symanzik_ratio_with_basis(&basis, &l1, &l2, m1.space(), y)
}

/// φ(y)/ψ(y) by the Schur complement on the cycle space.
pub fn symanzik_ratio_eval(g: &Multigraph, m: &MomentumAssignment, y: &[f64]) -> Result<f64, SymanzikError> {
    symanzik_ratio_bilinear(g, m, m, y)
}

/// Σ_ab q_ab p₁^aᵀ L⁺ p₂^b for the Laplacian with conductances 1/y_e.
pub fn resistance_bilinear(
    g: &Multigraph,
    m1: &MomentumAssignment,
    m2: &MomentumAssignment,
    y: &[f64],
) -> Result<f64, SymanzikError> {
    check_lengths(g, y)?;
    m1.check_graph(g)?;
    m2.check_graph(g)?;
    if m1.space() != m2.space() {
        return Err(SymanzikError::SpaceMismatch);
    }
    let n = g.vertex_count();
    let mut lap = DMatrix::<f64>::zeros(n, n);
    for (e, edge) in g.edges().iter().enumerate() {
        if edge.is_loop() {
            continue;
        }
        let c = 1.0 / y[e];
        let (t, h) = (edge.tail, edge.head);
        lap[(t, t)] += c;
        lap[(h, h)] += c;
        lap[(t, h)] -= c;
        lap[(h, t)] -= c;
    }
    let pinv = pseudo_inverse(lap);
    let q = m1.space().form_f64();
    let d = m1.space().dim();
    let col = |m: &MomentumAssignment, a: usize| DVector::from_fn(n, |v, _| rational_to_f64(&m.vectors()[v][a]));
    let mut total = 0.0;
    for a in 0..d {
        let pa = col(m1, a);
        let lp = &pinv * &pa;
        for b in 0..d {
            if q[a][b] != 0.0 {
                total += q[a][b] * lp.dot(&col(m2, b));
            }
        }
    }
    Ok(total)
}

/// Moore–Penrose inverse of a symmetric PSD matrix from its eigenpairs;
/// eigenvalues below 1e-12 of the largest are the kernel.
fn pseudo_inverse(a: DMatrix<f64>) -> DMatrix<f64> {
    let n = a.nrows();
    let eig = a.symmetric_eigen();
    let cut = 1e-12 * eig.eigenvalues.amax();
    let mut out = DMatrix::<f64>::zeros(n, n);
    for (k, &l) in eig.eigenvalues.iter().enumerate() {
        if l > cut {
            let v = eig.eigenvectors.column(k);
            out += (v * v.transpose()) / l;
        }
    }
    out
}

/// pᵀ L⁺ p paired through the form: the quadratic effective-resistance value.
pub fn resistance_oracle(g: &Multigraph, m: &MomentumAssignment, y: &[f64]) -> Result<f64, SymanzikError> {
    resistance_bilinear(g, m, m, y)
}
