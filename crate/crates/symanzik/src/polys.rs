use graph_core::{CycleBasis, Multigraph};
use num_traits::Zero;
use poly_core::{MultiPoly, Rational, RingMatrix, Vars};

use crate::momenta::{momentum_lift, MinkowskiSpace, MomentumAssignment, MomentumLift};
use crate::SymanzikError;

/// c_e: coordinates of the edge functional on the cycle basis. M_e = c_e c_eᵀ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeQuadratic {
    pub edge: String,
    pub c: Vec<i64>,
}

impl EdgeQuadratic {
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        self.c.iter().map(|a| self.c.iter().map(|b| a * b).collect()).collect()
    }
}

pub fn edge_quadratics(g: &Multigraph, basis: &CycleBasis) -> Vec<EdgeQuadratic> {
    g.edges()
        .iter()
        .enumerate()
        .map(|(e, edge)| EdgeQuadratic { edge: edge.id.clone(), c: basis.edge_coordinates(e) })
        .collect()
}

fn int(k: i64) -> Rational {
    Rational::from_integer(k.into())
}

/// Σ_e a_e Y_e.
fn linear_form(vars: &Vars, coeffs: impl IntoIterator<Item = Rational>) -> MultiPoly {
    let n = vars.len();
    let terms = coeffs.into_iter().enumerate().map(|(e, a)| {
        let mut x = vec![0u32; n];
        x[e] = 1;
        (x, a)
    });
    MultiPoly::from_terms(vars, terms).expect("arity matches registry")
}

fn cycle_matrix(vars: &Vars, quads: &[EdgeQuadratic]) -> Vec<Vec<MultiPoly>> {
    let h = quads.first().map_or(0, |q| q.c.len());
    (0..h)
        .map(|i| (0..h).map(|j| linear_form(vars, quads.iter().map(|q| int(q.c[i] * q.c[j])))).collect())
        .collect()
}

/// ψ = det(Σ_e Y_e M_e); homogeneous of degree h.
pub fn first_symanzik_det(vars: &Vars, quads: &[EdgeQuadratic]) -> Result<MultiPoly, SymanzikError> {
    if quads.len() != vars.len() {
        return Err(SymanzikError::Lengths { expected: vars.len(), got: quads.len() });
    }
    let m = RingMatrix::from_rows(vars, cycle_matrix(vars, quads))?;
    Ok(m.det_fraction_free()?)
}

/// ψ = Σ_T Π_{e∉T} Y_e over spanning trees T.
pub fn first_symanzik_trees(g: &Multigraph) -> Result<MultiPoly, SymanzikError> {
    g.first_betti()?;
    let vars = g.edge_ids();
    let terms = g.spanning_trees().trees.into_iter().map(|t| (complement(g.edge_count(), &t), Rational::from_integer(1.into())));
    Ok(MultiPoly::from_terms(vars, terms)?)
}

fn complement(m: usize, subset: &[usize]) -> Vec<u32> {
    let mut x = vec![1u32; m];
    for &i in subset {
        x[i] = 0;
    }
    x
}

/// φ = Σ_F q(F) Π_{e∉F} Y_e over spanning 2-forests, q(F) = −⟨p(F₁), p(F₂)⟩.
pub fn second_symanzik_forests(g: &Multigraph, m: &MomentumAssignment) -> Result<MultiPoly, SymanzikError> {
    g.first_betti()?;
    m.check_graph(g)?;
    let d = m.space().dim();
    let mut terms = Vec::new();
    for f in g.spanning_2forests() {
        let mut p1 = vec![Rational::zero(); d];
        let mut p2 = vec![Rational::zero(); d];
        for (v, p) in m.vectors().iter().enumerate() {
            let side = if f.side[v] == 0 { &mut p1 } else { &mut p2 };
            for (s, x) in side.iter_mut().zip(p) {
                *s += x;
            }
        }
        terms.push((complement(g.edge_count(), &f.edges), -m.space().pair(&p1, &p2)));
    }
    Ok(MultiPoly::from_terms(g.edge_ids(), terms)?)
}

/// φ from the bordered determinant det Σ_e Y_e [[M_e, W_e(ω)], [W_e(ω)ᵀ, Q_e(ω)]].
///
/// Vector-valued borders are expanded through the form:
/// φ = Σ_{a,b} q_ab det [[M, W^a], [W^bᵀ, Q_ab]] where W^a and Q_ab use the
/// a-th and b-th components of ω.
pub fn second_symanzik_bordered(
    vars: &Vars,
    quads: &[EdgeQuadratic],
    lift: &MomentumLift,
    space: &MinkowskiSpace,
) -> Result<MultiPoly, SymanzikError> {
    if quads.len() != vars.len() || lift.flows.len() != vars.len() {
        return Err(SymanzikError::Lengths { expected: vars.len(), got: quads.len().min(lift.flows.len()) });
    }
    let h = quads.first().map_or(0, |q| q.c.len());
    let d = space.dim();
    let m = cycle_matrix(vars, quads);
    let border = |a: usize| -> Vec<MultiPoly> {
        (0..h)
            .map(|i| linear_form(vars, quads.iter().zip(&lift.flows).map(|(q, w)| int(q.c[i]) * &w[a])))
            .collect()
    };
    let borders: Vec<Vec<MultiPoly>> = (0..d).map(border).collect();
    let mut phi = MultiPoly::zero(vars);
    for a in 0..d {
        for b in a..d {
            let qab = &space.form()[a][b];
            if qab.is_zero() {
                continue;
            }
            let corner = linear_form(vars, lift.flows.iter().map(|w| &w[a] * &w[b]));
            let mut rows: Vec<Vec<MultiPoly>> = m.clone();
            for (i, row) in rows.iter_mut().enumerate() {
                row.push(borders[a][i].clone());
            }
            let mut last: Vec<MultiPoly> = borders[b].clone();
            last.push(corner);
            rows.push(last);
            let det = RingMatrix::from_rows(vars, rows)?.det_fraction_free()?;
            // q_ab and q_ba contribute equal determinants (transpose)
            let weight = if a == b { qab.clone() } else { qab * int(2) };
            phi = phi.add(&det.scale(&weight))?;
        }
    }
    Ok(phi)
}

/// ψ via the determinant route with the fundamental cycle basis.
pub fn first_symanzik(g: &Multigraph) -> Result<MultiPoly, SymanzikError> {
    let basis = g.cycle_basis()?;
    first_symanzik_det(g.edge_ids(), &edge_quadratics(g, &basis))
}

/// φ via the bordered determinant with the tree-supported lift.
pub fn second_symanzik(g: &Multigraph, m: &MomentumAssignment) -> Result<MultiPoly, SymanzikError> {
    let basis = g.cycle_basis()?;
    let lift = momentum_lift(g, m)?;
    second_symanzik_bordered(g.edge_ids(), &edge_quadratics(g, &basis), &lift, m.space())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn banana() -> Multigraph {
        Multigraph::from_ids(&["u", "v"], &[("e1", "u", "v"), ("e2", "u", "v")]).unwrap()
    }

    fn triangle() -> Multigraph {
        Multigraph::from_ids(&["a", "b", "c"], &[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "a")]).unwrap()
    }

    #[test]
    fn first_polynomials() {
        let lp = Multigraph::from_ids(&["v"], &[("e", "v", "v")]).unwrap();
        assert_eq!(first_symanzik(&lp).unwrap().to_string(), "Y_e");
        assert_eq!(first_symanzik_trees(&lp).unwrap().to_string(), "Y_e");
        assert_eq!(first_symanzik(&banana()).unwrap().to_string(), "Y_e1 + Y_e2");
        assert_eq!(first_symanzik(&triangle()).unwrap().to_string(), "Y_e1 + Y_e2 + Y_e3");
        assert_eq!(first_symanzik_trees(&triangle()).unwrap().to_string(), "Y_e1 + Y_e2 + Y_e3");
        let b3 = Multigraph::from_ids(&["u", "v"], &[("e1", "u", "v"), ("e2", "u", "v"), ("e3", "u", "v")]).unwrap();
        let want = "Y_e1*Y_e2 + Y_e1*Y_e3 + Y_e2*Y_e3";
        assert_eq!(first_symanzik_trees(&b3).unwrap().to_string(), want);
        assert_eq!(first_symanzik(&b3).unwrap().to_string(), want);
    }

    #[test]
    fn edge_quadratic_coordinates() {
        let g = banana();
        let q = edge_quadratics(&g, &g.cycle_basis().unwrap());
        // basis cycle e2 - e1
        assert_eq!(q[0].c, vec![-1]);
        assert_eq!(q[1].c, vec![1]);
        assert_eq!(q[0].matrix(), vec![vec![1]]);
        let tree = Multigraph::from_ids(&["a", "b"], &[("e", "a", "b")]).unwrap();
        assert!(edge_quadratics(&tree, &tree.cycle_basis().unwrap())[0].c.is_empty());
    }

    #[test]
    fn second_polynomials() {
        let g = banana();
        let m = MomentumAssignment::scalar(&[1, -1]).unwrap();
        assert_eq!(second_symanzik_forests(&g, &m).unwrap().to_string(), "Y_e1*Y_e2");
        assert_eq!(second_symanzik(&g, &m).unwrap().to_string(), "Y_e1*Y_e2");
        let lp = Multigraph::from_ids(&["v"], &[("e", "v", "v")]).unwrap();
        let z = MomentumAssignment::scalar(&[0]).unwrap();
        assert!(second_symanzik_forests(&lp, &z).unwrap().is_zero());
        assert!(second_symanzik(&lp, &z).unwrap().is_zero());
    }

    #[test]
    fn triangle_second_polynomial() {
        // p = (2, 3, -5): forests {e1}, {e2}, {e3} isolate c, a, b respectively
        let g = triangle();
        let m = MomentumAssignment::scalar(&[2, 3, -5]).unwrap();
        let want = "9*Y_e1*Y_e2 + 4*Y_e1*Y_e3 + 25*Y_e2*Y_e3";
        assert_eq!(second_symanzik_forests(&g, &m).unwrap().to_string(), want);
        assert_eq!(second_symanzik(&g, &m).unwrap().to_string(), want);
    }
}
