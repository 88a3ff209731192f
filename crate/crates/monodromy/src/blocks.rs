use graph_core::{CycleBasis, Multigraph};
use num_traits::Zero;
use poly_core::Rational;
use symanzik::MomentumLift;

use crate::MonodromyError;

/// c_e ∈ ℤ^g per edge: a_e = Σ_i c_{e,i} a_i + (section loops). Entries past h are zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VanishingCycles {
    genus: usize,
    edges: Vec<String>,
    c: Vec<Vec<i64>>,
}

impl VanishingCycles {
    pub fn new(genus: usize, edges: Vec<String>, c: Vec<Vec<i64>>) -> Result<Self, MonodromyError> {
        if c.len() != edges.len() {
            return Err(MonodromyError::Dimension { expected: edges.len(), got: c.len() });
        }
        let c = c
            .into_iter()
            .zip(&edges)
            .map(|(mut v, e)| {
                if v.len() > genus {
                    return Err(MonodromyError::TooManyCycles { edge: e.clone(), got: v.len(), genus });
                }
                v.resize(genus, 0);
                Ok(v)
            })
            .collect::<Result<_, _>>()?;
        Ok(VanishingCycles { genus, edges, c })
    }

    /// Cycle-basis coordinates of each edge, zero-extended to `genus ≥ h`.
    pub fn from_basis(g: &Multigraph, basis: &CycleBasis, genus: usize) -> Result<Self, MonodromyError> {
        let c = (0..g.edge_count()).map(|e| basis.edge_coordinates(e)).collect();
        Self::new(genus, g.edge_ids().to_vec(), c)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn edges(&self) -> &[String] {
        &self.edges
    }

    pub fn c(&self, e: usize) -> &[i64] {
        &self.c[e]
    }

    /// a_e on the (a, b) basis of H₁ of the closed fibre.
    pub fn vanishing_cycle(&self, e: usize) -> Vec<i64> {
        let mut v = self.c[e].clone();
        v.resize(2 * self.genus, 0);
        v
    }
}

/// d_{e,l,1}, d_{e,l,2}: multiplicities of the loops around the sections of
/// the two divisors in a_e. Rows are edges, columns sections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionCrossings {
    side1: Vec<String>,
    side2: Vec<String>,
    d1: Vec<Vec<i64>>,
    d2: Vec<Vec<i64>>,
}

impl SectionCrossings {
    pub fn new(
        side1: Vec<String>,
        side2: Vec<String>,
        d1: Vec<Vec<i64>>,
        d2: Vec<Vec<i64>>,
    ) -> Result<Self, MonodromyError> {
        if d1.len() != d2.len() {
            return Err(MonodromyError::Dimension { expected: d1.len(), got: d2.len() });
        }
        for (rows, n) in [(&d1, side1.len()), (&d2, side2.len())] {
            if let Some(r) = rows.iter().find(|r| r.len() != n) {
                return Err(MonodromyError::Dimension { expected: n, got: r.len() });
            }
        }
        Ok(SectionCrossings { side1, side2, d1, d2 })
    }

    pub fn zero(edges: usize, side1: Vec<String>, side2: Vec<String>) -> Self {
        let (n1, n2) = (side1.len(), side2.len());
        SectionCrossings { side1, side2, d1: vec![vec![0; n1]; edges], d2: vec![vec![0; n2]; edges] }
    }

    pub fn side1(&self) -> &[String] {
        &self.side1
    }

    pub fn side2(&self) -> &[String] {
        &self.side2
    }

    pub fn edge_count(&self) -> usize {
        self.d1.len()
    }

    pub fn d1(&self, e: usize) -> &[i64] {
        &self.d1[e]
    }

    pub fn d2(&self, e: usize) -> &[i64] {
        &self.d2[e]
    }
}

/// ω_e = −Σ_l p_l d_{e,l} for the crossing rows `d` and per-section D-vectors `p`.
pub fn crossing_lift(d: &[&[i64]], p: &[Vec<Rational>], dim: usize) -> MomentumLift {
    let flows = d
        .iter()
        .map(|row| {
            let mut w = vec![Rational::zero(); dim];
            for (k, pl) in row.iter().zip(p) {
                if *k != 0 {
                    for (x, y) in w.iter_mut().zip(pl) {
                        *x -= Rational::from_integer((*k).into()) * y;
                    }
                }
            }
            w
        })
        .collect();
    MomentumLift { dim, flows }
}

impl SectionCrossings {
    /// Lift of the side-1 (`side = 1`) or side-2 momenta read off the crossings.
    pub fn lift(&self, side: u8, p: &[Vec<Rational>], dim: usize) -> MomentumLift {
        let rows: Vec<&[i64]> =
            (0..self.edge_count()).map(|e| if side == 1 { self.d1(e) } else { self.d2(e) }).collect();
        crossing_lift(&rows, p, dim)
    }
}

/// M̃_e (g×g), W̃_e (n₂×g), Z̃_e (g×n₁), Γ_e (n₂×n₁).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TildeBlocks {
    pub m: Vec<Vec<i64>>,
    pub w: Vec<Vec<i64>>,
    pub z: Vec<Vec<i64>>,
    pub gamma: Vec<Vec<i64>>,
}

pub fn tilde_matrices(vc: &VanishingCycles, sc: &SectionCrossings, e: usize) -> Result<TildeBlocks, MonodromyError> {
    if e >= vc.edges.len() || e >= sc.edge_count() {
        return Err(MonodromyError::EdgeIndex(e));
    }
    if vc.edges.len() != sc.edge_count() {
        return Err(MonodromyError::Dimension { expected: vc.edges.len(), got: sc.edge_count() });
    }
    let c = vc.c(e);
    let (d1, d2) = (sc.d1(e), sc.d2(e));
    Ok(TildeBlocks {
        m: c.iter().map(|ci| c.iter().map(|cj| ci * cj).collect()).collect(),
        w: d2.iter().map(|dl| c.iter().map(|cj| -cj * dl).collect()).collect(),
        z: c.iter().map(|ci| d1.iter().map(|dl| ci * dl).collect()).collect(),
        gamma: d2.iter().map(|dk| d1.iter().map(|dl| -dk * dl).collect()).collect(),
    })
}

fn q(k: i64) -> Rational {
    Rational::from_integer(k.into())
}

/// The momentum-contracted blocks of N_e: p₂W̃_e, p₂Γ_eᵗp₁, M̃_e, Z̃_eᵗp₁.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilpotentBlock {
    pub edge: String,
    pub genus: usize,
    pub p2w: Vec<Rational>,
    pub gamma: Rational,
    pub m: Vec<Vec<Rational>>,
    pub zp1: Vec<Rational>,
}

impl NilpotentBlock {
    /// (2g+2)×(2g+2) with block rows/columns of sizes (1, g, g, 1):
    ///
    /// ```text
    /// 0 0 p₂W̃  p₂Γᵗp₁
    /// 0 0 M̃    Z̃ᵗp₁
    /// 0 0 0    0
    /// 0 0 0    0
    /// ```
    pub fn matrix(&self) -> Vec<Vec<Rational>> {
        let g = self.genus;
        let n = 2 * g + 2;
        let mut a = vec![vec![Rational::zero(); n]; n];
        for j in 0..g {
            a[0][1 + g + j] = self.p2w[j].clone();
        }
        a[0][n - 1] = self.gamma.clone();
        for i in 0..g {
            for j in 0..g {
                a[1 + i][1 + g + j] = self.m[i][j].clone();
            }
            a[1 + i][n - 1] = self.zp1[i].clone();
        }
        a
    }

    /// The nonzero (g+1)×(g+1) corner [[p₂W̃, p₂Γᵗp₁], [M̃, Z̃ᵗp₁]].
    pub fn corner(&self) -> Vec<Vec<Rational>> {
        let mut rows = vec![self.p2w.iter().cloned().chain([self.gamma.clone()]).collect::<Vec<_>>()];
        for (mi, zi) in self.m.iter().zip(&self.zp1) {
            rows.push(mi.iter().cloned().chain([zi.clone()]).collect());
        }
        rows
    }

    /// N_e · N_f as full matrices.
    pub fn times(&self, other: &NilpotentBlock) -> Vec<Vec<Rational>> {
        mat_mul(&self.matrix(), &other.matrix())
    }

    pub fn is_integral(&self) -> bool {
        self.matrix().iter().flatten().all(|x| x.is_integer())
    }
}

fn mat_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    let mut s = Rational::zero();
                    for (k, x) in row.iter().enumerate() {
                        if !x.is_zero() && !b[k][j].is_zero() {
                            s += x * &b[k][j];
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

/// N_e for scalar section momenta (one rational per section on each side).
/// Vector momenta are handled one Minkowski component at a time.
pub fn build_ne(
    vc: &VanishingCycles,
    sc: &SectionCrossings,
    p1: &[Rational],
    p2: &[Rational],
    e: usize,
) -> Result<NilpotentBlock, MonodromyError> {
    if p1.len() != sc.side1.len() {
        return Err(MonodromyError::Dimension { expected: sc.side1.len(), got: p1.len() });
    }
    if p2.len() != sc.side2.len() {
        return Err(MonodromyError::Dimension { expected: sc.side2.len(), got: p2.len() });
    }
    let t = tilde_matrices(vc, sc, e)?;
    let g = vc.genus;
    let p2w = (0..g).map(|j| t.w.iter().zip(p2).map(|(row, pl)| pl * q(row[j])).sum()).collect();
    let gamma = t
        .gamma
        .iter()
        .zip(p2)
        .map(|(row, pk)| row.iter().zip(p1).map(|(x, pl)| pk * q(*x) * pl).sum::<Rational>())
        .sum();
    let m = t.m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect();
    let zp1 = t.z.iter().map(|row| row.iter().zip(p1).map(|(x, pl)| q(*x) * pl).sum()).collect();
    let block = NilpotentBlock { edge: vc.edges[e].clone(), genus: g, p2w, gamma, m, zp1 };
    let a = block.matrix();
    if mat_mul(&a, &a).iter().flatten().any(|x| !x.is_zero()) {
        return Err(MonodromyError::NotNilpotent(block.edge));
    }
    Ok(block)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LiftIdentityReport {
    pub checked: usize,
    pub failures: Vec<String>,
}

impl LiftIdentityReport {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every edge and every pair of Minkowski components (a, b):
/// Z̃ᵗp₁ᵃ = −W_e(ω₁ᵃ), p₂ᵇW̃ = ᵗW_e(ω₂ᵇ), p₂ᵇΓᵗp₁ᵃ = −Q_e(ω₁ᵃ, ω₂ᵇ).
pub fn lift_identities_check(
    vc: &VanishingCycles,
    sc: &SectionCrossings,
    p1: &[Vec<Rational>],
    p2: &[Vec<Rational>],
    lift1: &MomentumLift,
    lift2: &MomentumLift,
) -> Result<LiftIdentityReport, MonodromyError> {
    let d1 = lift1.dim;
    let d2 = lift2.dim;
    let comp = |p: &[Vec<Rational>], a: usize| -> Vec<Rational> { p.iter().map(|v| v[a].clone()).collect() };
    let mut report = LiftIdentityReport::default();
    for e in 0..vc.edges.len() {
        let c = vc.c(e);
        for a in 0..d1 {
            for b in 0..d2 {
                let n = build_ne(vc, sc, &comp(p1, a), &comp(p2, b), e)?;
                let w1 = &lift1.flows[e][a];
                let w2 = &lift2.flows[e][b];
                let tag = format!("edge `{}` components ({a},{b})", vc.edges[e]);
                for i in 0..vc.genus {
                    if n.zp1[i] != -(q(c[i]) * w1) {
                        report.failures.push(format!("{tag}: Z p1 != -W_e(w1) at row {i}"));
                    }
                    if n.p2w[i] != q(c[i]) * w2 {
                        report.failures.push(format!("{tag}: p2 W != W_e(w2) at column {i}"));
                    }
                }
                if n.gamma != -(w1 * w2) {
                    report.failures.push(format!("{tag}: p2 Gamma p1 != -Q_e(w1, w2)"));
                }
                report.checked += 1;
            }
        }
    }
    Ok(report)
}

impl VanishingCycles {
    /// Σ_e y_e M̃_e restricted to the first `h` coordinates is positive
    /// definite: exact Gaussian elimination with positive pivots.
    pub fn cycle_block_positive(&self, y: &[Rational], h: usize) -> bool {
        let mut a = vec![vec![Rational::zero(); h]; h];
        for (c, ye) in self.c.iter().zip(y) {
            for i in 0..h {
                for j in 0..h {
                    a[i][j] += ye * q(c[i] * c[j]);
                }
            }
        }
        for k in 0..h {
            if a[k][k] <= Rational::zero() {
                return false;
            }
            for i in k + 1..h {
                let f = &a[i][k] / &a[k][k];
                for j in k..h {
                    let t = &f * &a[k][j];
                    a[i][j] -= t;
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn banana_cycles() -> VanishingCycles {
        VanishingCycles::new(1, vec!["e1".into(), "e2".into()], vec![vec![1], vec![-1]]).unwrap()
    }

    #[test]
    fn zero_cycle_leaves_only_gamma() {
        let vc = VanishingCycles::new(2, vec!["e".into()], vec![vec![]]).unwrap();
        let sc = SectionCrossings::new(vec!["l".into()], vec!["k".into()], vec![vec![2]], vec![vec![3]]).unwrap();
        let t = tilde_matrices(&vc, &sc, 0).unwrap();
        assert!(t.m.iter().chain(&t.w).chain(&t.z).flatten().all(|&x| x == 0));
        assert_eq!(t.gamma, vec![vec![-6]]);
    }

    #[test]
    fn banana_blocks() {
        let vc = banana_cycles();
        let sc = SectionCrossings::new(
            vec!["l1".into(), "l2".into()],
            vec!["l1".into(), "l2".into()],
            vec![vec![1, 0], vec![0, 0]],
            vec![vec![0, 0], vec![0, 0]],
        )
        .unwrap();
        let t = tilde_matrices(&vc, &sc, 0).unwrap();
        assert_eq!(t.z, vec![vec![1, 0]]);
        assert_eq!(t.w, vec![vec![0], vec![0]]);
        assert_eq!(t.m, vec![vec![1]]);
    }

    #[test]
    fn banana_matrix_squares_to_zero() {
        // sections l1 at u, l2 at v with p = (1, -1) on both sides
        let vc = banana_cycles();
        let sc = SectionCrossings::new(
            vec!["l1".into(), "l2".into()],
            vec!["l1".into(), "l2".into()],
            vec![vec![0, -1], vec![0, 0]],
            vec![vec![0, -1], vec![0, 0]],
        )
        .unwrap();
        let p = [q(1), q(-1)];
        let n = build_ne(&vc, &sc, &p, &p, 0).unwrap();
        let want: Vec<Vec<Rational>> = [[0, 0, -1, -1], [0, 0, 1, 1], [0, 0, 0, 0], [0, 0, 0, 0]]
            .iter()
            .map(|r| r.iter().map(|&x| q(x)).collect())
            .collect();
        assert_eq!(n.matrix(), want);
        assert_eq!(n.corner(), vec![vec![q(-1), q(-1)], vec![q(1), q(1)]]);
        assert!(n.is_integral());
    }

    #[test]
    fn degenerate_inputs() {
        let vc = banana_cycles();
        let sc = SectionCrossings::zero(2, vec!["l".into()], vec!["k".into()]);
        let n = build_ne(&vc, &sc, &[q(5)], &[q(7)], 1).unwrap();
        assert!(n.p2w.iter().chain(&n.zp1).all(Zero::is_zero) && n.gamma.is_zero());
        assert_eq!(n.m, vec![vec![q(1)]]);
        let sc = SectionCrossings::new(vec!["l".into()], vec!["k".into()], vec![vec![3], vec![1]], vec![vec![2], vec![1]]).unwrap();
        let n = build_ne(&vc, &sc, &[q(0)], &[q(0)], 0).unwrap();
        assert!(n.p2w.iter().chain(&n.zp1).all(Zero::is_zero) && n.gamma.is_zero());
        assert!(matches!(build_ne(&vc, &sc, &[], &[q(0)], 0), Err(MonodromyError::Dimension { .. })));
        assert!(matches!(VanishingCycles::new(1, vec!["e".into()], vec![vec![1, 1]]), Err(MonodromyError::TooManyCycles { .. })));
    }

    #[test]
    fn zero_momenta_satisfy_identities() {
        let vc = banana_cycles();
        let sc = SectionCrossings::new(vec!["l".into()], vec!["k".into()], vec![vec![3], vec![1]], vec![vec![2], vec![1]]).unwrap();
        let z = vec![vec![q(0)]];
        let l1 = sc.lift(1, &z, 1);
        let l2 = sc.lift(2, &z, 1);
        assert!(lift_identities_check(&vc, &sc, &z, &z, &l1, &l2).unwrap().ok());
    }

    #[test]
    fn positive_cycle_block() {
        let vc = banana_cycles();
        assert!(vc.cycle_block_positive(&[q(1), q(2)], 1));
    }
}
