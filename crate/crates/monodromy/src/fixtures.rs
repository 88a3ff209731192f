//! Crossing data generated jointly with the lifts it must reproduce.
//!
//! A section sitting on vertex v contributes the chain of a path from the
//! root to v: the side-1 paths follow the designated spanning tree (so the
//! side-1 lift is the tree-supported momentum lift), the side-2 paths take
//! random detours through the cycle basis.

use graph_core::Multigraph;
use poly_core::Rational;
use rand::Rng;
use symanzik::sample::random_momenta;
use symanzik::{MinkowskiSpace, MomentumAssignment, SymanzikError};

use crate::{MonodromyError, SectionCrossings, VanishingCycles};

#[derive(Clone, Debug)]
pub struct Fixture {
    pub graph: Multigraph,
    pub space: MinkowskiSpace,
    pub cycles: VanishingCycles,
    pub crossings: SectionCrossings,
    /// Vertex of each side-1 / side-2 section.
    pub at1: Vec<usize>,
    pub at2: Vec<usize>,
    pub p1: Vec<Vec<Rational>>,
    pub p2: Vec<Vec<Rational>>,
}

impl Fixture {
    /// p^G: section momenta summed per vertex.
    pub fn restricted(&self, side: u8) -> Result<MomentumAssignment, SymanzikError> {
        let (at, p) = if side == 1 { (&self.at1, &self.p1) } else { (&self.at2, &self.p2) };
        let mut v = vec![vec![Rational::from_integer(0.into()); self.space.dim()]; self.graph.vertex_count()];
        for (&x, pl) in at.iter().zip(p) {
            for (s, y) in v[x].iter_mut().zip(pl) {
                *s += y;
            }
        }
        MomentumAssignment::new(self.space.clone(), v)
    }

    /// Same data with p₂ replaced by p₁ on identical crossings (self-pairing).
    pub fn diagonal(&self) -> Self {
        let rows: Vec<Vec<i64>> = (0..self.graph.edge_count()).map(|e| self.crossings.d1(e).to_vec()).collect();
        let crossings = SectionCrossings::new(
            self.crossings.side1().to_vec(),
            self.crossings.side1().to_vec(),
            rows.clone(),
            rows,
        )
        .expect("same shape");
        Fixture { crossings, at2: self.at1.clone(), p2: self.p1.clone(), ..self.clone() }
    }
}

/// Consistent fixture on a connected graph; `extra_genus ≥ 0` pads the
/// vanishing-cycle coordinates beyond h.
pub fn generate<R: Rng>(
    rng: &mut R,
    graph: &Multigraph,
    space: &MinkowskiSpace,
    n1: usize,
    n2: usize,
    extra_genus: usize,
) -> Result<Fixture, MonodromyError> {
    let basis = graph.cycle_basis()?;
    let paths = graph.tree_paths()?;
    let h = basis.len();
    let cycles = VanishingCycles::from_basis(graph, &basis, h + extra_genus)?;
    let nv = graph.vertex_count();
    let at1: Vec<usize> = (0..n1).map(|_| rng.gen_range(0..nv)).collect();
    let at2: Vec<usize> = (0..n2).map(|_| rng.gen_range(0..nv)).collect();
    let chain = |v: usize, detour: &[i64]| -> Vec<i64> {
        let mut c = paths[v].clone();
        for (k, gamma) in detour.iter().zip(basis.cycles()) {
            for (x, y) in c.iter_mut().zip(&gamma.0) {
                *x += k * y;
            }
        }
        c
    };
    let c1: Vec<Vec<i64>> = at1.iter().map(|&v| chain(v, &[])).collect();
    let c2: Vec<Vec<i64>> = at2
        .iter()
        .map(|&v| {
            let detour: Vec<i64> = (0..h).map(|_| rng.gen_range(-1..=1)).collect();
            chain(v, &detour)
        })
        .collect();
    let m = graph.edge_count();
    let d1 = (0..m).map(|e| c1.iter().map(|c| -c[e]).collect()).collect();
    let d2 = (0..m).map(|e| c2.iter().map(|c| -c[e]).collect()).collect();
    let crossings = SectionCrossings::new(
        (1..=n1).map(|l| format!("a{l}")).collect(),
        (1..=n2).map(|l| format!("b{l}")).collect(),
        d1,
        d2,
    )?;
    let p1 = random_momenta(rng, space, n1).vectors().to_vec();
    let p2 = random_momenta(rng, space, n2).vectors().to_vec();
    Ok(Fixture { graph: graph.clone(), space: space.clone(), cycles, crossings, at1, at2, p1, p2 })
}
