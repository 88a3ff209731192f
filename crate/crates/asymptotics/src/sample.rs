//! Random consistent data: a monodromy fixture on a graph together with a
//! constant Ψ₀ of matching genus.

use graph_core::Multigraph;
use monodromy::fixtures::{generate, Fixture};
use nalgebra::DVector;
use num_complex::Complex64;
use poincare::sample::random_siegel;
use rand::Rng;
use symanzik::{MinkowskiSpace, MomentumAssignment};

use crate::{AsymptoticsError, HeightData, HolomorphicFixture};

pub fn random_constant_fixture<R: Rng>(rng: &mut R, g: usize) -> HolomorphicFixture {
    let omega = random_siegel(rng, g).matrix().clone();
    let mut c = || Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
    let w = DVector::from_fn(g, |_, _| c());
    let z = DVector::from_fn(g, |_, _| c());
    let rho = c();
    HolomorphicFixture::constant(omega, w, z, rho).expect("square by construction")
}

/// Everything a height computation needs on one graph.
#[derive(Clone, Debug)]
pub struct Sample {
    pub fixture: Fixture,
    pub data: HeightData,
    pub p1: MomentumAssignment,
    pub p2: MomentumAssignment,
}

impl Sample {
    pub fn graph(&self) -> &Multigraph {
        &self.fixture.graph
    }
}

/// `diagonal` makes p₂ = p₁ on identical crossings.
pub fn random_sample<R: Rng>(
    rng: &mut R,
    graph: &Multigraph,
    space: &MinkowskiSpace,
    extra_genus: usize,
    diagonal: bool,
) -> Result<Sample, AsymptoticsError> {
    let n1 = rng.gen_range(2..=4);
    let n2 = rng.gen_range(2..=4);
    let mut fixture = generate(rng, graph, space, n1, n2, extra_genus)?;
    if diagonal {
        fixture = fixture.diagonal();
    }
    let psi0 = random_constant_fixture(rng, fixture.cycles.genus());
    let data = HeightData::from_monodromy(&fixture, &psi0)?;
    let p1 = fixture.restricted(1)?;
    let p2 = fixture.restricted(2)?;
    Ok(Sample { fixture, data, p1, p2 })
}
