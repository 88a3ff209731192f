use std::f64::consts::PI;

use graph_core::Multigraph;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use symanzik::MomentumAssignment;

use crate::fixture::EdgeParameters;
use crate::height::{tropical_height, HeightData};
use crate::AsymptoticsError;

/// The extra 3e-4 sample lets the cubic term of the remainder be fitted
/// instead of leaking ~α′₁α′₂α′₃ into the intercept.
pub const DEFAULT_SCHEDULE: [f64; 4] = [1e-2, 1e-3, 3e-4, 1e-4];

/// a·sin(ω/α′): bounded, and oscillating faster as α′ → 0.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Oscillation {
    pub amplitude: f64,
    pub frequency: f64,
}

impl Oscillation {
    pub fn at(&self, ap: f64) -> f64 {
        if self.amplitude == 0.0 {
            0.0
        } else {
            self.amplitude * (self.frequency / ap).sin()
        }
    }
}

/// z_e(α′) = phase(α′) + i(Y_e/(2πα′) + shift), t_e = exp(2πi z_e), so
/// |t_e|^{α′} → exp(−Y_e). The phase never reaches |t_e|; a constant shift
/// moves α′·H by an exactly linear term in α′.
#[derive(Clone, Debug, PartialEq)]
pub struct EdgePath {
    pub edge: String,
    pub target: f64,
    pub phase: Oscillation,
    pub shift: f64,
}

impl EdgePath {
    pub fn straight(edge: &str, target: f64) -> Self {
        EdgePath { edge: edge.into(), target, phase: Oscillation::default(), shift: 0.0 }
    }

    pub fn z(&self, ap: f64) -> Complex64 {
        Complex64::new(self.phase.at(ap), self.target / (2.0 * PI * ap) + self.shift)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdmissibleSegment {
    pub edges: Vec<EdgePath>,
    pub h0: f64,
}

impl AdmissibleSegment {
    pub fn new(edges: Vec<EdgePath>) -> Self {
        AdmissibleSegment { edges, h0: 0.0 }
    }

    /// Paths reordered to the graph's edge order.
    fn aligned(&self, g: &Multigraph) -> Result<Vec<&EdgePath>, AsymptoticsError> {
        if self.edges.len() != g.edge_count() {
            return Err(AsymptoticsError::Lengths { expected: g.edge_count(), got: self.edges.len() });
        }
        let mut out = Vec::with_capacity(self.edges.len());
        for e in g.edges() {
            let path = self.edges.iter().find(|p| p.edge == e.id).ok_or(AsymptoticsError::NotAdmissible {
                edge: e.id.clone(),
                limit: f64::NAN,
            })?;
            let bounded = path.phase.amplitude.is_finite() && path.shift.is_finite();
            let limit = (-path.target).exp();
            if !(bounded && limit > 0.0 && limit < 1.0) {
                return Err(AsymptoticsError::NotAdmissible { edge: e.id.clone(), limit });
            }
            out.push(path);
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LimitReport {
    /// Intercept a of the fit α′·H(α′) ≈ a + bα′ + cα′².
    pub estimate: f64,
    pub slope: f64,
    pub samples: Vec<(f64, f64)>,
    /// φ(p₁, p₂, Y)/ψ(Y).
    pub prediction: f64,
    pub rel_error: f64,
}

/// Weighted least-squares fit of v ≈ a + bx + cx² + dx³ with row weights
/// 1/x; returns (a, b). Up to four samples are interpolated exactly. The
/// higher terms carry the 1/y expansion of the bounded remainder, which a
/// straight line would leave in the intercept.
pub(crate) fn extrapolate(points: &[(f64, f64)]) -> (f64, f64) {
    let deg = points.len().saturating_sub(1).min(3);
    let xmax = points.iter().map(|p| p.0).fold(0.0, f64::max);
    let a = DMatrix::from_fn(points.len(), deg + 1, |i, j| (points[i].0 / xmax).powi(j as i32) / points[i].0);
    let v = DVector::from_iterator(points.len(), points.iter().map(|p| p.1 / p.0));
    let c = a.svd(true, true).solve(&v, 1e-15).expect("full rank for distinct samples");
    (c[0], if deg > 0 { c[1] / xmax } else { 0.0 })
}

/// α′·height along the segment at each scheduled α′, extrapolated to α′ = 0
/// and compared with φ(p₁, p₂, Y)/ψ(Y).
pub fn limit_along_segment(
    seg: &AdmissibleSegment,
    g: &Multigraph,
    p1: &MomentumAssignment,
    p2: &MomentumAssignment,
    data: &HeightData,
    schedule: &[f64],
) -> Result<LimitReport, AsymptoticsError> {
    let paths = seg.aligned(g)?;
    let mut samples = Vec::with_capacity(schedule.len());
    for &ap in schedule {
        let z: Vec<Complex64> = paths.iter().map(|p| p.z(ap)).collect();
        let s: Vec<Complex64> = z.iter().map(|z| (Complex64::i() * 2.0 * PI * z).exp()).collect();
        let ep = EdgeParameters::with_offset(z.iter().map(|z| z.im).collect(), seg.h0);
        samples.push((ap, ap * data.eval(&ep, &s)?));
    }
    let (estimate, slope) = extrapolate(&samples);
    let y: Vec<f64> = paths.iter().map(|p| p.target).collect();
    let prediction = tropical_height(g, p1, p2, &y)? / (2.0 * PI);
    let rel_error = (estimate - prediction).abs() / prediction.abs().max(f64::MIN_POSITIVE);
    Ok(LimitReport { estimate, slope, samples, prediction, rel_error })
}
