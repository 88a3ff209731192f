//! Stable marked curves through their dual graphs.

use std::fmt;

use graph_core::{GraphError, Multigraph};
use num_traits::Zero;
use poly_core::Rational;
use symanzik::{MinkowskiSpace, MomentumAssignment, SymanzikError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CurveError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Momenta(#[from] SymanzikError),
    #[error("marking `{marking}` refers to unknown vertex `{vertex}`")]
    UnknownVertex { marking: String, vertex: String },
    #[error("duplicate marking id `{0}`")]
    DuplicateMarking(String),
    #[error("no momentum given for marking `{0}`")]
    MissingMomentum(String),
    #[error("momentum for unknown marking `{0}`")]
    UnknownMarking(String),
    #[error("curve is unstable: {0}")]
    Unstable(StabilityReport),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub vertex: String,
    /// 2g(v) − 2 + val(v) [+ n_v]; must be positive.
    pub value: i64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilityReport {
    pub stable: bool,
    pub violations: Vec<Violation>,
}

impl fmt::Display for StabilityReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.stable {
            return write!(f, "stable");
        }
        let parts: Vec<String> =
            self.violations.iter().map(|v| format!("vertex `{}` has 2g-2+val = {} <= 0", v.vertex, v.value)).collect();
        write!(f, "{}", parts.join("; "))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DeformationDimensions {
    pub total: i64,
    pub equisingular: i64,
    pub boundary_divisors: usize,
}

/// A connected dual graph with vertex genera (carried by the graph) and
/// marked points attached to vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualGraphCurve {
    graph: Multigraph,
    markings: Vec<(String, usize)>,
}

impl DualGraphCurve {
    pub fn new(graph: Multigraph, markings: &[(String, String)]) -> Result<Self, CurveError> {
        if !graph.is_connected() {
            return Err(GraphError::Disconnected.into());
        }
        let mut out = Vec::with_capacity(markings.len());
        for (id, vertex) in markings {
            let v = graph
                .vertex_index(vertex)
                .ok_or_else(|| CurveError::UnknownVertex { marking: id.clone(), vertex: vertex.clone() })?;
            if out.iter().any(|(m, _): &(String, usize)| m == id) {
                return Err(CurveError::DuplicateMarking(id.clone()));
            }
            out.push((id.clone(), v));
        }
        Ok(DualGraphCurve { graph, markings: out })
    }

    pub fn unmarked(graph: Multigraph) -> Result<Self, CurveError> {
        Self::new(graph, &[])
    }

    pub fn graph(&self) -> &Multigraph {
        &self.graph
    }

    pub fn markings(&self) -> &[(String, usize)] {
        &self.markings
    }

    fn markings_at(&self) -> Vec<i64> {
        let mut n = vec![0i64; self.graph.vertex_count()];
        for &(_, v) in &self.markings {
            n[v] += 1;
        }
        n
    }

    /// 2g(v) − 2 + val(v) (+ markings at v) > 0 at every vertex; loops count twice.
    pub fn is_stable(&self, with_markings: bool) -> StabilityReport {
        let val = self.graph.valencies();
        let marks = self.markings_at();
        let violations: Vec<Violation> = self
            .graph
            .vertices()
            .iter()
            .enumerate()
            .filter_map(|(v, vx)| {
                let value = 2 * i64::from(vx.genus) - 2 + val[v] as i64 + if with_markings { marks[v] } else { 0 };
                (value <= 0).then(|| Violation { vertex: vx.id.clone(), value })
            })
            .collect();
        StabilityReport { stable: violations.is_empty(), violations }
    }

    /// h + Σ_v g(v).
    pub fn arithmetic_genus(&self) -> usize {
        let h = self.graph.first_betti().expect("connected by construction");
        h + self.graph.vertices().iter().map(|v| v.genus as usize).sum::<usize>()
    }

    /// Unmarked genus-one curves are accepted but lie outside the g ≥ 2 setting
    /// of the unmarked degeneration results.
    pub fn outside_unmarked_scope(&self) -> bool {
        self.markings.is_empty() && self.arithmetic_genus() < 2
    }

    /// Sums marking momenta per vertex.
    pub fn restrict_momenta(&self, mm: &MarkedMomenta) -> Result<MomentumAssignment, CurveError> {
        for (id, _) in &mm.momenta {
            if !self.markings.iter().any(|(m, _)| m == id) {
                return Err(CurveError::UnknownMarking(id.clone()));
            }
        }
        let d = mm.space.dim();
        let mut p = vec![vec![Rational::zero(); d]; self.graph.vertex_count()];
        for (id, v) in &self.markings {
            let (_, pi) = mm
                .momenta
                .iter()
                .find(|(m, _)| m == id)
                .ok_or_else(|| CurveError::MissingMomentum(id.clone()))?;
            for (s, x) in p[*v].iter_mut().zip(pi) {
                *s += x;
            }
        }
        Ok(MomentumAssignment::new(mm.space.clone(), p)?)
    }

    /// (3g − 3 [+ n], Σ_v (3g(v) − 3 + val(v) [+ n_v]), |E|). The first is the
    /// sum of the other two.
    pub fn deformation_dimensions(&self, with_markings: bool) -> Result<DeformationDimensions, CurveError> {
        let report = self.is_stable(with_markings);
        if !report.stable {
            return Err(CurveError::Unstable(report));
        }
        let n = if with_markings { self.markings.len() as i64 } else { 0 };
        let total = 3 * self.arithmetic_genus() as i64 - 3 + n;
        let val = self.graph.valencies();
        let marks = self.markings_at();
        let equisingular = self
            .graph
            .vertices()
            .iter()
            .enumerate()
            .map(|(v, vx)| 3 * i64::from(vx.genus) - 3 + val[v] as i64 + if with_markings { marks[v] } else { 0 })
            .sum();
        let dims = DeformationDimensions { total, equisingular, boundary_divisors: self.graph.edge_count() };
        assert_eq!(dims.total, dims.equisingular + dims.boundary_divisors as i64);
        Ok(dims)
    }
}

/// Momenta p_i per marking, conserved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkedMomenta {
    space: MinkowskiSpace,
    momenta: Vec<(String, Vec<Rational>)>,
}

impl MarkedMomenta {
    pub fn new(space: MinkowskiSpace, momenta: Vec<(String, Vec<Rational>)>) -> Result<Self, CurveError> {
        // conservation and dimensions are checked by the unattached assignment
        MomentumAssignment::new(space.clone(), momenta.iter().map(|(_, p)| p.clone()).collect())?;
        Ok(MarkedMomenta { space, momenta })
    }

    pub fn space(&self) -> &MinkowskiSpace {
        &self.space
    }

    pub fn momenta(&self) -> &[(String, Vec<Rational>)] {
        &self.momenta
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn banana() -> Multigraph {
        Multigraph::from_ids(&["u", "v"], &[("e1", "u", "v"), ("e2", "u", "v")]).unwrap()
    }

    fn marked_banana() -> DualGraphCurve {
        DualGraphCurve::new(banana(), &[("p1".into(), "u".into()), ("p2".into(), "v".into())]).unwrap()
    }

    fn scalar(pairs: &[(&str, i64)]) -> MarkedMomenta {
        let ms = pairs.iter().map(|(id, k)| (id.to_string(), vec![Rational::from_integer((*k).into())])).collect();
        MarkedMomenta::new(MinkowskiSpace::scalar(), ms).unwrap()
    }

    #[test]
    fn stability() {
        let c = DualGraphCurve::unmarked(banana()).unwrap();
        let r = c.is_stable(false);
        assert!(!r.stable);
        assert_eq!(r.violations.len(), 2);
        assert_eq!(r.violations[0].value, 0);
        assert!(marked_banana().is_stable(true).stable);
        assert!(!marked_banana().is_stable(false).stable);
        let g2 = Multigraph::new(vec![("x".to_string(), 2)], Vec::<(String, String, String)>::new()).unwrap();
        assert!(DualGraphCurve::unmarked(g2).unwrap().is_stable(false).stable);
    }

    #[test]
    fn genus() {
        let lp = Multigraph::from_ids(&["v"], &[("e", "v", "v")]).unwrap();
        assert_eq!(DualGraphCurve::unmarked(lp).unwrap().arithmetic_genus(), 1);
        assert_eq!(marked_banana().arithmetic_genus(), 1);
        let tri = Multigraph::from_ids(&["a", "b", "c"], &[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "a")])
            .unwrap()
            .with_genera(&[1, 0, 0]);
        assert_eq!(DualGraphCurve::unmarked(tri).unwrap().arithmetic_genus(), 2);
    }

    #[test]
    fn genus_one_unmarked_is_flagged() {
        assert!(DualGraphCurve::unmarked(banana()).unwrap().outside_unmarked_scope());
        assert!(!marked_banana().outside_unmarked_scope());
    }

    #[test]
    fn momentum_restriction() {
        let c = marked_banana();
        let p = c.restrict_momenta(&scalar(&[("p1", 3), ("p2", -3)])).unwrap();
        assert_eq!(p.vectors()[0][0], Rational::from_integer(3.into()));
        let both = DualGraphCurve::new(
            banana(),
            &[("p1".into(), "u".into()), ("p2".into(), "u".into()), ("p3".into(), "v".into())],
        )
        .unwrap();
        let p = both.restrict_momenta(&scalar(&[("p1", 1), ("p2", 4), ("p3", -5)])).unwrap();
        assert_eq!(p.vectors()[0][0], Rational::from_integer(5.into()));
        let one = DualGraphCurve::new(banana(), &[("p1".into(), "u".into()), ("p2".into(), "u".into())]).unwrap();
        let p = one.restrict_momenta(&scalar(&[("p1", 2), ("p2", -2)])).unwrap();
        assert!(p.vectors().iter().flatten().all(Zero::is_zero));
        assert_eq!(c.restrict_momenta(&scalar(&[("p1", 1), ("p2", -1), ("p9", 0)])), Err(CurveError::UnknownMarking("p9".into())));
        assert_eq!(c.restrict_momenta(&scalar(&[("p1", 0)])), Err(CurveError::MissingMomentum("p2".into())));
    }

    #[test]
    fn marking_on_missing_vertex() {
        let err = DualGraphCurve::new(banana(), &[("p1".into(), "w".into())]).unwrap_err();
        assert_eq!(err, CurveError::UnknownVertex { marking: "p1".into(), vertex: "w".into() });
    }

    #[test]
    fn dimensions() {
        let g2 = Multigraph::new(vec![("x".to_string(), 2)], Vec::<(String, String, String)>::new()).unwrap();
        let d = DualGraphCurve::unmarked(g2).unwrap().deformation_dimensions(false).unwrap();
        assert_eq!(d, DeformationDimensions { total: 3, equisingular: 3, boundary_divisors: 0 });
        let d = marked_banana().deformation_dimensions(true).unwrap();
        assert_eq!(d, DeformationDimensions { total: 2, equisingular: 0, boundary_divisors: 2 });
        let bridge = Multigraph::from_ids(&["x", "y"], &[("e", "x", "y")]).unwrap().with_genera(&[1, 1]);
        let d = DualGraphCurve::unmarked(bridge).unwrap().deformation_dimensions(false).unwrap();
        assert_eq!(d, DeformationDimensions { total: 3, equisingular: 2, boundary_divisors: 1 });
        assert!(matches!(
            DualGraphCurve::unmarked(banana()).unwrap().deformation_dimensions(false),
            Err(CurveError::Unstable(_))
        ));
    }
}
