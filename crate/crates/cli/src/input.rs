//! JSON decoding for every command. Complex numbers are `[re, im]` pairs
//! (a bare number is accepted as real); rationals follow the graph schema.

use std::path::Path;

use analytic_lab::{DegenerationFamily, MarkedCharge, DEFAULT_SCHEDULE};
use asymptotics::{AdmissibleSegment, EdgePath, FixtureTerm, HolomorphicFixture, Oscillation};
use graph_core::json::{
    array, float, index, join, object, only_keys, parse_text, rational_vec, required, string, uint, GraphDoc,
    SchemaError,
};
use graph_core::Multigraph;
use monodromy::fixtures::Fixture;
use monodromy::{parse_crossings, VanishingCycles};
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use poincare::{BiextensionPoint, SiegelPoint};
use poly_core::Rational;
use serde_json::Value;
use stable_curve::{DualGraphCurve, MarkedMomenta};
use symanzik::{MinkowskiSpace, MomentumAssignment};

use crate::InputError;

pub fn read_json(path: &Path) -> Result<Value, InputError> {
    let name = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|e| InputError::new("", format!("cannot read: {e}")).in_file(&name))?;
    parse_text(&text).map_err(|e| InputError::from(e).in_file(&name))
}

/// A graph document with its graph and Minkowski space (scalar by default).
#[derive(Clone, Debug)]
pub struct GraphInput {
    pub doc: GraphDoc,
    pub graph: Multigraph,
    pub space: MinkowskiSpace,
}

impl GraphInput {
    pub fn from_value(v: &Value) -> Result<Self, InputError> {
        let doc = GraphDoc::from_value(v)?;
        let graph = doc.graph()?;
        let space = match &doc.minkowski {
            Some(m) => MinkowskiSpace::new(m.matrix.clone()).map_err(|e| InputError::new("minkowski.matrix", e))?,
            None => MinkowskiSpace::scalar(),
        };
        Ok(GraphInput { doc, graph, space })
    }

    pub fn load(path: &Path) -> Result<Self, InputError> {
        let v = read_json(path)?;
        Self::from_value(&v).map_err(|e| e.in_file(&path.display().to_string()))
    }

    pub fn curve(&self, marked: bool) -> Result<DualGraphCurve, InputError> {
        let marks: Vec<(String, String)> = if marked {
            self.doc.markings.iter().map(|m| (m.id.clone(), m.vertex.clone())).collect()
        } else {
            Vec::new()
        };
        DualGraphCurve::new(self.graph.clone(), &marks).map_err(|e| InputError::new("markings", e))
    }

    /// Marking momenta summed per vertex; zero without markings.
    pub fn vertex_momenta(&self) -> Result<MomentumAssignment, InputError> {
        if self.doc.markings.is_empty() {
            return Ok(MomentumAssignment::zero(self.space.clone(), self.graph.vertex_count()));
        }
        let mut momenta = Vec::with_capacity(self.doc.markings.len());
        for (i, m) in self.doc.markings.iter().enumerate() {
            if m.momentum.is_empty() {
                return Err(InputError::new(join(&index("markings", i), "momentum"), "momentum is required"));
            }
            momenta.push((m.id.clone(), m.momentum.clone()));
        }
        let mm = MarkedMomenta::new(self.space.clone(), momenta).map_err(|e| InputError::new("markings", e))?;
        self.curve(true)?.restrict_momenta(&mm).map_err(|e| InputError::new("markings", e))
    }
}

/// `e1=1.0,e2=0.5`; unlisted edges get length 1.
pub fn edge_lengths(text: Option<&str>, g: &Multigraph) -> Result<Vec<f64>, InputError> {
    let mut y = vec![1.0; g.edge_count()];
    let Some(text) = text else { return Ok(y) };
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (id, val) = item.split_once('=').ok_or_else(|| InputError::new("--y", format!("expected `edge=value`, got `{item}`")))?;
        let e = g.edge_index(id.trim()).ok_or_else(|| InputError::new("--y", format!("unknown edge `{}`", id.trim())))?;
        let v: f64 = val.trim().parse().map_err(|_| InputError::new("--y", format!("cannot parse `{val}` for edge `{id}`")))?;
        if !(v > 0.0 && v.is_finite()) {
            return Err(InputError::new("--y", format!("length of `{id}` must be positive")));
        }
        y[e] = v;
    }
    Ok(y)
}

pub fn complex(v: &Value, path: &str) -> Result<Complex64, SchemaError> {
    if let Some(x) = v.as_f64() {
        return Ok(Complex64::new(x, 0.0));
    }
    let xs = array(v, path)?;
    if xs.len() != 2 {
        return Err(SchemaError::new(path, "expected a number or [re, im]"));
    }
    Ok(Complex64::new(float(&xs[0], &index(path, 0))?, float(&xs[1], &index(path, 1))?))
}

pub fn complex_vec(v: &Value, path: &str) -> Result<DVector<Complex64>, SchemaError> {
    let xs = array(v, path)?.iter().enumerate().map(|(i, x)| complex(x, &index(path, i))).collect::<Result<Vec<_>, _>>()?;
    Ok(DVector::from_vec(xs))
}

pub fn complex_matrix(v: &Value, path: &str) -> Result<DMatrix<Complex64>, SchemaError> {
    let rows = array(v, path)?;
    let n = rows.len();
    let mut m = DMatrix::zeros(n, n);
    for (i, r) in rows.iter().enumerate() {
        let p = index(path, i);
        let row = complex_vec(r, &p)?;
        if row.len() != n {
            return Err(SchemaError::new(p, format!("expected {n} entries (square matrix)")));
        }
        m.set_row(i, &row.transpose());
    }
    Ok(m)
}

pub fn complex_to_value(z: Complex64) -> Value {
    serde_json::json!([z.re, z.im])
}

/// `{"omega", "w", "z", "rho"}`.
pub fn biextension_point(v: &Value, path: &str) -> Result<BiextensionPoint, InputError> {
    let (omega, w, z, rho) = period_data(v, path, &[])?;
    let omega = SiegelPoint::new(omega).map_err(|e| InputError::new(join(path, "omega"), e))?;
    BiextensionPoint::new(omega, w, z, rho).map_err(|e| InputError::new(path, e))
}

type PeriodData = (DMatrix<Complex64>, DVector<Complex64>, DVector<Complex64>, Complex64);

fn period_data(v: &Value, path: &str, extra: &[&str]) -> Result<PeriodData, SchemaError> {
    let o = object(v, path)?;
    let mut keys = vec!["omega", "w", "z", "rho"];
    keys.extend_from_slice(extra);
    only_keys(o, path, &keys)?;
    let omega = complex_matrix(required(o, path, "omega")?, &join(path, "omega"))?;
    let w = complex_vec(required(o, path, "w")?, &join(path, "w"))?;
    let z = complex_vec(required(o, path, "z")?, &join(path, "z"))?;
    let rho = complex(required(o, path, "rho")?, &join(path, "rho"))?;
    Ok((omega, w, z, rho))
}

/// Constant `{"omega", "w", "z", "rho"}` or polynomial
/// `{"genus", "vars", "radius", "terms": [{"exponent", "omega", "w", "z", "rho"}]}`.
pub fn holomorphic_fixture(v: &Value, path: &str) -> Result<HolomorphicFixture, InputError> {
    let o = object(v, path)?;
    let fix = if o.contains_key("terms") {
        only_keys(o, path, &["genus", "vars", "radius", "terms"])?;
        let genus = uint(required(o, path, "genus")?, &join(path, "genus"))? as usize;
        let vars = uint(required(o, path, "vars")?, &join(path, "vars"))? as usize;
        let radius = float(required(o, path, "radius")?, &join(path, "radius"))?;
        let tp = join(path, "terms");
        let mut terms = Vec::new();
        for (i, t) in array(required(o, path, "terms")?, &tp)?.iter().enumerate() {
            let p = index(&tp, i);
            let (omega, w, z, rho) = period_data(t, &p, &["exponent"])?;
            let ep = join(&p, "exponent");
            let exponent = match object(t, &p)?.get("exponent") {
                Some(e) => array(e, &ep)?
                    .iter()
                    .enumerate()
                    .map(|(k, x)| {
                        let q = index(&ep, k);
                        u32::try_from(uint(x, &q)?).map_err(|_| SchemaError::new(q, "exponent too large"))
                    })
                    .collect::<Result<_, _>>()?,
                None => Vec::new(),
            };
            terms.push(FixtureTerm { exponent, omega, w, z, rho });
        }
        HolomorphicFixture::polynomial(genus, vars, radius, terms)
    } else {
        let (omega, w, z, rho) = period_data(v, path, &[])?;
        HolomorphicFixture::constant(omega, w, z, rho)
    };
    fix.map_err(|e| InputError::new(path, e))
}

/// Sections of both divisors: ids, the vertex each sits on, and momenta.
#[derive(Clone, Debug, PartialEq)]
pub struct Sections {
    pub ids: [Vec<String>; 2],
    pub at: [Vec<usize>; 2],
    pub momenta: [Vec<Vec<Rational>>; 2],
}

/// `{"side1": [{"id", "vertex", "momentum"}], "side2": [..]}`.
pub fn sections(v: &Value, path: &str, input: &GraphInput) -> Result<Sections, InputError> {
    let o = object(v, path)?;
    only_keys(o, path, &["side1", "side2"])?;
    let mut out = Sections { ids: Default::default(), at: Default::default(), momenta: Default::default() };
    for (s, key) in ["side1", "side2"].iter().enumerate() {
        let sp = join(path, key);
        let mut sum = vec![Rational::from_integer(0.into()); input.space.dim()];
        for (i, x) in array(required(o, path, key)?, &sp)?.iter().enumerate() {
            let p = index(&sp, i);
            let so = object(x, &p)?;
            only_keys(so, &p, &["id", "vertex", "momentum"])?;
            let id = string(required(so, &p, "id")?, &join(&p, "id"))?;
            if out.ids[s].contains(&id) {
                return Err(InputError::new(join(&p, "id"), format!("duplicate section id `{id}`")));
            }
            let vx = string(required(so, &p, "vertex")?, &join(&p, "vertex"))?;
            let at = input
                .graph
                .vertex_index(&vx)
                .ok_or_else(|| InputError::new(join(&p, "vertex"), format!("unknown vertex `{vx}`")))?;
            let mp = join(&p, "momentum");
            let m = rational_vec(required(so, &p, "momentum")?, &mp)?;
            if m.len() != input.space.dim() {
                return Err(InputError::new(mp, format!("expected {} components", input.space.dim())));
            }
            for (t, x) in sum.iter_mut().zip(&m) {
                *t += x;
            }
            out.ids[s].push(id);
            out.at[s].push(at);
            out.momenta[s].push(m);
        }
        if sum.iter().any(|x| *x != Rational::from_integer(0.into())) {
            return Err(InputError::new(sp, "conservation law violated: section momenta do not sum to zero"));
        }
    }
    Ok(out)
}

/// Monodromy fixture from a graph, `{"edges": ..}` crossing data and sections.
pub fn monodromy_fixture(
    input: &GraphInput,
    crossings: &Value,
    path: &str,
    secs: Sections,
    genus: Option<usize>,
) -> Result<Fixture, InputError> {
    let g = &input.graph;
    let h = g.first_betti().map_err(|e| InputError::new("edges", e))?;
    let genus = genus.unwrap_or(h);
    if genus < h {
        return Err(InputError::new("--genus", format!("genus {genus} is below the first Betti number {h}")));
    }
    let edges: Vec<String> = g.edges().iter().map(|e| e.id.clone()).collect();
    let (cycles, crossings): (VanishingCycles, _) =
        parse_crossings(crossings, path, &edges, genus, &secs.ids[0], &secs.ids[1])?;
    let [at1, at2] = secs.at;
    let [p1, p2] = secs.momenta;
    Ok(Fixture { graph: g.clone(), space: input.space.clone(), cycles, crossings, at1, at2, p1, p2 })
}

/// `{"h0": 0, "edges": [{"edge", "target", "shift", "amplitude", "frequency"}]}`.
pub fn segment(v: &Value, path: &str) -> Result<AdmissibleSegment, InputError> {
    let o = object(v, path)?;
    only_keys(o, path, &["h0", "edges"])?;
    let ep = join(path, "edges");
    let mut edges = Vec::new();
    for (i, x) in array(required(o, path, "edges")?, &ep)?.iter().enumerate() {
        let p = index(&ep, i);
        let eo = object(x, &p)?;
        only_keys(eo, &p, &["edge", "target", "shift", "amplitude", "frequency"])?;
        let opt = |k: &str, d: f64| eo.get(k).map_or(Ok(d), |x| float(x, &join(&p, k)));
        let target = float(required(eo, &p, "target")?, &join(&p, "target"))?;
        if !(target > 0.0 && target.is_finite()) {
            return Err(InputError::new(join(&p, "target"), "target length must be positive"));
        }
        edges.push(EdgePath {
            edge: string(required(eo, &p, "edge")?, &join(&p, "edge"))?,
            target,
            phase: Oscillation { amplitude: opt("amplitude", 0.0)?, frequency: opt("frequency", 1.0)? },
            shift: opt("shift", 0.0)?,
        });
    }
    let mut seg = AdmissibleSegment::new(edges);
    if let Some(h) = o.get("h0") {
        seg.h0 = float(h, &join(path, "h0"))?;
    }
    Ok(seg)
}

fn minkowski(v: &Value, path: &str) -> Result<MinkowskiSpace, InputError> {
    let o = object(v, path)?;
    only_keys(o, path, &["dim", "matrix"])?;
    let dim = uint(required(o, path, "dim")?, &join(path, "dim"))? as usize;
    let mp = join(path, "matrix");
    let rows = array(required(o, path, "matrix")?, &mp)?;
    if rows.len() != dim {
        return Err(InputError::new(mp, format!("expected {dim} rows")));
    }
    let m = rows.iter().enumerate().map(|(i, r)| rational_vec(r, &index(&mp, i))).collect::<Result<Vec<_>, _>>()?;
    MinkowskiSpace::new(m).map_err(|e| InputError::new(mp, e))
}

fn charges(v: &Value, path: &str) -> Result<Vec<MarkedCharge>, InputError> {
    let mut out = Vec::new();
    for (i, x) in array(v, path)?.iter().enumerate() {
        let p = index(path, i);
        let o = object(x, &p)?;
        only_keys(o, &p, &["x", "c", "momentum"])?;
        out.push(MarkedCharge {
            x: o.get("x").map_or(Ok(0.0), |x| float(x, &join(&p, "x")))?,
            c: float(required(o, &p, "c")?, &join(&p, "c"))?,
            momentum: rational_vec(required(o, &p, "momentum")?, &join(&p, "momentum"))?,
        });
    }
    Ok(out)
}

/// `{"y_total", "minkowski"?, "a": [{"x", "c", "momentum"}], "b"?: [..], "schedule"?: [..]}`.
pub fn family(v: &Value, path: &str) -> Result<DegenerationFamily, InputError> {
    let o = object(v, path)?;
    only_keys(o, path, &["y_total", "minkowski", "a", "b", "schedule"])?;
    let space = match o.get("minkowski") {
        Some(m) => minkowski(m, &join(path, "minkowski"))?,
        None => MinkowskiSpace::scalar(),
    };
    let schedule = match o.get("schedule") {
        Some(s) => {
            let sp = join(path, "schedule");
            array(s, &sp)?.iter().enumerate().map(|(i, x)| float(x, &index(&sp, i))).collect::<Result<_, _>>()?
        }
        None => DEFAULT_SCHEDULE.to_vec(),
    };
    Ok(DegenerationFamily {
        y_total: float(required(o, path, "y_total")?, &join(path, "y_total"))?,
        space,
        a: charges(required(o, path, "a")?, &join(path, "a"))?,
        b: o.get("b").map(|b| charges(b, &join(path, "b"))).transpose()?,
        schedule,
    })
}
