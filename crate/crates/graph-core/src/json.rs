//! JSON graph documents with path-qualified validation errors.
//!
//! ```json
//! { "vertices": [{"id": "u", "genus": 0}],
//!   "edges": [{"id": "e1", "tail": "u", "head": "u"}],
//!   "markings": [{"id": "m1", "vertex": "u", "momentum": ["1/2", 0]}],
//!   "minkowski": {"dim": 2, "matrix": [[1, 0], [0, -1]]} }
//! ```
//!
//! Rationals may be JSON integers, finite decimals, or strings `"p/q"`.

use std::fmt;

use poly_core::Rational as BigRational;
use num_traits::One;
use serde_json::{Map, Value};

use crate::graph::Multigraph;

/// Invalid input located by a JSON path such as `edges[2].tail`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

impl SchemaError {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        SchemaError { path: path.into(), message: message.into() }
    }
}

impl fmt::Display for SchemaError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            write!(f, "{}", self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

impl std::error::Error for SchemaError {}

pub fn join(path: &str, key: &str) -> String {
    if path.is_empty() {
        key.to_string()
    } else {
        format!("{path}.{key}")
    }
}

pub fn index(path: &str, i: usize) -> String {
    format!("{path}[{i}]")
}

pub fn parse_text(text: &str) -> Result<Value, SchemaError> {
    serde_json::from_str(text).map_err(|e| SchemaError::new("", format!("invalid JSON: {e}")))
}

pub fn object<'a>(v: &'a Value, path: &str) -> Result<&'a Map<String, Value>, SchemaError> {
    v.as_object().ok_or_else(|| SchemaError::new(path, "expected an object"))
}

/// Rejects keys outside `allowed`.
pub fn only_keys(obj: &Map<String, Value>, path: &str, allowed: &[&str]) -> Result<(), SchemaError> {
    match obj.keys().find(|k| !allowed.contains(&k.as_str())) {
        Some(k) => Err(SchemaError::new(join(path, k), "unknown field")),
        None => Ok(()),
    }
}

pub fn required<'a>(obj: &'a Map<String, Value>, path: &str, key: &str) -> Result<&'a Value, SchemaError> {
    obj.get(key).ok_or_else(|| SchemaError::new(join(path, key), "missing field"))
}

pub fn array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, SchemaError> {
    v.as_array().ok_or_else(|| SchemaError::new(path, "expected an array"))
}

pub fn string(v: &Value, path: &str) -> Result<String, SchemaError> {
    v.as_str().map(str::to_string).ok_or_else(|| SchemaError::new(path, "expected a string"))
}

pub fn uint(v: &Value, path: &str) -> Result<u64, SchemaError> {
    v.as_u64().ok_or_else(|| SchemaError::new(path, "expected a non-negative integer"))
}

pub fn int(v: &Value, path: &str) -> Result<i64, SchemaError> {
    v.as_i64().ok_or_else(|| SchemaError::new(path, "expected an integer"))
}

pub fn float(v: &Value, path: &str) -> Result<f64, SchemaError> {
    v.as_f64().ok_or_else(|| SchemaError::new(path, "expected a number"))
}

pub fn rational(v: &Value, path: &str) -> Result<BigRational, SchemaError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(SchemaError::new(path, "expected a rational (integer, decimal or \"p/q\")")),
    };
    parse_rational_text(&text).ok_or_else(|| SchemaError::new(path, format!("cannot parse `{text}` as a rational")))
}

pub fn rational_vec(v: &Value, path: &str) -> Result<Vec<BigRational>, SchemaError> {
    array(v, path)?.iter().enumerate().map(|(i, x)| rational(x, &index(path, i))).collect()
}

/// Integers as JSON numbers, everything else as `"p/q"`.
pub fn rational_to_value(r: &BigRational) -> Value {
    if r.denom().is_one() {
        if let Ok(i) = i64::try_from(r.numer().clone()) {
            return Value::from(i);
        }
    }
    Value::String(r.to_string())
}

fn parse_rational_text(t: &str) -> Option<BigRational> {
    poly_core::parse_rational(t).ok()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VertexDoc {
    pub id: String,
    pub genus: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeDoc {
    pub id: String,
    pub tail: String,
    pub head: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MarkingDoc {
    pub id: String,
    pub vertex: String,
    pub momentum: Vec<BigRational>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinkowskiDoc {
    pub dim: usize,
    pub matrix: Vec<Vec<BigRational>>,
}

/// A parsed and cross-checked graph document.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphDoc {
    pub vertices: Vec<VertexDoc>,
    pub edges: Vec<EdgeDoc>,
    pub markings: Vec<MarkingDoc>,
    pub minkowski: Option<MinkowskiDoc>,
}

impl GraphDoc {
    pub fn parse(text: &str) -> Result<Self, SchemaError> {
        Self::from_value(&parse_text(text)?)
    }

    pub fn from_value(v: &Value) -> Result<Self, SchemaError> {
        let root = object(v, "")?;
        only_keys(root, "", &["vertices", "edges", "markings", "minkowski"])?;
        let mut vertices = Vec::new();
        for (i, x) in array(required(root, "", "vertices")?, "vertices")?.iter().enumerate() {
            let p = index("vertices", i);
            let o = object(x, &p)?;
            only_keys(o, &p, &["id", "genus"])?;
            let id = string(required(o, &p, "id")?, &join(&p, "id"))?;
            let genus = match o.get("genus") {
                Some(g) => u32::try_from(uint(g, &join(&p, "genus"))?)
                    .map_err(|_| SchemaError::new(join(&p, "genus"), "genus too large"))?,
                None => 0,
            };
            if vertices.iter().any(|w: &VertexDoc| w.id == id) {
                return Err(SchemaError::new(join(&p, "id"), format!("duplicate vertex id `{id}`")));
            }
            vertices.push(VertexDoc { id, genus });
        }
        let known = |id: &str| vertices.iter().any(|w| w.id == id);
        let mut edges = Vec::new();
        for (i, x) in array(required(root, "", "edges")?, "edges")?.iter().enumerate() {
            let p = index("edges", i);
            let o = object(x, &p)?;
            only_keys(o, &p, &["id", "tail", "head"])?;
            let id = string(required(o, &p, "id")?, &join(&p, "id"))?;
            let tail = string(required(o, &p, "tail")?, &join(&p, "tail"))?;
            let head = string(required(o, &p, "head")?, &join(&p, "head"))?;
            for (k, end) in [("tail", &tail), ("head", &head)] {
                if !known(end) {
                    return Err(SchemaError::new(join(&p, k), format!("unknown vertex `{end}`")));
                }
            }
            if edges.iter().any(|e: &EdgeDoc| e.id == id) {
                return Err(SchemaError::new(join(&p, "id"), format!("duplicate edge id `{id}`")));
            }
            edges.push(EdgeDoc { id, tail, head });
        }
        let minkowski = match root.get("minkowski") {
            None => None,
            Some(m) => {
                let o = object(m, "minkowski")?;
                only_keys(o, "minkowski", &["dim", "matrix"])?;
                let dim = uint(required(o, "minkowski", "dim")?, "minkowski.dim")? as usize;
                if dim == 0 {
                    return Err(SchemaError::new("minkowski.dim", "dimension must be at least 1"));
                }
                let rows = array(required(o, "minkowski", "matrix")?, "minkowski.matrix")?;
                if rows.len() != dim {
                    return Err(SchemaError::new("minkowski.matrix", format!("expected {dim} rows")));
                }
                let mut matrix = Vec::new();
                for (i, r) in rows.iter().enumerate() {
                    let p = index("minkowski.matrix", i);
                    let row = rational_vec(r, &p)?;
                    if row.len() != dim {
                        return Err(SchemaError::new(p, format!("expected {dim} entries")));
                    }
                    matrix.push(row);
                }
                for i in 0..dim {
                    for j in 0..i {
                        if matrix[i][j] != matrix[j][i] {
                            return Err(SchemaError::new(
                                format!("minkowski.matrix[{i}][{j}]"),
                                "form must be symmetric",
                            ));
                        }
                    }
                }
                Some(MinkowskiDoc { dim, matrix })
            }
        };
        let mut markings = Vec::new();
        if let Some(ms) = root.get("markings") {
            for (i, x) in array(ms, "markings")?.iter().enumerate() {
                let p = index("markings", i);
                let o = object(x, &p)?;
                only_keys(o, &p, &["id", "vertex", "momentum"])?;
                let id = string(required(o, &p, "id")?, &join(&p, "id"))?;
                let vertex = string(required(o, &p, "vertex")?, &join(&p, "vertex"))?;
                if !known(&vertex) {
                    return Err(SchemaError::new(join(&p, "vertex"), format!("unknown vertex `{vertex}`")));
                }
                let momentum = match o.get("momentum") {
                    Some(m) => rational_vec(m, &join(&p, "momentum"))?,
                    None => Vec::new(),
                };
                let want = minkowski.as_ref().map_or(1, |m| m.dim);
                if !momentum.is_empty() && momentum.len() != want {
                    return Err(SchemaError::new(
                        join(&p, "momentum"),
                        format!("expected {want} components to match the Minkowski dimension"),
                    ));
                }
                if markings.iter().any(|m: &MarkingDoc| m.id == id) {
                    return Err(SchemaError::new(join(&p, "id"), format!("duplicate marking id `{id}`")));
                }
                markings.push(MarkingDoc { id, vertex, momentum });
            }
        }
        Ok(GraphDoc { vertices, edges, markings, minkowski })
    }

    pub fn graph(&self) -> Result<Multigraph, SchemaError> {
        Multigraph::new(
            self.vertices.iter().map(|v| (v.id.clone(), v.genus)),
            self.edges.iter().map(|e| (e.id.clone(), e.tail.clone(), e.head.clone())),
        )
        .map_err(|e| SchemaError::new("edges", e.to_string()))
    }

    pub fn to_value(&self) -> Value {
        let mut root = Map::new();
        root.insert(
            "vertices".into(),
            self.vertices.iter().map(|v| serde_json::json!({"id": v.id, "genus": v.genus})).collect(),
        );
        root.insert(
            "edges".into(),
            self.edges.iter().map(|e| serde_json::json!({"id": e.id, "tail": e.tail, "head": e.head})).collect(),
        );
        if !self.markings.is_empty() {
            root.insert(
                "markings".into(),
                self.markings
                    .iter()
                    .map(|m| {
                        serde_json::json!({
                            "id": m.id,
                            "vertex": m.vertex,
                            "momentum": m.momentum.iter().map(rational_to_value).collect::<Vec<_>>(),
                        })
                    })
                    .collect(),
            );
        }
        if let Some(m) = &self.minkowski {
            root.insert(
                "minkowski".into(),
                serde_json::json!({
                    "dim": m.dim,
                    "matrix": m.matrix.iter()
                        .map(|r| r.iter().map(rational_to_value).collect::<Vec<_>>())
                        .collect::<Vec<_>>(),
                }),
            );
        }
        Value::Object(root)
    }

    /// Document for a bare graph (genera kept, no markings).
    pub fn from_graph(g: &Multigraph) -> Self {
        GraphDoc {
            vertices: g.vertices().iter().map(|v| VertexDoc { id: v.id.clone(), genus: v.genus }).collect(),
            edges: g
                .edges()
                .iter()
                .map(|e| EdgeDoc {
                    id: e.id.clone(),
                    tail: g.vertices()[e.tail].id.clone(),
                    head: g.vertices()[e.head].id.clone(),
                })
                .collect(),
            markings: Vec::new(),
            minkowski: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_full_document() {
        let doc = GraphDoc::parse(
            r#"{"vertices":[{"id":"u","genus":1},{"id":"v"}],
                "edges":[{"id":"e1","tail":"u","head":"v"}],
                "markings":[{"id":"m1","vertex":"u","momentum":["1/2",0.25]},
                            {"id":"m2","vertex":"v","momentum":[-1,"-1/4"]}],
                "minkowski":{"dim":2,"matrix":[[1,0],[0,-1]]}}"#,
        )
        .unwrap();
        assert_eq!(doc.vertices[0].genus, 1);
        assert_eq!(doc.markings[0].momentum[1], BigRational::new(1.into(), 4.into()));
        let again = GraphDoc::from_value(&doc.to_value()).unwrap();
        assert_eq!(again, doc);
        assert_eq!(doc.graph().unwrap().edge_count(), 1);
    }

    #[test]
    fn errors_carry_paths() {
        let e = GraphDoc::parse(r#"{"vertices":[{"id":"u"}],"edges":[{"id":"e","tail":"u","head":"w"}]}"#)
            .unwrap_err();
        assert_eq!(e.path, "edges[0].head");
        let e = GraphDoc::parse(r#"{"vertices":[{"id":"u","colour":1}],"edges":[]}"#).unwrap_err();
        assert_eq!(e.path, "vertices[0].colour");
        let e = GraphDoc::parse(
            r#"{"vertices":[{"id":"u"}],"edges":[],"markings":[{"id":"m","vertex":"u","momentum":["x"]}]}"#,
        )
        .unwrap_err();
        assert_eq!(e.path, "markings[0].momentum[0]");
        let e = GraphDoc::parse(r#"{"vertices":[{"id":"u"}],"edges":[],"minkowski":{"dim":2,"matrix":[[1,2],[0,1]]}}"#)
            .unwrap_err();
        assert_eq!(e.path, "minkowski.matrix[1][0]");
    }

    #[test]
    fn rational_forms() {
        let r = |s: &str| parse_rational_text(s).unwrap();
        assert_eq!(r("0.1"), BigRational::new(1.into(), 10.into()));
        assert_eq!(r("-6/4"), BigRational::new((-3).into(), 2.into()));
        assert_eq!(r("3e2"), BigRational::from_integer(300.into()));
        assert!(parse_rational_text("1/0").is_none());
    }
}
