use std::collections::HashMap;
use std::sync::Arc;

use crate::GraphError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Vertex {
    pub id: String,
    pub genus: u32,
}

/// Oriented edge `tail -> head`, endpoints given as vertex indices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: String,
    pub tail: usize,
    pub head: usize,
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.tail == self.head
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    edge_ids: Arc<Vec<String>>,
}

impl Multigraph {
    /// Builds a graph from `(id, genus)` vertices and `(id, tail, head)` edges.
    pub fn new<V, E>(vertices: V, edges: E) -> Result<Self, GraphError>
    where
        V: IntoIterator<Item = (String, u32)>,
        E: IntoIterator<Item = (String, String, String)>,
    {
        let vertices: Vec<Vertex> = vertices.into_iter().map(|(id, genus)| Vertex { id, genus }).collect();
        let mut index = HashMap::new();
        for (i, v) in vertices.iter().enumerate() {
            if index.insert(v.id.clone(), i).is_some() {
                return Err(GraphError::DuplicateVertex(v.id.clone()));
            }
        }
        let mut out = Vec::new();
        for (id, tail, head) in edges {
            let look = |v: &String| {
                index
                    .get(v)
                    .copied()
                    .ok_or_else(|| GraphError::UnknownVertex { edge: id.clone(), vertex: v.clone() })
            };
            let (t, h) = (look(&tail)?, look(&head)?);
            out.push(Edge { id, tail: t, head: h });
        }
        out.sort_by(|a, b| a.id.cmp(&b.id));
        for w in out.windows(2) {
            if w[0].id == w[1].id {
                return Err(GraphError::DuplicateEdge(w[0].id.clone()));
            }
        }
        let edge_ids = Arc::new(out.iter().map(|e| e.id.clone()).collect());
        Ok(Multigraph { vertices, edges: out, edge_ids })
    }

    /// Genus-zero vertices and edges given as string slices.
    pub fn from_ids(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Result<Self, GraphError> {
        Self::new(
            vertices.iter().map(|v| (v.to_string(), 0)),
            edges.iter().map(|(e, t, h)| (e.to_string(), t.to_string(), h.to_string())),
        )
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edge identifiers in canonical order; shared as a polynomial registry.
    pub fn edge_ids(&self) -> &Arc<Vec<String>> {
        &self.edge_ids
    }

    pub fn vertex_index(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    pub fn edge_index(&self, id: &str) -> Option<usize> {
        self.edges.binary_search_by(|e| e.id.as_str().cmp(id)).ok()
    }

    /// Number of edge ends at each vertex; a loop contributes two.
    pub fn valencies(&self) -> Vec<usize> {
        let mut val = vec![0; self.vertices.len()];
        for e in &self.edges {
            val[e.tail] += 1;
            val[e.head] += 1;
        }
        val
    }

    /// Connected-component label of every vertex, labels in first-seen order.
    pub fn components(&self) -> Vec<usize> {
        let mut uf = UnionFind::new(self.vertices.len());
        for e in &self.edges {
            uf.union(e.tail, e.head);
        }
        let mut label = HashMap::new();
        (0..self.vertices.len())
            .map(|v| {
                let r = uf.find(v);
                let next = label.len();
                *label.entry(r).or_insert(next)
            })
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        !self.vertices.is_empty() && self.components().iter().all(|&c| c == 0)
    }

    fn require_connected(&self) -> Result<(), GraphError> {
        if self.vertices.is_empty() {
            Err(GraphError::Empty)
        } else if !self.is_connected() {
            Err(GraphError::Disconnected)
        } else {
            Ok(())
        }
    }

    /// |V| x |E| incidence matrix: +1 at the head, -1 at the tail, loops zero.
    pub fn boundary_matrix(&self) -> Vec<Vec<i64>> {
        let mut b = vec![vec![0i64; self.edges.len()]; self.vertices.len()];
        for (j, e) in self.edges.iter().enumerate() {
            b[e.head][j] += 1;
            b[e.tail][j] -= 1;
        }
        b
    }

    /// h = |E| - |V| + 1.
    pub fn first_betti(&self) -> Result<usize, GraphError> {
        self.require_connected()?;
        Ok(self.edges.len() + 1 - self.vertices.len())
    }

    /// Greedy spanning tree in edge order: the lexicographically smallest
    /// tree by edge id. Returns sorted edge indices.
    pub fn spanning_tree(&self) -> Result<Vec<usize>, GraphError> {
        self.require_connected()?;
        let mut uf = UnionFind::new(self.vertices.len());
        Ok((0..self.edges.len()).filter(|&i| uf.union(self.edges[i].tail, self.edges[i].head)).collect())
    }

    /// Copy with edge `i` reversed.
    pub fn flip_edge(&self, i: usize) -> Self {
        let mut g = self.clone();
        let e = &mut g.edges[i];
        std::mem::swap(&mut e.tail, &mut e.head);
        g
    }

    /// Replaces edge `id` by `id.a: tail -> mid` and `id.b: mid -> head`
    /// through a new genus-zero vertex `mid`.
    pub fn subdivide_edge(&self, id: &str, mid: &str) -> Result<Self, GraphError> {
        let i = self.edge_index(id).ok_or_else(|| GraphError::UnknownEdge(id.to_string()))?;
        let vid = |k: usize| self.vertices[k].id.clone();
        let mut vertices: Vec<(String, u32)> = self.vertices.iter().map(|v| (v.id.clone(), v.genus)).collect();
        vertices.push((mid.to_string(), 0));
        let mut edges = Vec::new();
        for (j, e) in self.edges.iter().enumerate() {
            if j == i {
                edges.push((format!("{id}.a"), vid(e.tail), mid.to_string()));
                edges.push((format!("{id}.b"), mid.to_string(), vid(e.head)));
            } else {
                edges.push((e.id.clone(), vid(e.tail), vid(e.head)));
            }
        }
        Self::new(vertices, edges)
    }

    /// Same graph with new vertex genera (indexed like `vertices()`).
    pub fn with_genera(&self, genera: &[u32]) -> Self {
        let mut g = self.clone();
        for (v, &k) in g.vertices.iter_mut().zip(genera) {
            v.genus = k;
        }
        g
    }
}

pub(crate) struct UnionFind {
    pub(crate) parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Merges the classes of `a` and `b`; false if they were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boundary_columns() {
        let g = Multigraph::from_ids(&["u", "v"], &[("e1", "u", "v"), ("l", "v", "v")]).unwrap();
        let b = g.boundary_matrix();
        assert_eq!(b, vec![vec![-1, 0], vec![1, 0]]);
    }

    #[test]
    fn edges_sorted_lexicographically() {
        let g = Multigraph::from_ids(&["a", "b"], &[("e2", "a", "b"), ("e10", "a", "b"), ("e1", "b", "a")])
            .unwrap();
        let ids: Vec<_> = g.edges().iter().map(|e| e.id.as_str()).collect();
        assert_eq!(ids, ["e1", "e10", "e2"]);
        assert_eq!(g.edge_index("e2"), Some(2));
    }

    #[test]
    fn rejects_bad_input() {
        assert_eq!(
            Multigraph::from_ids(&["u"], &[("e", "u", "w")]),
            Err(GraphError::UnknownVertex { edge: "e".into(), vertex: "w".into() })
        );
        assert_eq!(
            Multigraph::from_ids(&["u"], &[("e", "u", "u"), ("e", "u", "u")]),
            Err(GraphError::DuplicateEdge("e".into()))
        );
        assert_eq!(Multigraph::from_ids(&["u", "u"], &[]), Err(GraphError::DuplicateVertex("u".into())));
        let two = Multigraph::from_ids(&["u", "v"], &[]).unwrap();
        assert_eq!(two.first_betti(), Err(GraphError::Disconnected));
    }

    #[test]
    fn betti_numbers() {
        let lp = Multigraph::from_ids(&["v"], &[("e", "v", "v")]).unwrap();
        assert_eq!(lp.first_betti(), Ok(1));
        let tri = Multigraph::from_ids(&["a", "b", "c"], &[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "a")])
            .unwrap();
        assert_eq!(tri.first_betti(), Ok(1));
        let b3 = Multigraph::from_ids(&["u", "v"], &[("e1", "u", "v"), ("e2", "u", "v"), ("e3", "u", "v")])
            .unwrap();
        assert_eq!(b3.first_betti(), Ok(2));
    }

    #[test]
    fn valency_counts_loops_twice() {
        let g = Multigraph::from_ids(&["u", "v"], &[("a", "u", "v"), ("l", "u", "u")]).unwrap();
        assert_eq!(g.valencies(), vec![3, 1]);
    }

    #[test]
    fn subdivision_keeps_betti() {
        let tri = Multigraph::from_ids(&["a", "b", "c"], &[("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "a")])
            .unwrap();
        let s = tri.subdivide_edge("e2", "m").unwrap();
        assert_eq!(s.edge_count(), 4);
        assert_eq!(s.first_betti(), tri.first_betti());
    }
}
