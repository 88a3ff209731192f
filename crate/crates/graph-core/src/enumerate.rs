use crate::graph::{Multigraph, UnionFind};

/// Result of spanning-tree enumeration. A disconnected graph has no
/// spanning tree; `disconnected` records why the list is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTrees {
    pub trees: Vec<Vec<usize>>,
    pub disconnected: bool,
}

/// Acyclic spanning subgraph with two components. `side[v]` is 0 for the
/// component containing vertex 0, 1 otherwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoForest {
    pub edges: Vec<usize>,
    pub side: Vec<u8>,
}

impl Multigraph {
    /// All spanning trees as sorted edge-index lists, in lexicographic order.
    pub fn spanning_trees(&self) -> SpanningTrees {
        if !self.is_connected() {
            return SpanningTrees { trees: Vec::new(), disconnected: true };
        }
        let trees = self.acyclic_subsets(self.vertex_count() - 1);
        SpanningTrees { trees, disconnected: false }
    }

    /// All spanning 2-forests in lexicographic edge order. Empty unless the
    /// graph is connected with at least two vertices.
    pub fn spanning_2forests(&self) -> Vec<TwoForest> {
        if self.vertex_count() < 2 || !self.is_connected() {
            return Vec::new();
        }
        self.acyclic_subsets(self.vertex_count() - 2)
            .into_iter()
            .map(|edges| {
                let mut uf = UnionFind::new(self.vertex_count());
                for &i in &edges {
                    uf.union(self.edges()[i].tail, self.edges()[i].head);
                }
                let r0 = uf.find(0);
                let side = (0..self.vertex_count()).map(|v| u8::from(uf.find(v) != r0)).collect();
                TwoForest { edges, side }
            })
            .collect()
    }

    /// Acyclic edge subsets of exactly `k` edges; loops never qualify.
    fn acyclic_subsets(&self, k: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut chosen = Vec::with_capacity(k);
        let parent: Vec<usize> = (0..self.vertex_count()).collect();
        self.extend(0, k, &mut chosen, parent, &mut out);
        out
    }

    fn extend(&self, start: usize, k: usize, chosen: &mut Vec<usize>, parent: Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if chosen.len() == k {
            out.push(chosen.clone());
            return;
        }
        let m = self.edge_count();
        if m - start < k - chosen.len() {
            return;
        }
        for i in start..m {
            if m - i < k - chosen.len() {
                break;
            }
            let e = &self.edges()[i];
            let mut uf = UnionFind { parent: parent.clone() };
            if uf.union(e.tail, e.head) {
                chosen.push(i);
                self.extend(i + 1, k, chosen, uf.parent, out);
                chosen.pop();
            }
        }
    }
}
