use crate::graph::Multigraph;
use crate::GraphError;

/// Element of ℤ^E, indexed like `Multigraph::edges`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleVector(pub Vec<i64>);

/// Integral basis of H₁(G, ℤ) ⊂ ℤ^E.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleBasis {
    cycles: Vec<CycleVector>,
    tree: Vec<usize>,
}

impl Multigraph {
    /// For every vertex v, the chain along the designated spanning tree from
    /// the root (vertex 0) to v; its boundary is δ_v − δ_root.
    pub fn tree_paths(&self) -> Result<Vec<Vec<i64>>, GraphError> {
        let tree = self.spanning_tree()?;
        let n = self.vertex_count();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for &i in &tree {
            let e = &self.edges()[i];
            adj[e.tail].push((i, e.head));
            adj[e.head].push((i, e.tail));
        }
        let mut paths: Vec<Option<Vec<i64>>> = vec![None; n];
        paths[0] = Some(vec![0; self.edge_count()]);
        let mut stack = vec![0];
        while let Some(v) = stack.pop() {
            for &(i, w) in &adj[v] {
                if paths[w].is_none() {
                    let mut p = paths[v].clone().expect("visited");
                    // traversing tail -> head adds +e
                    p[i] += if self.edges()[i].head == w { 1 } else { -1 };
                    paths[w] = Some(p);
                    stack.push(w);
                }
            }
        }
        Ok(paths.into_iter().map(|p| p.expect("tree spans")).collect())
    }

    /// Fundamental cycles of the designated spanning tree, one per
    /// non-tree edge in edge order, each with coefficient +1 on that edge.
    pub fn cycle_basis(&self) -> Result<CycleBasis, GraphError> {
        let tree = self.spanning_tree()?;
        let paths = self.tree_paths()?;
        let mut in_tree = vec![false; self.edge_count()];
        for &i in &tree {
            in_tree[i] = true;
        }
        let cycles = self
            .edges()
            .iter()
            .enumerate()
            .filter(|(i, _)| !in_tree[*i])
            .map(|(i, e)| {
                // e + (path head -> tail)
                let mut c: Vec<i64> =
                    paths[e.tail].iter().zip(&paths[e.head]).map(|(t, h)| t - h).collect();
                c[i] += 1;
                CycleVector(c)
            })
            .collect();
        Ok(CycleBasis { cycles, tree })
    }

    /// Vertex at which `∂v ≠ 0`, if any.
    pub fn boundary_defect(&self, v: &[i64]) -> Option<usize> {
        let mut b = vec![0i64; self.vertex_count()];
        for (e, &k) in self.edges().iter().zip(v) {
            b[e.head] += k;
            b[e.tail] -= k;
        }
        b.iter().position(|&x| x != 0)
    }
}

impl CycleBasis {
    /// Advanced constructor for a caller-fixed basis. Accepts only integral
    /// bases of the full cycle lattice.
    pub fn from_vectors(g: &Multigraph, vectors: Vec<Vec<i64>>) -> Result<Self, GraphError> {
        let fundamental = g.cycle_basis()?;
        let h = fundamental.len();
        if vectors.len() != h {
            return Err(GraphError::WrongRank { expected: h, got: vectors.len() });
        }
        for v in &vectors {
            if v.len() != g.edge_count() {
                return Err(GraphError::WrongLength { expected: g.edge_count(), got: v.len() });
            }
            if let Some(k) = g.boundary_defect(v) {
                return Err(GraphError::NotACycle(g.vertices()[k].id.clone()));
            }
        }
        // a cycle is determined by its non-tree coordinates
        let non_tree = fundamental.non_tree_edges(g.edge_count());
        let coords: Vec<Vec<i64>> = vectors.iter().map(|v| non_tree.iter().map(|&e| v[e]).collect()).collect();
        let d = det_i128(&coords);
        if d.abs() != 1 {
            return Err(GraphError::NotIntegral(d.to_string()));
        }
        Ok(CycleBasis { cycles: vectors.into_iter().map(CycleVector).collect(), tree: fundamental.tree })
    }

    /// Basis γ'_i = Σ_j u_ij γ_j for a unimodular integer matrix u.
    pub fn transform(&self, u: &[Vec<i64>]) -> Result<Self, GraphError> {
        let h = self.len();
        if u.len() != h || u.iter().any(|r| r.len() != h) {
            return Err(GraphError::WrongRank { expected: h, got: u.len() });
        }
        let d = det_i128(u);
        if d.abs() != 1 {
            return Err(GraphError::NotIntegral(d.to_string()));
        }
        let m = self.cycles.first().map_or(0, |c| c.0.len());
        let cycles = u
            .iter()
            .map(|row| {
                let mut c = vec![0i64; m];
                for (k, &a) in row.iter().enumerate() {
                    for (x, y) in c.iter_mut().zip(&self.cycles[k].0) {
                        *x += a * y;
                    }
                }
                CycleVector(c)
            })
            .collect();
        Ok(CycleBasis { cycles, tree: self.tree.clone() })
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn cycles(&self) -> &[CycleVector] {
        &self.cycles
    }

    /// Edge indices of the designated spanning tree.
    pub fn tree(&self) -> &[usize] {
        &self.tree
    }

    fn non_tree_edges(&self, m: usize) -> Vec<usize> {
        (0..m).filter(|e| !self.tree.contains(e)).collect()
    }

    /// c_{e,i}: coefficient of edge e in cycle i.
    pub fn coefficient(&self, e: usize, i: usize) -> i64 {
        self.cycles[i].0[e]
    }

    /// The h-vector (c_{e,1}, …, c_{e,h}).
    pub fn edge_coordinates(&self, e: usize) -> Vec<i64> {
        self.cycles.iter().map(|c| c.0[e]).collect()
    }
}

/// Exact determinant of a small integer matrix (Bareiss over i128).
pub(crate) fn det_i128(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[k][k] * a[i][j] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loop_basis() {
        let g = Multigraph::from_ids(&["v"], &[("e", "v", "v")]).unwrap();
        assert_eq!(g.cycle_basis().unwrap().cycles(), &[CycleVector(vec![1])]);
    }

    #[test]
    fn banana_basis() {
        let g = Multigraph::from_ids(&["u", "v"], &[("e1", "u", "v"), ("e2", "u", "v")]).unwrap();
        let b = g.cycle_basis().unwrap();
        // the tree is {e1}; the cycle through e2 is e2 - e1, written here
        // with +1 on the non-tree edge
        assert_eq!(b.cycles(), &[CycleVector(vec![-1, 1])]);
        assert_eq!(b.tree(), &[0]);
    }

    #[test]
    fn tree_has_empty_basis() {
        let g = Multigraph::from_ids(&["a", "b", "c"], &[("e1", "a", "b"), ("e2", "b", "c")]).unwrap();
        assert!(g.cycle_basis().unwrap().is_empty());
    }

    #[test]
    fn rejects_non_unimodular() {
        let g = Multigraph::from_ids(&["v"], &[("e", "v", "v")]).unwrap();
        assert!(matches!(CycleBasis::from_vectors(&g, vec![vec![2]]), Err(GraphError::NotIntegral(_))));
        assert!(CycleBasis::from_vectors(&g, vec![vec![-1]]).is_ok());
    }

    #[test]
    fn integer_det() {
        assert_eq!(det_i128(&[vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(det_i128(&[vec![2, 1, 0], vec![1, 2, 1], vec![0, 1, 2]]), 4);
    }
}
