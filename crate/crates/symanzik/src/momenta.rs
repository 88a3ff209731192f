use graph_core::Multigraph;
use num_traits::{One, Zero};
use poly_core::{rational_to_f64, Rational};

use crate::SymanzikError;

/// ℚ^D with a symmetric nondegenerate bilinear form of any signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinkowskiSpace {
    form: Vec<Vec<Rational>>,
}

impl MinkowskiSpace {
    pub fn new(form: Vec<Vec<Rational>>) -> Result<Self, SymanzikError> {
        let d = form.len();
        if d == 0 {
            return Err(SymanzikError::Degenerate);
        }
        for (i, row) in form.iter().enumerate() {
            if row.len() != d {
                return Err(SymanzikError::Dimension { expected: d, got: row.len() });
            }
            for j in 0..i {
                if form[i][j] != form[j][i] {
                    return Err(SymanzikError::Asymmetric);
                }
            }
        }
        if rational_det(&form).is_zero() {
            return Err(SymanzikError::Degenerate);
        }
        Ok(MinkowskiSpace { form })
    }

    /// D = 1 with q = [1]: integer-valued divisors.
    pub fn scalar() -> Self {
        MinkowskiSpace { form: vec![vec![Rational::one()]] }
    }

    /// diag(1, −1, …, −1).
    pub fn mostly_minus(d: usize) -> Self {
        let form = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| match (i == j, i == 0) {
                        (false, _) => Rational::zero(),
                        (true, true) => Rational::one(),
                        (true, false) => -Rational::one(),
                    })
                    .collect()
            })
            .collect();
        MinkowskiSpace { form }
    }

    pub fn dim(&self) -> usize {
        self.form.len()
    }

    pub fn form(&self) -> &[Vec<Rational>] {
        &self.form
    }

    pub fn form_f64(&self) -> Vec<Vec<f64>> {
        self.form.iter().map(|r| r.iter().map(rational_to_f64).collect()).collect()
    }

    /// ⟨a, b⟩_q.
    pub fn pair(&self, a: &[Rational], b: &[Rational]) -> Rational {
        let mut s = Rational::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !self.form[i][j].is_zero() {
                    s += ai * &self.form[i][j] * bj;
                }
            }
        }
        s
    }
}

fn rational_det(m: &[Vec<Rational>]) -> Rational {
    let n = m.len();
    let mut a = m.to_vec();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::zero();
        };
        if r != c {
            a.swap(r, c);
            det = -det;
        }
        det *= &a[c][c];
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for j in c..n {
                let t = &f * &a[c][j];
                a[r][j] -= t;
            }
        }
    }
    det
}

/// Vertex momenta p_v ∈ ℚ^D summing to zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentumAssignment {
    space: MinkowskiSpace,
    vectors: Vec<Vec<Rational>>,
}

impl MomentumAssignment {
    pub fn new(space: MinkowskiSpace, vectors: Vec<Vec<Rational>>) -> Result<Self, SymanzikError> {
        let d = space.dim();
        let mut total = vec![Rational::zero(); d];
        for v in &vectors {
            if v.len() != d {
                return Err(SymanzikError::Dimension { expected: d, got: v.len() });
            }
            for (t, x) in total.iter_mut().zip(v) {
                *t += x;
            }
        }
        if let Some(k) = total.iter().position(|t| !t.is_zero()) {
            return Err(SymanzikError::Conservation(k));
        }
        Ok(MomentumAssignment { space, vectors })
    }

    pub fn zero(space: MinkowskiSpace, vertices: usize) -> Self {
        let d = space.dim();
        MomentumAssignment { space, vectors: vec![vec![Rational::zero(); d]; vertices] }
    }

    /// Scalar momenta from integers.
    pub fn scalar(values: &[i64]) -> Result<Self, SymanzikError> {
        Self::new(
            MinkowskiSpace::scalar(),
            values.iter().map(|&v| vec![Rational::from_integer(v.into())]).collect(),
        )
    }

    pub fn space(&self) -> &MinkowskiSpace {
        &self.space
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    pub fn vertex_count(&self) -> usize {
        self.vectors.len()
    }

    pub fn add(&self, other: &Self) -> Result<Self, SymanzikError> {
        if self.space != other.space {
            return Err(SymanzikError::SpaceMismatch);
        }
        if self.vectors.len() != other.vectors.len() {
            return Err(SymanzikError::VertexCount { expected: self.vectors.len(), got: other.vectors.len() });
        }
        let vectors = self
            .vectors
            .iter()
            .zip(&other.vectors)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| x + y).collect())
            .collect();
        Ok(MomentumAssignment { space: self.space.clone(), vectors })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        MomentumAssignment {
            space: self.space.clone(),
            vectors: self.vectors.iter().map(|v| v.iter().map(|x| x * c).collect()).collect(),
        }
    }

    pub(crate) fn check_graph(&self, g: &Multigraph) -> Result<(), SymanzikError> {
        if self.vectors.len() != g.vertex_count() {
            return Err(SymanzikError::VertexCount { expected: g.vertex_count(), got: self.vectors.len() });
        }
        Ok(())
    }
}

/// ω ∈ ℚ^E ⊗ ℚ^D with ∂ω = p; `flows[e]` is the D-vector on edge e.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MomentumLift {
    pub dim: usize,
    pub flows: Vec<Vec<Rational>>,
}

impl MomentumLift {
    /// ω + Σ_i γ_i ⊗ v_i for cycles γ_i and D-vectors v_i.
    pub fn shifted(&self, cycles: &[Vec<i64>], shifts: &[Vec<Rational>]) -> Self {
        let mut flows = self.flows.clone();
        for (c, v) in cycles.iter().zip(shifts) {
            for (e, &k) in c.iter().enumerate() {
                if k != 0 {
                    for (f, x) in flows[e].iter_mut().zip(v) {
                        *f += Rational::from_integer(k.into()) * x;
                    }
                }
            }
        }
        MomentumLift { dim: self.dim, flows }
    }

    pub fn boundary(&self, g: &Multigraph) -> Vec<Vec<Rational>> {
        let d = self.dim;
        let mut b = vec![vec![Rational::zero(); d]; g.vertex_count()];
        for (e, f) in g.edges().iter().zip(&self.flows) {
            for k in 0..d {
                b[e.head][k] += &f[k];
                b[e.tail][k] -= &f[k];
            }
        }
        b
    }
}

/// Lift supported on the designated spanning tree, solved by repeatedly
/// removing a leaf of the tree (never the root) and fixing its edge flow.
pub fn momentum_lift(g: &Multigraph, m: &MomentumAssignment) -> Result<MomentumLift, SymanzikError> {
    m.check_graph(g)?;
    let tree = g.spanning_tree()?;
    let d = m.space().dim();
    let n = g.vertex_count();
    let mut residual: Vec<Vec<Rational>> = m.vectors().to_vec();
    let mut flows = vec![vec![Rational::zero(); d]; g.edge_count()];
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &i in &tree {
        let e = &g.edges()[i];
        incident[e.tail].push(i);
        incident[e.head].push(i);
    }
    let mut alive = vec![true; tree.len().max(g.edge_count())];
    let mut degree: Vec<usize> = incident.iter().map(Vec::len).collect();
    let mut leaves: std::collections::BTreeSet<usize> = (1..n).filter(|&v| degree[v] == 1).collect();
    while let Some(v) = leaves.pop_first() {
        let i = *incident[v].iter().find(|&&i| alive[i]).expect("leaf has one live edge");
        alive[i] = false;
        let e = &g.edges()[i];
        let (sign, w) = if e.head == v { (Rational::one(), e.tail) } else { (-Rational::one(), e.head) };
        // (∂ω)_v = ±ω_e must equal the residual at v
        for k in 0..d {
            flows[i][k] = &sign * &residual[v][k];
            let t = &sign * &flows[i][k];
            residual[w][k] += t;
            residual[v][k] = Rational::zero();
        }
        degree[v] = 0;
        degree[w] -= 1;
        if w != 0 && degree[w] == 1 {
            leaves.insert(w);
        }
    }
    if let Some(k) = residual[0].iter().position(|x| !x.is_zero()) {
        return Err(SymanzikError::Conservation(k));
    }
    Ok(MomentumLift { dim: d, flows })
}
