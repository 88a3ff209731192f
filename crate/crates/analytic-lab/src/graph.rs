use graph_core::Multigraph;
use symanzik::{resistance_oracle, MomentumAssignment};

use crate::LabError;

/// Bilinear metric-graph pairing ½(R(p₁ + p₂) − R(p₁) − R(p₂)) where R is
/// the Laplacian pseudo-inverse quadratic form with conductances 1/y_e.
pub fn metric_graph_green(
    g: &Multigraph,
    y: &[f64],
    p1: &MomentumAssignment,
    p2: &MomentumAssignment,
) -> Result<f64, LabError> {
    let both = p1.add(p2)?;
    let r = |m: &MomentumAssignment| resistance_oracle(g, m, y);
    Ok(0.5 * (r(&both)? - r(p1)? - r(p2)?))
}

/// Cycle of total length `total` subdivided at the sorted distinct positions
/// `c` ∈ [0, 1): vertex k sits at c_k, edge k joins c_k to c_{k+1} (cyclically).
/// Returns the graph and its edge lengths in graph edge order.
pub fn subdivided_cycle(c: &[f64], total: f64) -> Result<(Multigraph, Vec<f64>), LabError> {
    let n = c.len();
    if n == 0 || c.windows(2).any(|w| !(w[0] < w[1])) || c[0] < 0.0 || c[n - 1] >= 1.0 {
        return Err(LabError::Positions);
    }
    let vid = |k: usize| format!("v{k:03}");
    let vertices: Vec<(String, u32)> = (0..n).map(|k| (vid(k), 0)).collect();
    let mut edges = Vec::with_capacity(n);
    let mut len = Vec::with_capacity(n);
    for k in 0..n {
        let gap = if k + 1 < n { c[k + 1] - c[k] } else { 1.0 + c[0] - c[n - 1] };
        edges.push((format!("e{k:03}"), vid(k), vid((k + 1) % n)));
        len.push((format!("e{k:03}"), total * gap));
    }
    let g = Multigraph::new(vertices, edges)?;
    let y = g
        .edges()
        .iter()
        .map(|e| len.iter().find(|(id, _)| *id == e.id).map(|(_, l)| *l).expect("edge built above"))
        .collect();
    Ok((g, y))
}
