//! Graph families for sweeps and property tests.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::Multigraph;

fn build(n: usize, pairs: &[(usize, usize)]) -> Multigraph {
    let names: Vec<String> = (0..n).map(|v| format!("v{v}")).collect();
    let edges = pairs
        .iter()
        .enumerate()
        .map(|(k, &(t, h))| (format!("e{}", k + 1), names[t].clone(), names[h].clone()));
    Multigraph::new(names.iter().map(|v| (v.clone(), 0)), edges).expect("valid construction")
}

fn canonical(n: usize, pairs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<Vec<(usize, usize)>> = None;
    loop {
        let mut e: Vec<(usize, usize)> = pairs
            .iter()
            .map(|&(a, b)| {
                let (x, y) = (perm[a], perm[b]);
                (x.min(y), x.max(y))
            })
            .collect();
        e.sort_unstable();
        if best.as_ref().is_none_or(|b| e < *b) {
            best = Some(e);
        }
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| perm[i] < perm[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| perm[j] > perm[i]).expect("successor exists");
        perm.swap(i, j);
        perm[i + 1..].reverse();
    }
    best.unwrap_or_default()
}

/// Every connected multigraph (loops allowed) with at most `max_vertices`
/// vertices and `max_edges` edges, one per isomorphism class, oriented
/// from the smaller to the larger vertex label.
pub fn small_connected(max_vertices: usize, max_edges: usize) -> Vec<Multigraph> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for n in 1..=max_vertices {
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|a| (a..n).map(move |b| (a, b))).collect();
        for m in n - 1..=max_edges {
            let mut choice = Vec::with_capacity(m);
            multisets(&slots, m, 0, &mut choice, &mut |pairs| {
                let g = build(n, pairs);
                if g.is_connected() && seen.insert((n, canonical(n, pairs))) {
                    out.push(g);
                }
            });
        }
    }
    out
}

fn multisets<F: FnMut(&[(usize, usize)])>(
    slots: &[(usize, usize)],
    k: usize,
    start: usize,
    choice: &mut Vec<(usize, usize)>,
    f: &mut F,
) {
    if choice.len() == k {
        f(choice);
        return;
    }
    for i in start..slots.len() {
        choice.push(slots[i]);
        multisets(slots, k, i, choice, f);
        choice.pop();
    }
}

/// Random connected multigraph with `n` vertices and `m ≥ n − 1` edges:
/// a random tree plus random extra edges (loops and parallels allowed),
/// random orientations and a random assignment of edge names.
pub fn random_connected<R: Rng>(rng: &mut R, n: usize, m: usize) -> Multigraph {
    assert!(n >= 1 && m + 1 >= n);
    let mut pairs = Vec::with_capacity(m);
    for v in 1..n {
        pairs.push((rng.gen_range(0..v), v));
    }
    while pairs.len() < m {
        pairs.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    for p in pairs.iter_mut() {
        if rng.gen_bool(0.5) {
            *p = (p.1, p.0);
        }
    }
    pairs.shuffle(rng);
    build(n, &pairs)
}
