//! Exhaustive and random small-graph corpora.

use std::collections::HashSet;

use rand::Rng;

use super::{bit, canonical_form, Graph};

/// One representative of every isomorphism class on exactly `n` vertices,
/// in a deterministic order (by edge count, then canonical form).
pub fn all_graphs(n: usize) -> Vec<Graph> {
    assert!(n <= 8, "exhaustive enumeration is limited to 8 vertices");
    let mut level = vec![Graph::empty(0).expect("empty graph")];
    for m in 1..=n {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for subset in 0u64..(1u64 << (m - 1)) {
                let mut adj: Vec<u64> = (0..m - 1)
                    .map(|v| g.neighbor_mask(v) | if subset & bit(v) != 0 { bit(m - 1) } else { 0 })
                    .collect();
                adj.push(subset);
                let h = Graph::from_masks(m, adj);
                let form = canonical_form(&h);
                if seen.insert(form.clone()) {
                    next.push((h.edge_count(), form, h));
                }
            }
        }
        next.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
        level = next.into_iter().map(|(_, form, _)| canonical_graph(&form)).collect();
    }
    level
}

/// The graph whose adjacency rows are the given canonical form.
fn canonical_graph(rows: &[u64]) -> Graph {
    Graph::from_masks(rows.len(), rows.to_vec())
}

/// Connected isomorphism classes on `1..=max_n` vertices, smallest first.
pub fn connected_graphs(max_n: usize) -> Vec<Graph> {
    (1..=max_n)
        .flat_map(|n| all_graphs(n).into_iter().filter(|g| g.is_connected()))
        .collect()
}

/// Erdős–Rényi `G(n, p)`.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Graph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).expect("valid random graph")
}
