//! Canonical labelling by colour refinement plus individualisation.
//!
//! Leaves of the search tree are discrete partitions; the canonical form is
//! the lexicographically smallest relabelled adjacency over all leaves. Two
//! vertices of one cell that are twins (same neighbourhood outside the pair)
//! are swapped by an automorphism fixing everything else, so only one of them
//! is individualised.

use super::{bit, bits, Graph, GraphError};

/// Default desk-scale bound for [`is_isomorphic`].
pub const ISO_MAX_VERTICES: usize = 12;

pub fn is_isomorphic(g1: &Graph, g2: &Graph) -> Result<bool, GraphError> {
    is_isomorphic_within(g1, g2, ISO_MAX_VERTICES)
}

pub fn is_isomorphic_within(g1: &Graph, g2: &Graph, max_n: usize) -> Result<bool, GraphError> {
    for g in [g1, g2] {
        if g.n() > max_n {
            return Err(GraphError::TooLarge { n: g.n(), max: max_n });
        }
    }
    if g1.n() != g2.n()
        || g1.edge_count() != g2.edge_count()
        || g1.degree_sequence() != g2.degree_sequence()
    {
        return Ok(false);
    }
    Ok(canonical_form(g1) == canonical_form(g2))
}

/// Rows of the canonically relabelled adjacency. Equal for isomorphic graphs
/// and only for them.
pub fn canonical_form(g: &Graph) -> Vec<u64> {
    let n = g.n();
    if n == 0 {
        return Vec::new();
    }
    let start = refine(g, vec![0; n]);
    let mut best: Option<Vec<u64>> = None;
    search(g, start, &mut best);
    best.expect("at least one leaf")
}

fn search(g: &Graph, colors: Vec<u32>, best: &mut Option<Vec<u64>>) {
    let n = g.n();
    let cells = colors.iter().copied().max().map_or(0, |m| m as usize + 1);
    if cells == n {
        let code = relabel(g, &colors);
        if best.as_ref().is_none_or(|b| code < *b) {
            *best = Some(code);
        }
        return;
    }
    // first non-singleton cell in colour order
    let mut count = vec![0usize; cells];
    for &c in &colors {
        count[c as usize] += 1;
    }
    let target = (0..cells).find(|&c| count[c] > 1).expect("non-discrete") as u32;
    let members: Vec<usize> = (0..n).filter(|&v| colors[v] == target).collect();
    let mut tried: Vec<usize> = Vec::new();
    for &v in &members {
        if tried.iter().any(|&u| twins(g, u, v)) {
            continue;
        }
        tried.push(v);
        let split: Vec<u32> = colors
            .iter()
            .enumerate()
            .map(|(x, &c)| if x == v { 2 * c } else { 2 * c + 1 })
            .collect();
        search(g, refine(g, split), best);
    }
}

fn twins(g: &Graph, u: usize, v: usize) -> bool {
    let mask = !(bit(u) | bit(v));
    g.neighbor_mask(u) & mask == g.neighbor_mask(v) & mask
}

/// Equitable refinement; colours are re-ranked by sorted signature so the
/// result depends only on the isomorphism class of `(g, colors)`.
fn refine(g: &Graph, mut colors: Vec<u32>) -> Vec<u32> {
    let n = g.n();
    colors = rank(&colors.iter().map(|&c| (c, Vec::new())).collect::<Vec<_>>());
    let mut cells = distinct(&colors);
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut ns: Vec<u32> = bits(g.neighbor_mask(v)).map(|u| colors[u]).collect();
                ns.sort_unstable();
                (colors[v], ns)
            })
            .collect();
        let next = rank(&sigs);
        let next_cells = distinct(&next);
        colors = next;
        if next_cells == cells {
            return colors;
        }
        cells = next_cells;
    }
}

fn rank(sigs: &[(u32, Vec<u32>)]) -> Vec<u32> {
    let mut uniq: Vec<&(u32, Vec<u32>)> = sigs.iter().collect();
    uniq.sort();
    uniq.dedup();
    sigs.iter()
        .map(|s| uniq.binary_search(&s).expect("present") as u32)
        .collect()
}

fn distinct(colors: &[u32]) -> usize {
    colors.iter().copied().max().map_or(0, |m| m as usize + 1)
}

fn relabel(g: &Graph, colors: &[u32]) -> Vec<u64> {
    let n = g.n();
    let mut rows = vec![0u64; n];
    for v in 0..n {
        let pv = colors[v] as usize;
        for u in bits(g.neighbor_mask(v)) {
            rows[pv] |= bit(colors[u] as usize);
        }
    }
    rows
}
