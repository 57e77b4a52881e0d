use serde::{Deserialize, Serialize};

use super::{bit, bits, Graph, GraphError, VertexId};

/// Default desk-scale bound for [`clique_number`].
pub const CLIQUE_MAX_VERTICES: usize = 32;
/// Default desk-scale bound for [`chromatic_number`].
pub const CHROMATIC_MAX_VERTICES: usize = 32;

/// Removal sequence of min-degree peeling (ties to the lowest index) and
/// the largest degree seen at removal time.
fn peel(g: &Graph) -> (Vec<VertexId>, usize) {
    let mut alive = g.vertex_mask();
    let mut removal = Vec::with_capacity(g.n());
    let mut degeneracy = 0;
    while alive != 0 {
        let (v, d) = bits(alive)
            .map(|v| (v, (g.neighbor_mask(v) & alive).count_ones() as usize))
            .min_by_key(|&(v, d)| (d, v))
            .expect("alive is non-empty");
        degeneracy = degeneracy.max(d);
        alive &= !bit(v);
        removal.push(v);
    }
    (removal, degeneracy)
}

/// Degeneracy ordering `x_1, ..., x_n`: the reverse of the order in which
/// min-degree peeling removes vertices. Every back degree is at most the
/// degeneracy.
pub fn degeneracy_order(g: &Graph) -> Result<Vec<VertexId>, GraphError> {
    if g.is_empty() {
        return Err(GraphError::Empty);
    }
    let (mut removal, _) = peel(g);
    removal.reverse();
    Ok(removal)
}

/// Back degree of each position of `order`: neighbours that appear earlier.
pub fn back_degrees(g: &Graph, order: &[VertexId]) -> Vec<usize> {
    let mut seen = 0u64;
    order
        .iter()
        .map(|&v| {
            let d = (g.neighbor_mask(v) & seen).count_ones() as usize;
            seen |= bit(v);
            d
        })
        .collect()
}

/// `col(G) = 1 + degeneracy(G)`.
pub fn coloring_number(g: &Graph) -> Result<usize, GraphError> {
    if g.is_empty() {
        return Err(GraphError::Empty);
    }
    Ok(1 + peel(g).1)
}

/// `(δ, Δ)`.
pub fn degree_stats(g: &Graph) -> Result<(usize, usize), GraphError> {
    match (g.min_degree(), g.max_degree()) {
        (Some(a), Some(b)) => Ok((a, b)),
        _ => Err(GraphError::Empty),
    }
}

pub fn clique_number(g: &Graph) -> Result<usize, GraphError> {
    clique_number_within(g, CLIQUE_MAX_VERTICES)
}

/// Exact clique number by branch and bound; refuses graphs above `max_n`.
pub fn clique_number_within(g: &Graph, max_n: usize) -> Result<usize, GraphError> {
    if g.n() > max_n {
        return Err(GraphError::TooLarge { n: g.n(), max: max_n });
    }
    fn expand(g: &Graph, size: usize, mut cand: u64, best: &mut usize) {
        if cand == 0 {
            *best = (*best).max(size);
            return;
        }
        while cand != 0 {
            if size + cand.count_ones() as usize <= *best {
                return;
            }
            let v = cand.trailing_zeros() as usize;
            cand &= !bit(v);
            expand(g, size + 1, cand & g.neighbor_mask(v), best);
        }
    }
    let mut best = 0;
    expand(g, 0, g.vertex_mask(), &mut best);
    Ok(best)
}

pub fn chromatic_number(g: &Graph) -> Result<usize, GraphError> {
    chromatic_number_within(g, CHROMATIC_MAX_VERTICES)
}

/// Exact chromatic number: backtracking k-colourability between the clique
/// lower bound and the colouring-number upper bound.
pub fn chromatic_number_within(g: &Graph, max_n: usize) -> Result<usize, GraphError> {
    if g.n() > max_n {
        return Err(GraphError::TooLarge { n: g.n(), max: max_n });
    }
    if g.is_empty() {
        return Ok(0);
    }
    let lower = clique_number_within(g, max_n)?;
    let upper = coloring_number(g)?;
    // colour in degeneracy order so back-neighbours are few
    let order = degeneracy_order(g)?;
    for k in lower..upper {
        if k_colorable(g, &order, k) {
            return Ok(k);
        }
    }
    Ok(upper)
}

fn k_colorable(g: &Graph, order: &[VertexId], k: usize) -> bool {
    fn go(g: &Graph, order: &[VertexId], i: usize, k: usize, used: usize, color: &mut [usize]) -> bool {
        if i == order.len() {
            return true;
        }
        let v = order[i];
        let mut forbidden = 0u64;
        for u in g.neighbors(v) {
            if color[u] != usize::MAX {
                forbidden |= bit(color[u]);
            }
        }
        // colours above `used` are interchangeable; only try the first fresh one
        let limit = k.min(used + 1);
        for c in 0..limit {
            if forbidden & bit(c) == 0 {
                color[v] = c;
                if go(g, order, i + 1, k, used.max(c + 1), color) {
                    return true;
                }
            }
        }
        color[v] = usize::MAX;
        false
    }
    let mut color = vec![usize::MAX; g.n()];
    go(g, order, 0, k, 0, &mut color)
}

/// Structural parameters of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamReport {
    pub delta: usize,
    #[serde(rename = "Delta")]
    pub max_delta: usize,
    pub omega: usize,
    pub chi: usize,
    pub col: usize,
}

pub fn param_report(g: &Graph) -> Result<ParamReport, GraphError> {
    let (delta, max_delta) = degree_stats(g)?;
    Ok(ParamReport {
        delta,
        max_delta,
        omega: clique_number(g)?,
        chi: chromatic_number(g)?,
        col: coloring_number(g)?,
    })
}
