//! Immutable simple undirected graphs with bitmask adjacency.
//!
//! Every graph in this crate is small (at most [`MAX_VERTICES`] vertices), so
//! a neighbourhood is a single `u64`. Constructions never mutate their inputs;
//! they return new values.

mod expr;
mod families;
mod graph6;
mod iso;
mod json;
mod params;
pub mod corpus;

use std::fmt;

use thiserror::Error;

pub use expr::parse_graph_expr;
pub use families::{family_generator, Family};
pub use graph6::{decode_graph6, encode_graph6};
pub use iso::{canonical_form, is_isomorphic, is_isomorphic_within, ISO_MAX_VERTICES};
pub use json::GraphJson;
pub use params::{
    back_degrees, chromatic_number, chromatic_number_within, clique_number, clique_number_within,
    coloring_number, degeneracy_order, degree_stats, param_report, ParamReport,
    CHROMATIC_MAX_VERTICES, CLIQUE_MAX_VERTICES,
};

/// Hard ceiling imposed by the `u64` neighbourhood representation.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge endpoint {vertex} out of range for {n} vertices")]
    EndpointOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph has {n} vertices; at most {max} supported here")]
    TooLarge { n: usize, max: usize },
    #[error("operation requires a non-empty graph")]
    Empty,
    #[error("unknown graph family `{0}`")]
    UnknownFamily(String),
    #[error("invalid size for family {family}: {reason}")]
    InvalidSize { family: String, reason: String },
    #[error("expansion needs {expected} replacements, got {got}")]
    ReplacementCount { expected: usize, got: usize },
    #[error("replacement size must be at least 1 (vertex {0})")]
    ZeroReplacement(usize),
    #[error("label count {got} does not match vertex count {n}")]
    LabelCount { got: usize, n: usize },
    #[error("malformed graph6 string: {0}")]
    Graph6(String),
    #[error("malformed graph JSON: {0}")]
    Json(String),
    #[error("cannot parse graph expression `{input}`: {reason}")]
    Expr { input: String, reason: String },
}

/// Vertex index inside a graph, always `< n` of the owning graph.
pub type VertexId = usize;

/// Simple undirected graph on vertices `0..n`.
///
/// Equality compares structure only (`n` and adjacency); labels are metadata.
#[derive(Clone)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
    labels: Option<Vec<String>>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for Graph {}

impl std::hash::Hash for Graph {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.adj.hash(state);
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

#[inline]
pub(crate) fn bit(v: usize) -> u64 {
    1u64 << v
}

#[inline]
pub(crate) fn full_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the set bits of a mask in increasing order.
pub(crate) fn bits(mut mask: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(v)
        }
    })
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate pairs (in either
    /// orientation) collapse to one edge.
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooLarge { n, max: MAX_VERTICES });
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::EndpointOutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u] |= bit(v);
            adj[v] |= bit(u);
        }
        Ok(Graph { n, adj, labels: None })
    }

    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Self, GraphError> {
        Graph::new(n, &[])
    }

    /// Builds directly from neighbourhood masks. Callers guarantee symmetry.
    pub(crate) fn from_masks(n: usize, adj: Vec<u64>) -> Self {
        debug_assert_eq!(adj.len(), n);
        let g = Graph { n, adj, labels: None };
        debug_assert!(g.validate().is_ok());
        g
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::LabelCount { got: labels.len(), n: self.n });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn without_labels(mut self) -> Self {
        self.labels = None;
        self
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: VertexId) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    #[inline]
    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        self.adj[u] & bit(v) != 0
    }

    /// Neighbourhood of `v` as a bitmask.
    #[inline]
    pub fn neighbor_mask(&self, v: VertexId) -> u64 {
        self.adj[v]
    }

    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> {
        bits(self.adj[v])
    }

    #[inline]
    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(VertexId, VertexId)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in bits(self.adj[u] & !full_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    pub fn vertices(&self) -> std::ops::Range<VertexId> {
        0..self.n
    }

    pub fn vertex_mask(&self) -> u64 {
        full_mask(self.n)
    }

    /// Checks symmetry, irreflexivity and range of the adjacency.
    pub fn validate(&self) -> Result<(), String> {
        if self.adj.len() != self.n {
            return Err(format!("adjacency length {} != n {}", self.adj.len(), self.n));
        }
        let all = full_mask(self.n);
        for v in 0..self.n {
            let m = self.adj[v];
            if m & !all != 0 {
                return Err(format!("vertex {v} has a neighbour out of range"));
            }
            if m & bit(v) != 0 {
                return Err(format!("self-loop at {v}"));
            }
            for u in bits(m) {
                if self.adj[u] & bit(v) == 0 {
                    return Err(format!("asymmetric edge {v}-{u}"));
                }
            }
        }
        if let Some(l) = &self.labels {
            if l.len() != self.n {
                return Err("label count mismatch".into());
            }
        }
        Ok(())
    }

    /// Subgraph induced by `vertices`, renumbered in the given order.
    pub fn induced_subgraph(&self, vertices: &[VertexId]) -> Graph {
        let m = vertices.len();
        let mut adj = vec![0u64; m];
        for (i, &u) in vertices.iter().enumerate() {
            for (j, &v) in vertices.iter().enumerate() {
                if i != j && self.has_edge(u, v) {
                    adj[i] |= bit(j);
                }
            }
        }
        let mut g = Graph::from_masks(m, adj);
        if let Some(l) = &self.labels {
            g.labels = Some(vertices.iter().map(|&v| l[v].clone()).collect());
        }
        g
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut seen = 0u64;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen & bit(s) != 0 {
                continue;
            }
            let mut comp = bit(s);
            let mut frontier = bit(s);
            while frontier != 0 {
                let mut next = 0u64;
                for v in bits(frontier) {
                    next |= self.adj[v];
                }
                frontier = next & !comp;
                comp |= next;
            }
            seen |= comp;
            out.push(bits(comp).collect());
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).max()
    }

    /// Degree sequence in non-increasing order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }
}

/// Builds a graph from `n` and an edge list.
pub fn build_graph(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
    Graph::new(n, edges)
}

pub fn complement(g: &Graph) -> Graph {
    let all = full_mask(g.n);
    let adj = (0..g.n).map(|v| !g.adj[v] & all & !bit(v)).collect();
    let mut out = Graph::from_masks(g.n, adj);
    out.labels = g.labels.clone();
    out
}

/// Disjoint union; the second operand's vertices are shifted by `g1.n()`.
pub fn disjoint_union(g1: &Graph, g2: &Graph) -> Result<Graph, GraphError> {
    let n = g1.n + g2.n;
    if n > MAX_VERTICES {
        return Err(GraphError::TooLarge { n, max: MAX_VERTICES });
    }
    let mut adj = g1.adj.clone();
    adj.extend(g2.adj.iter().map(|m| m << g1.n));
    Ok(Graph::from_masks(n, adj))
}

/// Lexicographic product `G[H]`.
///
/// Vertex `(x, y)` is numbered `x * |V(H)| + y` and labelled `"(x,y)"`.
/// `(x1,y1) ~ (x2,y2)` iff `x1 ~ x2` in `G`, or `x1 = x2` and `y1 ~ y2` in `H`.
pub fn lexicographic_product(g: &Graph, h: &Graph) -> Result<Graph, GraphError> {
    if g.n == 0 || h.n == 0 {
        return Err(GraphError::Empty);
    }
    let n = g.n * h.n;
    if n > MAX_VERTICES {
        return Err(GraphError::TooLarge { n, max: MAX_VERTICES });
    }
    let block = full_mask(h.n);
    let mut adj = vec![0u64; n];
    let mut labels = Vec::with_capacity(n);
    for x in 0..g.n {
        let mut outer = 0u64;
        for x2 in g.neighbors(x) {
            outer |= block << (x2 * h.n);
        }
        for y in 0..h.n {
            adj[x * h.n + y] = outer | (h.adj[y] << (x * h.n));
            labels.push(format!("({x},{y})"));
        }
    }
    let mut out = Graph::from_masks(n, adj);
    out.labels = Some(labels);
    Ok(out)
}

/// Splits a product vertex id into `(copy, layer)` coordinates.
pub fn product_coords(v: VertexId, h_n: usize) -> (VertexId, VertexId) {
    (v / h_n, v % h_n)
}

pub fn product_vertex(copy: VertexId, layer: VertexId, h_n: usize) -> VertexId {
    copy * h_n + layer
}

/// What replaces a base vertex in an expansion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Replacement {
    /// `K_m`
    Complete(usize),
    /// complement of `K_m`
    Independent(usize),
    Graph(Graph),
}

impl Replacement {
    fn size(&self) -> usize {
        match self {
            Replacement::Complete(m) | Replacement::Independent(m) => *m,
            Replacement::Graph(h) => h.n(),
        }
    }

    fn internal(&self) -> Graph {
        match self {
            Replacement::Complete(m) => families::complete(*m),
            Replacement::Independent(m) => Graph::from_masks(*m, vec![0; *m]),
            Replacement::Graph(h) => h.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpansionSpec {
    pub base: Graph,
    pub replacements: Vec<Replacement>,
}

impl ExpansionSpec {
    /// Complete expansion `K[G](m_1, ..., m_n)`.
    pub fn complete(base: &Graph, sizes: &[usize]) -> Self {
        ExpansionSpec {
            base: base.clone(),
            replacements: sizes.iter().map(|&m| Replacement::Complete(m)).collect(),
        }
    }

    /// Independent expansion `I[G](m_1, ..., m_n)`.
    pub fn independent(base: &Graph, sizes: &[usize]) -> Self {
        ExpansionSpec {
            base: base.clone(),
            replacements: sizes.iter().map(|&m| Replacement::Independent(m)).collect(),
        }
    }
}

/// Builds `G(H_1, ..., H_n)`: vertex blocks follow base order, block `i`
/// induces `H_i`, and blocks `i`, `j` are completely joined iff `v_i ~ v_j`.
/// Member `j` of block `i` is labelled `"(i,j)"`.
pub fn expansion(spec: &ExpansionSpec) -> Result<Graph, GraphError> {
    let base = &spec.base;
    if spec.replacements.len() != base.n {
        return Err(GraphError::ReplacementCount {
            expected: base.n,
            got: spec.replacements.len(),
        });
    }
    let mut offsets = Vec::with_capacity(base.n);
    let mut n = 0usize;
    for (i, r) in spec.replacements.iter().enumerate() {
        if r.size() == 0 {
            return Err(GraphError::ZeroReplacement(i));
        }
        offsets.push(n);
        n += r.size();
    }
    if n > MAX_VERTICES {
        return Err(GraphError::TooLarge { n, max: MAX_VERTICES });
    }
    let block_mask: Vec<u64> = spec
        .replacements
        .iter()
        .zip(&offsets)
        .map(|(r, &o)| full_mask(r.size()) << o)
        .collect();
    let mut adj = vec![0u64; n];
    let mut labels = Vec::with_capacity(n);
    for (i, r) in spec.replacements.iter().enumerate() {
        let inner = r.internal();
        let mut outer = 0u64;
        for j in base.neighbors(i) {
            outer |= block_mask[j];
        }
        for y in 0..inner.n {
            adj[offsets[i] + y] = outer | (inner.adj[y] << offsets[i]);
            labels.push(format!("({i},{y})"));
        }
    }
    let mut out = Graph::from_masks(n, adj);
    out.labels = Some(labels);
    Ok(out)
}

/// Block index of every vertex of an expansion with the given block sizes.
pub fn expansion_blocks(sizes: &[usize]) -> Vec<usize> {
    sizes
        .iter()
        .enumerate()
        .flat_map(|(i, &m)| std::iter::repeat_n(i, m))
        .collect()
}
