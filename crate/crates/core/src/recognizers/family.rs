use serde::{Deserialize, Serialize};

use super::{classify, contains_induced, ClassReport, Pattern, RecognizeError, MAX_PATTERN};
use crate::graph::{bit, complement, expansion, family_generator, is_isomorphic, ExpansionSpec, Graph, VertexId};

/// The clauses of the family of graphs known to be won by Ann at every
/// palette from the chromatic number up.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FClause {
    Bipartite,
    Chordal,
    Cograph,
    P5K3Free,
    P5PawFree,
    ComplementOfBipartite,
    P5K4KiteBullFree,
    /// Connected, {P6, C5, co-P5, claw}-free, with an induced C6.
    ConnectedC6,
    /// A complete expansion of C5.
    CompleteC5Expansion,
    P5C4Free,
    /// Connected, {P5, co-(P2 ∪ P3), co-P5, dart}-free, with an induced C5.
    ConnectedC5,
}

impl FClause {
    pub const ALL: [FClause; 11] = [
        FClause::Bipartite,
        FClause::Chordal,
        FClause::Cograph,
        FClause::P5K3Free,
        FClause::P5PawFree,
        FClause::ComplementOfBipartite,
        FClause::P5K4KiteBullFree,
        FClause::ConnectedC6,
        FClause::CompleteC5Expansion,
        FClause::P5C4Free,
        FClause::ConnectedC5,
    ];

    fn admits(self, g: &Graph, r: &ClassReport) -> bool {
        use Pattern::*;
        let free = |ps: &[Pattern]| ps.iter().all(|&p| r.free_of(p));
        match self {
            FClause::Bipartite => r.holds("bipartite"),
            FClause::Chordal => r.holds("chordal"),
            FClause::Cograph => r.holds("cograph"),
            FClause::P5K3Free => free(&[P5, K3]),
            FClause::P5PawFree => free(&[P5, Paw]),
            FClause::ComplementOfBipartite => r.holds("complement-of-bipartite"),
            FClause::P5K4KiteBullFree => free(&[P5, K4, Kite, Bull]),
            FClause::ConnectedC6 => g.is_connected() && free(&[P6, C5, CoP5, Claw]) && !r.free_of(C6),
            FClause::CompleteC5Expansion => complete_c5_expansion_sizes(g).is_some(),
            FClause::P5C4Free => free(&[P5, C4]),
            FClause::ConnectedC5 => g.is_connected() && free(&[P5, CoP2UP3, CoP5, Dart]) && !r.free_of(C5),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyReport {
    pub admitted: bool,
    /// Clauses admitting the graph as a whole.
    pub clauses: Vec<FClause>,
    /// Clauses admitting each component; filled only for disconnected graphs,
    /// which are admitted when every component is.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<Vec<FClause>>,
}

fn admitting(g: &Graph) -> Vec<FClause> {
    let r = classify(g);
    FClause::ALL.into_iter().filter(|c| c.admits(g, &r)).collect()
}

/// Which clauses of the family admit `g`.
pub fn family_membership_f(g: &Graph) -> FamilyReport {
    let clauses = admitting(g);
    let mut components = Vec::new();
    if !g.is_connected() && g.n() > 0 {
        components = g.components().iter().map(|c| admitting(&g.induced_subgraph(c))).collect();
    }
    let admitted = !clauses.is_empty() || (!components.is_empty() && components.iter().all(|c| !c.is_empty()));
    FamilyReport { admitted, clauses, components }
}

/// Classes of vertices with equal closed neighbourhoods, by smallest member.
fn true_twin_classes(g: &Graph) -> Vec<Vec<VertexId>> {
    let mut classes: Vec<Vec<VertexId>> = Vec::new();
    for v in g.vertices() {
        let closed = g.neighbor_mask(v) | bit(v);
        match classes.iter_mut().find(|c| g.neighbor_mask(c[0]) | bit(c[0]) == closed) {
            Some(c) => c.push(v),
            None => classes.push(vec![v]),
        }
    }
    classes
}

/// Block sizes `m⃗` when `g` is a complete expansion of C5, read off the
/// true-twin quotient in cycle order starting from the block holding vertex 0.
pub fn complete_c5_expansion_sizes(g: &Graph) -> Option<Vec<usize>> {
    let classes = true_twin_classes(g);
    if classes.len() != 5 {
        return None;
    }
    let reps: Vec<VertexId> = classes.iter().map(|c| c[0]).collect();
    let q = g.induced_subgraph(&reps);
    if !q.is_connected() || q.vertices().any(|v| q.degree(v) != 2) {
        return None;
    }
    let mut order = vec![0usize];
    let mut prev = usize::MAX;
    while order.len() < 5 {
        let cur = *order.last().expect("non-empty");
        let next = q.neighbors(cur).find(|&w| w != prev && !order.contains(&w))?;
        prev = cur;
        order.push(next);
    }
    Some(order.iter().map(|&i| classes[i].len()).collect())
}

/// Block sizes when `g` is isomorphic to an independent expansion of C5,
/// found by comparing against every candidate expansion with `|V(g)|`
/// vertices.
pub fn independent_c5_expansion_sizes(g: &Graph) -> Option<Vec<usize>> {
    let n = g.n();
    if n < 5 {
        return None;
    }
    let c5 = family_generator("C", &[5]).expect("C5");
    let mut sizes = vec![1usize; 5];
    compositions(n - 5, 0, &mut sizes, &mut |m| {
        let cand = expansion(&ExpansionSpec::independent(&c5, m)).ok()?;
        is_isomorphic(g, &cand).ok()?.then(|| m.to_vec())
    })
}

fn compositions<T>(
    left: usize,
    i: usize,
    sizes: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]) -> Option<T>,
) -> Option<T> {
    if i == sizes.len() - 1 {
        sizes[i] += left;
        let r = f(sizes);
        sizes[i] -= left;
        return r;
    }
    for extra in 0..=left {
        sizes[i] += extra;
        let r = compositions(left - extra, i + 1, sizes, f);
        sizes[i] -= extra;
        if r.is_some() {
            return r;
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureVerdict {
    pub closed: bool,
    pub expanded_n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Vec<VertexId>>,
}

fn is_tree(p: &Graph) -> bool {
    p.n() >= 3 && p.is_connected() && p.edge_count() == p.n() - 1
}

fn is_cycle_graph(p: &Graph) -> bool {
    p.n() >= 4 && p.is_connected() && p.vertices().all(|v| p.degree(v) == 2)
}

fn is_path_graph(p: &Graph) -> bool {
    p.is_connected() && p.edge_count() + 1 == p.n() && p.vertices().all(|v| p.degree(v) <= 2)
}

/// Checks that the complete expansion of a pattern-free graph stays
/// pattern-free, for a tree, a long cycle or the complement of a long path.
pub fn expansion_closure_check(g: &Graph, pattern: &Graph, sizes: &[usize]) -> Result<ClosureVerdict, RecognizeError> {
    if pattern.n() > MAX_PATTERN {
        return Err(RecognizeError::PatternTooLarge { n: pattern.n(), max: MAX_PATTERN });
    }
    let shape_ok = is_tree(pattern) || is_cycle_graph(pattern) || (pattern.n() >= 4 && is_path_graph(&complement(pattern)));
    if !shape_ok {
        return Err(RecognizeError::PatternShape);
    }
    if let Some(emb) = contains_induced(g, pattern)? {
        return Err(RecognizeError::NotPatternFree(emb));
    }
    let big = expansion(&ExpansionSpec::complete(g, sizes))?;
    let found = contains_induced(&big, pattern)?;
    Ok(ClosureVerdict { closed: found.is_none(), expanded_n: big.n(), counterexample: found })
}
