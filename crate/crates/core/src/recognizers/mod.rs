//! Induced-subgraph search and certified recognition of the graph classes
//! used by the product strategies and replay suites.

mod family;

use std::collections::{BTreeMap, VecDeque};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{bit, bits, complement, family_generator, full_mask, Graph, GraphError, VertexId};

pub use family::{
    complete_c5_expansion_sizes, expansion_closure_check, family_membership_f, independent_c5_expansion_sizes,
    ClosureVerdict, FClause, FamilyReport,
};

/// Largest pattern [`contains_induced`] accepts.
pub const MAX_PATTERN: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RecognizeError {
    #[error("pattern has {n} vertices; at most {max} supported")]
    PatternTooLarge { n: usize, max: usize },
    #[error("pattern must be a tree on at least 3 vertices, a cycle on at least 4, or the complement of a path on at least 4")]
    PatternShape,
    #[error("input graph already contains the pattern at {0:?}")]
    NotPatternFree(Vec<VertexId>),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// An induced copy of `pattern` in `g`: pattern vertex `i` maps to `emb[i]`,
/// preserving both adjacency and non-adjacency. Candidates are tried in
/// increasing vertex order, so the first embedding found is the
/// lexicographically smallest.
pub fn contains_induced(g: &Graph, pattern: &Graph) -> Result<Option<Vec<VertexId>>, RecognizeError> {
    let p = pattern.n();
    if p > MAX_PATTERN {
        return Err(RecognizeError::PatternTooLarge { n: p, max: MAX_PATTERN });
    }
    if p > g.n() {
        return Ok(None);
    }
    let mut emb = Vec::with_capacity(p);
    Ok(extend(g, pattern, &mut emb, 0).then_some(emb))
}

fn extend(g: &Graph, pattern: &Graph, emb: &mut Vec<VertexId>, used: u64) -> bool {
    let i = emb.len();
    if i == pattern.n() {
        return true;
    }
    let mut cand = full_mask(g.n()) & !used;
    for (j, &w) in emb.iter().enumerate() {
        if pattern.has_edge(i, j) {
            cand &= g.neighbor_mask(w);
        } else {
            cand &= !g.neighbor_mask(w);
        }
    }
    let need = pattern.degree(i);
    for v in bits(cand) {
        if g.degree(v) < need {
            continue;
        }
        emb.push(v);
        if extend(g, pattern, emb, used | bit(v)) {
            return true;
        }
        emb.pop();
    }
    false
}

/// Re-checks an embedding independently of the search.
pub fn is_induced_embedding(g: &Graph, pattern: &Graph, emb: &[VertexId]) -> bool {
    if emb.len() != pattern.n() || emb.iter().any(|&v| v >= g.n()) {
        return false;
    }
    for i in 0..emb.len() {
        for j in 0..i {
            if emb[i] == emb[j] || pattern.has_edge(i, j) != g.has_edge(emb[i], emb[j]) {
                return false;
            }
        }
    }
    true
}

/// Small forbidden patterns, by tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Pattern {
    P4,
    P5,
    P6,
    C4,
    C5,
    C6,
    K3,
    K4,
    Paw,
    Kite,
    Bull,
    Dart,
    Claw,
    CoP5,
    CoP2UP3,
}

impl Pattern {
    pub const ALL: [Pattern; 15] = [
        Pattern::P4,
        Pattern::P5,
        Pattern::P6,
        Pattern::C4,
        Pattern::C5,
        Pattern::C6,
        Pattern::K3,
        Pattern::K4,
        Pattern::Paw,
        Pattern::Kite,
        Pattern::Bull,
        Pattern::Dart,
        Pattern::Claw,
        Pattern::CoP5,
        Pattern::CoP2UP3,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Pattern::P4 => "p4",
            Pattern::P5 => "p5",
            Pattern::P6 => "p6",
            Pattern::C4 => "c4",
            Pattern::C5 => "c5",
            Pattern::C6 => "c6",
            Pattern::K3 => "k3",
            Pattern::K4 => "k4",
            Pattern::Paw => "paw",
            Pattern::Kite => "kite",
            Pattern::Bull => "bull",
            Pattern::Dart => "dart",
            Pattern::Claw => "claw",
            Pattern::CoP5 => "co-p5",
            Pattern::CoP2UP3 => "co-p2up3",
        }
    }

    pub fn graph(self) -> Graph {
        let built = match self {
            Pattern::P4 => family_generator("P", &[4]),
            Pattern::P5 => family_generator("P", &[5]),
            Pattern::P6 => family_generator("P", &[6]),
            Pattern::C4 => family_generator("C", &[4]),
            Pattern::C5 => family_generator("C", &[5]),
            Pattern::C6 => family_generator("C", &[6]),
            Pattern::K3 => family_generator("K", &[3]),
            Pattern::K4 => family_generator("K", &[4]),
            Pattern::Paw => family_generator("paw", &[]),
            Pattern::Kite => family_generator("kite", &[]),
            Pattern::Bull => family_generator("bull", &[]),
            Pattern::Dart => family_generator("dart", &[]),
            Pattern::Claw => family_generator("claw", &[]),
            Pattern::CoP5 => family_generator("co-p5", &[]),
            Pattern::CoP2UP3 => family_generator("co-p2up3", &[]),
        };
        built.expect("fixed pattern")
    }

    /// Report tag for the "free of this pattern" flag.
    pub fn free_tag(self) -> String {
        format!("{}-free", self.tag())
    }
}

/// Certificate attached to a verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// Two independent sets covering the graph.
    Bipartition { left: Vec<VertexId>, right: Vec<VertexId> },
    /// Odd closed walk through distinct vertices, in order.
    OddCycle { cycle: Vec<VertexId> },
    /// Each vertex's later neighbours form a clique.
    EliminationOrder { order: Vec<VertexId> },
    /// Induced cycle on at least 4 vertices, in order.
    ChordlessCycle { cycle: Vec<VertexId> },
    /// Independent sets, pairwise completely joined, covering the graph.
    Parts { parts: Vec<Vec<VertexId>> },
    /// Induced copy of a pattern, pattern vertex order.
    Embedding { pattern: String, vertices: Vec<VertexId> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
}

/// Per-tag verdicts with certificates; see [`classify`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassReport {
    pub n: usize,
    pub tags: BTreeMap<String, Verdict>,
}

impl ClassReport {
    pub fn holds(&self, tag: &str) -> bool {
        self.tags.get(tag).is_some_and(|v| v.holds)
    }

    pub fn free_of(&self, p: Pattern) -> bool {
        self.holds(&p.free_tag())
    }

    /// Re-checks every attached witness against `g`.
    pub fn verify(&self, g: &Graph) -> bool {
        self.tags.iter().all(|(tag, v)| match &v.witness {
            None => true,
            Some(w) => verify_witness(g, tag, v.holds, w),
        })
    }
}

fn is_independent(g: &Graph, set: &[VertexId]) -> bool {
    set.iter().all(|&u| set.iter().all(|&w| !g.has_edge(u, w)))
}

fn covers_exactly(g: &Graph, sets: &[&[VertexId]]) -> bool {
    let mut seen = 0u64;
    for s in sets {
        for &v in *s {
            if v >= g.n() || seen & bit(v) != 0 {
                return false;
            }
            seen |= bit(v);
        }
    }
    seen == full_mask(g.n())
}

fn is_cycle(g: &Graph, cycle: &[VertexId]) -> bool {
    let l = cycle.len();
    l >= 3
        && cycle.iter().all(|&v| v < g.n())
        && (0..l).all(|i| g.has_edge(cycle[i], cycle[(i + 1) % l]))
        && cycle.iter().fold(0u64, |m, &v| m | bit(v)).count_ones() as usize == l
}

fn is_perfect_order(g: &Graph, order: &[VertexId]) -> bool {
    if !covers_exactly(g, &[order]) {
        return false;
    }
    let mut later = full_mask(g.n());
    for &v in order {
        later &= !bit(v);
        let nb = g.neighbor_mask(v) & later;
        if bits(nb).any(|u| nb & !bit(u) & !g.neighbor_mask(u) != 0) {
            return false;
        }
    }
    true
}

fn verify_witness(g: &Graph, tag: &str, holds: bool, w: &Witness) -> bool {
    let target = |g: &Graph| if tag == "complement-of-bipartite" { complement(g) } else { g.clone() };
    match w {
        Witness::Bipartition { left, right } => {
            let h = target(g);
            holds && covers_exactly(&h, &[left, right]) && is_independent(&h, left) && is_independent(&h, right)
        }
        Witness::OddCycle { cycle } => !holds && cycle.len() % 2 == 1 && is_cycle(&target(g), cycle),
        Witness::EliminationOrder { order } => holds && is_perfect_order(g, order),
        Witness::ChordlessCycle { cycle } => {
            let l = cycle.len();
            !holds
                && l >= 4
                && is_cycle(g, cycle)
                && (0..l).all(|i| (i + 2..l).all(|j| (j + 1) % l == i || !g.has_edge(cycle[i], cycle[j])))
        }
        Witness::Parts { parts } => {
            let refs: Vec<&[VertexId]> = parts.iter().map(Vec::as_slice).collect();
            holds
                && covers_exactly(g, &refs)
                && parts.iter().all(|p| is_independent(g, p))
                && parts.iter().enumerate().all(|(i, a)| {
                    parts[..i].iter().all(|b| a.iter().all(|&u| b.iter().all(|&w| g.has_edge(u, w))))
                })
        }
        Witness::Embedding { pattern, vertices } => {
            let pg = match pattern.as_str() {
                "co-p3" => co_p3(),
                p => match Pattern::ALL.iter().find(|x| x.tag() == p) {
                    Some(x) => x.graph(),
                    None => return false,
                },
            };
            !holds && is_induced_embedding(g, &pg, vertices)
        }
    }
}

/// `K_1 ∪ K_2`: vertex 0 isolated, edge 1-2.
fn co_p3() -> Graph {
    Graph::new(3, &[(1, 2)]).expect("fixed pattern")
}

/// Two-colouring by BFS, or an odd cycle.
pub fn bipartition(g: &Graph) -> Result<(Vec<VertexId>, Vec<VertexId>), Vec<VertexId>> {
    let n = g.n();
    let mut side: Vec<Option<bool>> = vec![None; n];
    let mut parent: Vec<Option<VertexId>> = vec![None; n];
    for root in 0..n {
        if side[root].is_some() {
            continue;
        }
        side[root] = Some(false);
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            let su = side[u].expect("queued vertices are sided");
            for w in g.neighbors(u) {
                match side[w] {
                    None => {
                        side[w] = Some(!su);
                        parent[w] = Some(u);
                        queue.push_back(w);
                    }
                    Some(sw) if sw == su => return Err(odd_cycle(&parent, u, w)),
                    _ => {}
                }
            }
        }
    }
    let left = (0..n).filter(|&v| side[v] == Some(false)).collect();
    let right = (0..n).filter(|&v| side[v] == Some(true)).collect();
    Ok((left, right))
}

fn odd_cycle(parent: &[Option<VertexId>], u: VertexId, w: VertexId) -> Vec<VertexId> {
    let path = |mut x: VertexId| {
        let mut p = vec![x];
        while let Some(q) = parent[x] {
            p.push(q);
            x = q;
        }
        p
    };
    let (pu, pw) = (path(u), path(w));
    let lca = *pu.iter().find(|x| pw.contains(x)).expect("same BFS tree");
    let mut cycle: Vec<VertexId> = pu.iter().copied().take_while(|&x| x != lca).collect();
    cycle.push(lca);
    let back: Vec<VertexId> = pw.iter().copied().take_while(|&x| x != lca).collect();
    cycle.extend(back.into_iter().rev());
    cycle
}

/// Maximum cardinality search; the reverse visit order is a perfect
/// elimination order exactly when the graph is chordal.
pub fn mcs_elimination_order(g: &Graph) -> Vec<VertexId> {
    let n = g.n();
    let mut weight = vec![0usize; n];
    let mut visited = 0u64;
    let mut visit = Vec::with_capacity(n);
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| visited & bit(v) == 0)
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .expect("unvisited vertex");
        visited |= bit(v);
        visit.push(v);
        for u in bits(g.neighbor_mask(v) & !visited) {
            weight[u] += 1;
        }
    }
    visit.reverse();
    visit
}

/// An induced cycle on at least 4 vertices, if any.
pub fn chordless_cycle(g: &Graph) -> Option<Vec<VertexId>> {
    for v in 0..g.n() {
        let nb: Vec<VertexId> = g.neighbors(v).collect();
        for (i, &a) in nb.iter().enumerate() {
            for &b in &nb[i + 1..] {
                if g.has_edge(a, b) {
                    continue;
                }
                // shortest a-b path avoiding v and the rest of its closed neighbourhood
                let banned = (g.neighbor_mask(v) | bit(v)) & !bit(a) & !bit(b);
                if let Some(path) = shortest_path(g, a, b, banned) {
                    let mut cycle = vec![v];
                    cycle.extend(path);
                    return Some(cycle);
                }
            }
        }
    }
    None
}

fn shortest_path(g: &Graph, from: VertexId, to: VertexId, banned: u64) -> Option<Vec<VertexId>> {
    let mut prev: Vec<Option<VertexId>> = vec![None; g.n()];
    let mut seen = banned | bit(from);
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        if u == to {
            let mut path = vec![to];
            let mut x = to;
            while let Some(p) = prev[x] {
                path.push(p);
                x = p;
            }
            path.reverse();
            return Some(path);
        }
        for w in bits(g.neighbor_mask(u) & !seen) {
            seen |= bit(w);
            prev[w] = Some(u);
            queue.push_back(w);
        }
    }
    None
}

fn embedding_verdict(g: &Graph, p: Pattern) -> Verdict {
    match contains_induced(g, &p.graph()).expect("patterns are small") {
        None => Verdict { holds: true, witness: None },
        Some(vertices) => Verdict {
            holds: false,
            witness: Some(Witness::Embedding { pattern: p.tag().into(), vertices }),
        },
    }
}

fn bipartite_verdict(g: &Graph) -> Verdict {
    match bipartition(g) {
        Ok((left, right)) => Verdict { holds: true, witness: Some(Witness::Bipartition { left, right }) },
        Err(cycle) => Verdict { holds: false, witness: Some(Witness::OddCycle { cycle }) },
    }
}

/// Components of the complement when they are cliques there, i.e. the parts
/// of a complete multipartite graph.
pub fn multipartite_parts(g: &Graph) -> Result<Vec<Vec<VertexId>>, Vec<VertexId>> {
    if let Some(emb) = contains_induced(g, &co_p3()).expect("small pattern") {
        return Err(emb);
    }
    Ok(complement(g).components())
}

/// Evaluates every class tag on `g`.
pub fn classify(g: &Graph) -> ClassReport {
    let mut tags = BTreeMap::new();
    tags.insert("bipartite".to_string(), bipartite_verdict(g));

    let order = mcs_elimination_order(g);
    let chordal = if is_perfect_order(g, &order) {
        Verdict { holds: true, witness: Some(Witness::EliminationOrder { order }) }
    } else {
        let cycle = chordless_cycle(g).expect("a graph without a perfect elimination order has a hole");
        Verdict { holds: false, witness: Some(Witness::ChordlessCycle { cycle }) }
    };
    tags.insert("chordal".to_string(), chordal);

    let free: BTreeMap<Pattern, Verdict> = Pattern::ALL.iter().map(|&p| (p, embedding_verdict(g, p))).collect();
    tags.insert("cograph".to_string(), free[&Pattern::P4].clone());
    tags.insert("triangle-free".to_string(), free[&Pattern::K3].clone());
    tags.insert("complement-of-bipartite".to_string(), bipartite_verdict(&complement(g)));
    let multipartite = match multipartite_parts(g) {
        Ok(parts) => Verdict { holds: true, witness: Some(Witness::Parts { parts }) },
        Err(vertices) => Verdict {
            holds: false,
            witness: Some(Witness::Embedding { pattern: "co-p3".into(), vertices }),
        },
    };
    tags.insert("complete-multipartite".to_string(), multipartite);
    for (p, v) in free {
        tags.insert(p.free_tag(), v);
    }
    ClassReport { n: g.n(), tags }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{expansion, ExpansionSpec};

    fn fam(t: &str, p: &[usize]) -> Graph {
        family_generator(t, p).unwrap()
    }

    #[test]
    fn induced_examples() {
        let c5 = fam("C", &[5]);
        let emb = contains_induced(&c5, &fam("P", &[4])).unwrap().unwrap();
        assert!(is_induced_embedding(&c5, &fam("P", &[4]), &emb));
        assert_eq!(contains_induced(&c5, &fam("P", &[5])).unwrap(), None);
        let k = expansion(&ExpansionSpec::complete(&fam("P", &[4]), &[2, 2, 2, 2])).unwrap();
        assert_eq!(contains_induced(&k, &fam("C", &[4])).unwrap(), None);
        assert!(matches!(
            contains_induced(&c5, &fam("P", &[7])),
            Err(RecognizeError::PatternTooLarge { n: 7, max: 6 })
        ));
    }

    #[test]
    fn classify_examples() {
        let c4 = classify(&fam("C", &[4]));
        assert!(c4.holds("bipartite") && c4.holds("complete-multipartite") && !c4.holds("chordal"));
        let p5 = classify(&fam("P", &[5]));
        assert!(p5.holds("bipartite") && p5.holds("chordal") && !p5.holds("cograph"));
        let paw = classify(&fam("paw", &[]));
        assert!(!paw.holds("triangle-free") && !paw.holds("complete-multipartite"));
        for r in [(&c4, fam("C", &[4])), (&p5, fam("P", &[5])), (&paw, fam("paw", &[]))] {
            assert!(r.0.verify(&r.1));
        }
    }

    #[test]
    fn witnesses_are_checkable() {
        let c5 = fam("C", &[5]);
        let r = classify(&c5);
        assert!(matches!(&r.tags["bipartite"].witness, Some(Witness::OddCycle { cycle }) if cycle.len() == 5));
        assert!(matches!(&r.tags["chordal"].witness, Some(Witness::ChordlessCycle { cycle }) if cycle.len() == 5));
        assert!(r.verify(&c5));
        // a forged witness must be rejected
        let mut forged = r.clone();
        forged.tags.insert(
            "bipartite".into(),
            Verdict { holds: true, witness: Some(Witness::Bipartition { left: vec![0, 1], right: vec![2, 3, 4] }) },
        );
        assert!(!forged.verify(&c5));
    }

    #[test]
    fn tags_serialize_kebab() {
        let json = serde_json::to_value(classify(&fam("K", &[3]))).unwrap();
        for tag in ["co-p2up3-free", "complement-of-bipartite", "triangle-free", "claw-free"] {
            assert!(json["tags"].get(tag).is_some(), "{tag}");
        }
        assert_eq!(json["tags"]["chordal"]["witness"]["kind"], "elimination-order");
    }
}
