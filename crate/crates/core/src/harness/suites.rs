use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Case, CorpusEntry, HarnessError, Observed, SuiteConfig};
use crate::graph::corpus::{all_graphs, connected_graphs, random_graph};
use crate::graph::{
    chromatic_number, coloring_number, complement, disjoint_union, encode_graph6, expansion, family_generator,
    is_isomorphic, lexicographic_product, parse_graph_expr, ExpansionSpec, Graph,
};
use crate::recognizers::{expansion_closure_check, family_membership_f};
use crate::solver::{
    ann_wins, exhaustive_playout, indicated_chromatic_number, play_game, BenBranching, GameOutcome, GameState,
    Limits, Outcome,
};
use crate::strategies::{optimal_ben, product_col_ann};

/// Ben lines an exhaustive playout may visit before the case is skipped.
const MAX_LINES: u64 = 20_000_000;

pub(super) fn build(name: &str, cfg: &SuiteConfig) -> Result<Vec<Case>, HarnessError> {
    match name {
        "col-bound" => col_bound(cfg),
        "col-gap" => col_gap(cfg),
        "reduction" => reduction(cfg),
        "union" => union(cfg),
        "f-family" => f_family(cfg),
        "bipartite-expansion" => bipartite_expansion(cfg),
        "complement-duality" => complement_duality(cfg),
        "closure" => closure(cfg),
        "lift" => lift(cfg),
        "monotonicity-audit" => monotonicity_audit(cfg),
        other => Err(HarnessError::UnknownSuite(other.to_string())),
    }
}

fn label(g: &Graph) -> String {
    format!("g6:{}", encode_graph6(g).unwrap_or_else(|_| format!("n{}", g.n())))
}

fn named(expr: &str) -> (String, Graph) {
    (expr.to_string(), parse_graph_expr(expr).expect("built-in expression"))
}

fn outcome_str(o: Outcome) -> &'static str {
    match o {
        Outcome::AnnWins => "ann-wins",
        Outcome::BenWins => "ben-wins",
        Outcome::ResourceLimit => "resource-limit",
    }
}

fn range_str(ks: &[usize]) -> String {
    format!("{ks:?}")
}

/// A corpus line and its graphs.
type Labelled = (String, Vec<Graph>);

/// Entries of the corpus with exactly `arity` graphs, labelled.
fn corpus_tuples(cfg: &SuiteConfig, arity: usize) -> Option<Result<Vec<Labelled>, HarnessError>> {
    let corpus = cfg.corpus.as_ref()?;
    Some(
        corpus
            .iter()
            .enumerate()
            .map(|(i, CorpusEntry { label, graphs })| {
                if graphs.len() != arity {
                    return Err(HarnessError::Corpus {
                        line: i + 1,
                        reason: format!("expected {arity} graph(s) separated by `;`"),
                    });
                }
                Ok((label.clone(), graphs.clone()))
            })
            .collect(),
    )
}

fn pairs_or(cfg: &SuiteConfig, default: &[(&str, &str)]) -> Result<Vec<(String, Graph, Graph)>, HarnessError> {
    match corpus_tuples(cfg, 2) {
        Some(r) => Ok(r?.into_iter().map(|(l, mut gs)| {
            let h = gs.pop().expect("arity 2");
            let g = gs.pop().expect("arity 2");
            (l, g, h)
        }).collect()),
        None => Ok(default
            .iter()
            .map(|(g, h)| (format!("{g}[{h}]"), named(g).1, named(h).1))
            .collect()),
    }
}

fn singles_or(cfg: &SuiteConfig, default: impl FnOnce() -> Vec<(String, Graph)>) -> Result<Vec<(String, Graph)>, HarnessError> {
    match corpus_tuples(cfg, 1) {
        Some(r) => Ok(r?.into_iter().map(|(l, mut gs)| (l, gs.pop().expect("arity 1"))).collect()),
        None => Ok(default()),
    }
}

fn too_big(g: &Graph, limits: Limits) -> Option<Observed> {
    (g.n() > limits.max_vertices).then(|| Observed::skip(format!("{} vertices exceeds limit {}", g.n(), limits.max_vertices)))
}

// Ann wins G[H] at k = col(G)·col(H), and the product strategy beats every
// Ben line there.
fn col_bound(cfg: &SuiteConfig) -> Result<Vec<Case>, HarnessError> {
    let pairs = pairs_or(cfg, &[("P2", "P2"), ("P3", "P2"), ("P4", "P2"), ("C5", "P2"), ("P2", "P3"), ("K3", "P2")])?;
    let limits = cfg.limits;
    let mut cases = Vec::new();
    for (name, g, h) in pairs {
        let gh = lexicographic_product(&g, &h)?;
        let k = coloring_number(&g)? * coloring_number(&h)?;
        cases.push(Case::new(
            format!("{name} k={k}"),
            "ann-wins; product-col wins every Ben line",
            move || {
                if let Some(skip) = too_big(&gh, limits) {
                    return skip;
                }
                let verdict = match ann_wins(&gh, k, limits) {
                    Ok(v) => v.outcome,
                    Err(e) => return Observed::new(format!("solver error: {e}"), false),
                };
                if verdict == Outcome::ResourceLimit {
                    return Observed::skip("resource-limit");
                }
                let policy = product_col_ann(&g, &h).expect("valid factors");
                let state = GameState::new(Arc::new(gh.clone()), k).expect("palette");
                // the product strategy only looks at how many colours each copy
                // holds, so one fresh colour per Ben reply covers every line
                let playout = match exhaustive_playout(&state, &policy, BenBranching::Canonical, MAX_LINES) {
                    Ok(p) => p,
                    Err(e) => return Observed::new(format!("playout error: {e}"), false),
                };
                if playout.truncated {
                    return Observed::skip(format!("{}; playout truncated", outcome_str(verdict)));
                }
                let ben = optimal_ben(&gh, limits);
                let game = play_game(Arc::new(gh.clone()), k, &policy, &ben);
                let vs_optimal = match &game {
                    Ok(t) if t.outcome == GameOutcome::Ann => "ann",
                    Ok(_) => "ben",
                    Err(_) => "error",
                };
                let ok = verdict == Outcome::AnnWins && playout.ann_always_wins() && vs_optimal == "ann";
                Observed::new(
                    format!(
                        "{}; product-col won {}/{} lines; vs optimal: {vs_optimal}",
                        outcome_str(verdict),
                        playout.ann_lines,
                        playout.lines
                    ),
                    ok,
                )
            },
        ));
    }
    Ok(cases)
}

/// The `(col(H) - 1)`-core of `H`: a subgraph of minimum degree `col(H) - 1`.
fn core_subgraph(h: &Graph) -> Result<Graph, HarnessError> {
    let d = coloring_number(h)? - 1;
    let mut alive: Vec<usize> = h.vertices().collect();
    loop {
        let sub = h.induced_subgraph(&alive);
        match sub.vertices().find(|&v| sub.degree(v) < d) {
            Some(v) => {
                alive.remove(v);
            }
            None => return Ok(sub),
        }
    }
}

fn gap_and_bound(g: &Graph, h: &Graph) -> Result<(i64, i64), HarnessError> {
    let col_g = coloring_number(g)? as i64;
    let col_h = coloring_number(h)? as i64;
    let col_gh = coloring_number(&lexicographic_product(g, h)?)? as i64;
    let core = core_subgraph(h)?;
    let delta = core.min_degree().unwrap_or(0) as i64;
    Ok((col_gh - col_g * col_h, (col_g - 1) * (core.n() as i64 - 1 - delta)))
}

// col(G[H]) − col(G)col(H) is at least (col(G) − 1)(|H'| − 1 − δ(H')) and
// grows with the clique G.
fn col_gap(cfg: &SuiteConfig) -> Result<Vec<Case>, HarnessError> {
    let pairs = pairs_or(
        cfg,
        &[("K2", "C5"), ("K3", "C5"), ("K4", "C5"), ("K2", "star4"), ("K3", "star4"), ("K4", "star4")],
    )?;
    let mut cases = Vec::new();
    // members of each H family, keyed by the clique size of G
    type Member = (usize, String, Graph);
    let mut families: Vec<(Graph, Vec<Member>)> = Vec::new();
    for (name, g, h) in pairs {
        match families.iter_mut().find(|(fh, _)| *fh == h) {
            Some((_, members)) => members.push((g.n(), name.clone(), g.clone())),
            None => families.push((h.clone(), vec![(g.n(), name.clone(), g.clone())])),
        }
        cases.push(Case::new(name, "gap >= bound", move || match gap_and_bound(&g, &h) {
            Ok((gap, bound)) => Observed::new(format!("gap {gap}, bound {bound}"), gap >= bound),
            Err(e) => Observed::new(format!("error: {e}"), false),
        }));
    }
    for (h, mut members) in families {
        if members.len() < 2 {
            continue;
        }
        members.sort_by_key(|m| m.0);
        let names: Vec<String> = members.iter().map(|m| m.1.clone()).collect();
        cases.push(Case::new(
            format!("family {}", names.join(" < ")),
            "gap strictly increasing in |V(G)|",
            move || {
                let gaps: Result<Vec<i64>, _> = members.iter().map(|(_, _, g)| gap_and_bound(g, &h).map(|x| x.0)).collect();
                match gaps {
                    Ok(gaps) => Observed::new(format!("gaps {gaps:?}"), gaps.windows(2).all(|w| w[0] < w[1])),
                    Err(e) => Observed::new(format!("error: {e}"), false),
                }
            },
        ));
    }
    Ok(cases)
}

// For H with χ_i(H) = χ(H) = ℓ: Ann wins G[H] at k iff she wins G[K_ℓ] at k.
fn reduction(cfg: &SuiteConfig) -> Result<Vec<Case>, HarnessError> {
    let default: Vec<(&str, &str)> = ["P3", "P4", "K3", "paw", "C5"]
        .iter()
        .flat_map(|g| ["P2", "P3", "C4"].into_iter().map(move |h| (*g, h)))
        .collect();
    let pairs = pairs_or(cfg, &default)?;
    let limits = cfg.limits;
    let mut cases = Vec::new();
    for (name, g, h) in pairs {
        let gh = lexicographic_product(&g, &h)?;
        if cfg.corpus.is_none() && gh.n() > limits.max_vertices {
            continue;
        }
        let ell = chromatic_number(&h)?;
        let clique = family_generator("K", &[ell])?;
        let gk = lexicographic_product(&g, &clique)?;
        let hi = indicated_chromatic_number(&h, None, limits).map_err(|e| HarnessError::Corpus {
            line: 0,
            reason: format!("{name}: {e}"),
        })?;
        if hi.chi_i != Some(ell) {
            return Err(HarnessError::Corpus { line: 0, reason: format!("{name}: needs χ_i(H) = χ(H)") });
        }
        let lo = chromatic_number(&gk)?;
        let hi_k = coloring_number(&g)? * coloring_number(&h)?;
        for k in lo..=hi_k {
            let (gh, gk) = (gh.clone(), gk.clone());
            cases.push(Case::new(format!("{name} vs K{ell} k={k}"), "equal outcomes", move || {
                if let Some(skip) = too_big(&gh, limits) {
                    return skip;
                }
                let a = ann_wins(&gh, k, limits).map(|v| v.outcome);
                let b = ann_wins(&gk, k, limits).map(|v| v.outcome);
                match (a, b) {
                    (Ok(a), Ok(b)) if a == Outcome::ResourceLimit || b == Outcome::ResourceLimit => {
                        Observed::skip(format!("{} / {}", outcome_str(a), outcome_str(b)))
                    }
                    (Ok(a), Ok(b)) => Observed::new(format!("{} / {}", outcome_str(a), outcome_str(b)), a == b),
                    (a, b) => Observed::new(format!("solver error: {a:?} {b:?}"), false),
                }
            }));
        }
    }
    Ok(cases)
}

fn chi_i_str(c: Option<usize>) -> String {
    c.map_or("unknown".into(), |c| c.to_string())
}

// χ_i of a disjoint union of family members is the larger χ_i.
fn union(cfg: &SuiteConfig) -> Result<Vec<Case>, HarnessError> {
    let pairs: Vec<(String, Graph, Graph)> = match corpus_tuples(cfg, 2) {
        Some(r) => r?.into_iter().map(|(l, gs)| (l, gs[0].clone(), gs[1].clone())).collect(),
        None => {
            let pool: Vec<Graph> = connected_graphs(5)
                .into_iter()
                .filter(|g| g.n() >= 2 && family_membership_f(g).admitted)
                .collect();
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
            let mut out = Vec::new();
            while out.len() < 10 {
                let a = pool.choose(&mut rng).expect("non-empty pool");
                let b = pool.choose(&mut rng).expect("non-empty pool");
                if a == b || a.n() + b.n() > 10 {
                    continue;
                }
                out.push((format!("{} + {}", label(a), label(b)), a.clone(), b.clone()));
            }
            out
        }
    };
    let limits = cfg.limits;
    let mut cases = Vec::new();
    for (name, a, b) in pairs {
        let u = disjoint_union(&a, &b)?;
        cases.push(Case::new(name, "χ_i(G1 ∪ G2) = max", move || {
            if let Some(skip) = too_big(&u, limits) {
                return skip;
            }
            let chi = |g: &Graph| indicated_chromatic_number(g, None, limits).map(|r| r.chi_i);
            match (chi(&a), chi(&b), chi(&u)) {
                (Ok(Some(x)), Ok(Some(y)), Ok(Some(z))) => {
                    Observed::new(format!("max({x}, {y}) vs {z}"), x.max(y) == z)
                }
                (Ok(x), Ok(y), Ok(z)) => Observed::skip(format!(
                    "{} {} {}",
                    chi_i_str(x),
                    chi_i_str(y),
                    chi_i_str(z)
                )),
                (x, y, z) => Observed::new(format!("solver error: {x:?} {y:?} {z:?}"), false),
            }
        }));
    }
    Ok(cases)
}

fn graph_corpus(max_n: usize) -> Vec<(String, Graph)> {
    (1..=max_n).flat_map(all_graphs).map(|g| (label(&g), g)).collect()
}

// Family members are won at every palette from χ to col.
fn f_family(cfg: &SuiteConfig) -> Result<Vec<Case>, HarnessError> {
    let graphs = singles_or(cfg, || graph_corpus(7))?;
    let limits = cfg.limits;
    let mut cases = Vec::new();
    for (name, g) in graphs {
        let fam = family_membership_f(&g);
        if !fam.admitted {
            continue;
        }
        cases.push(Case::new(name, "winning set = [χ, col]", move || {
            if let Some(skip) = too_big(&g, limits) {
                return skip;
            }
            match indicated_chromatic_number(&g, None, limits) {
                Ok(r) if !r.unknown.is_empty() => Observed::skip(format!("unknown at {:?}", r.unknown)),
                Ok(r) => {
                    let full: Vec<usize> = (r.chi..=r.col).collect();
                    Observed::new(format!("winning {} in [{}, {}]", range_str(&r.winning_set), r.chi, r.col), r.winning_set == full)
                }
                Err(e) => Observed::new(format!("solver error: {e}"), false),
            }
        }));
    }
    Ok(cases)
}

// χ_i(𝕂[G](m, …, m)) = 2m for bipartite G.
fn bipartite_expansion(cfg: &SuiteConfig) -> Result<Vec<Case>, HarnessError> {
    let inputs: Vec<(String, Graph, usize)> = match corpus_tuples(cfg, 1) {
        Some(r) => r?.into_iter().map(|(l, gs)| (l, gs[0].clone(), 2)).collect(),
        None => [("P2", 2), ("P3", 2), ("P4", 2), ("C4", 2), ("P2", 3), ("P3", 3)]
            .iter()
            .map(|&(e, m)| {
                let (l, g) = named(e);
                (l, g, m)
            })
            .collect(),
    };
    let limits = cfg.limits;
    let mut cases = Vec::new();
    for (name, g, m) in inputs {
        let big = expansion(&ExpansionSpec::complete(&g, &vec![m; g.n()]))?;
        cases.push(Case::new(format!("K[{name}]({m}x{})", g.n()), format!("χ_i = {}", 2 * m), move || {
            if let Some(skip) = too_big(&big, limits) {
                return skip;
            }
            match indicated_chromatic_number(&big, None, limits) {
                Ok(r) => match r.chi_i {
                    Some(c) => Observed::new(format!("χ_i = {c}"), c == 2 * m),
                    None => Observed::skip(format!("unknown at {:?}", r.unknown)),
                },
                Err(e) => Observed::new(format!("solver error: {e}"), false),
            }
        }));
    }
    Ok(cases)
}

fn random_sizes(rng: &mut ChaCha8Rng, n: usize, max: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(1..=max)).collect()
}

// The complement of an independent expansion is the complete expansion of
// the complement.
fn complement_duality(cfg: &SuiteConfig) -> Result<Vec<Case>, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let bases: Vec<(String, Graph)> = match corpus_tuples(cfg, 1) {
        Some(r) => r?.into_iter().map(|(l, gs)| (l, gs[0].clone())).collect(),
        None => (0..50)
            .map(|_| {
                let n = rng.gen_range(1..=5);
                let g = random_graph(&mut rng, n, 0.5);
                (label(&g), g)
            })
            .collect(),
    };
    let mut cases = Vec::new();
    for (name, g) in bases {
        let sizes = random_sizes(&mut rng, g.n(), 2);
        let lhs = complement(&expansion(&ExpansionSpec::independent(&g, &sizes))?);
        let rhs = expansion(&ExpansionSpec::complete(&complement(&g), &sizes))?;
        cases.push(Case::new(format!("{name} m={sizes:?}"), "isomorphic", move || match is_isomorphic(&lhs, &rhs) {
            Ok(iso) => Observed::new(if iso { "isomorphic" } else { "not isomorphic" }, iso),
            Err(e) => Observed::skip(format!("{e}")),
        }));
    }
    Ok(cases)
}

fn random_tree(rng: &mut ChaCha8Rng, n: usize) -> Graph {
    // Prüfer decoding
    let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
    let mut degree = vec![1usize; n];
    for &s in &seq {
        degree[s] += 1;
    }
    let mut edges = Vec::new();
    for &s in &seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).expect("a leaf exists");
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::new(n, &edges).expect("valid tree")
}

fn random_pattern(rng: &mut ChaCha8Rng) -> (String, Graph) {
    match rng.gen_range(0..3) {
        0 => {
            let n = rng.gen_range(3..=6);
            let t = random_tree(rng, n);
            (format!("tree {}", label(&t)), t)
        }
        1 => {
            let l = rng.gen_range(4..=6);
            (format!("C{l}"), family_generator("C", &[l]).expect("cycle"))
        }
        _ => {
            let t = rng.gen_range(4..=6);
            (format!("co-P{t}"), complement(&family_generator("P", &[t]).expect("path")))
        }
    }
}

// Complete expansions of pattern-free graphs stay pattern-free.
fn closure(cfg: &SuiteConfig) -> Result<Vec<Case>, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let fixed: Option<Vec<(String, Graph)>> = match corpus_tuples(cfg, 1) {
        Some(r) => Some(r?.into_iter().map(|(l, gs)| (l, gs[0].clone())).collect()),
        None => None,
    };
    let trials = fixed.as_ref().map_or(200, Vec::len);
    let mut cases = Vec::new();
    for t in 0..trials {
        let (pname, pattern) = random_pattern(&mut rng);
        let (gname, g) = match &fixed {
            Some(list) => list[t].clone(),
            None => {
                let n = rng.gen_range(3..=6);
                let p = rng.gen_range(0.2..0.9);
                let found = (0..200).map(|_| random_graph(&mut rng, n, p)).find(|g| {
                    crate::recognizers::contains_induced(g, &pattern).map(|e| e.is_none()).unwrap_or(false)
                });
                // cliques contain none of the allowed patterns
                let g = found.unwrap_or_else(|| family_generator("K", &[n]).expect("clique"));
                (label(&g), g)
            }
        };
        let sizes = random_sizes(&mut rng, g.n(), 3);
        cases.push(Case::new(
            format!("#{t:03} {gname} free of {pname} m={sizes:?}"),
            "no induced pattern",
            move || match expansion_closure_check(&g, &pattern, &sizes) {
                Ok(v) if v.closed => Observed::new(format!("closed ({} vertices)", v.expanded_n), true),
                Ok(v) => Observed::new(format!("counterexample {:?}", v.counterexample), false),
                Err(e) => Observed::skip(format!("precondition: {e}")),
            },
        ));
    }
    Ok(cases)
}

// If Ann wins the complete expansion of G by the largest blocks, she wins
// the complete expansion of the independent expansion.
fn lift(cfg: &SuiteConfig) -> Result<Vec<Case>, HarnessError> {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let pool: Vec<(String, Graph)> = match corpus_tuples(cfg, 1) {
        Some(r) => r?.into_iter().map(|(l, gs)| (l, gs[0].clone())).collect(),
        None => ["P2", "P3", "K3", "K1+K2"].iter().map(|e| named(e)).collect(),
    };
    let limits = cfg.limits;
    let mut cases = Vec::new();
    let mut made = 0;
    while made < 24 {
        let (name, g) = pool.choose(&mut rng).expect("non-empty pool").clone();
        let inner = random_sizes(&mut rng, g.n(), 2);
        let ig = expansion(&ExpansionSpec::independent(&g, &inner))?;
        let outer = random_sizes(&mut rng, ig.n(), 2);
        if outer.iter().sum::<usize>() > limits.max_vertices {
            continue;
        }
        made += 1;
        let big = expansion(&ExpansionSpec::complete(&ig, &outer))?;
        // blocks of the independent expansion come in base order
        let mut widest = vec![0usize; g.n()];
        let mut pos = 0;
        for (i, &a) in inner.iter().enumerate() {
            for &b in &outer[pos..pos + a] {
                widest[i] = widest[i].max(b);
            }
            pos += a;
        }
        let small = expansion(&ExpansionSpec::complete(&g, &widest))?;
        cases.push(Case::new(
            format!("{name} I{inner:?} K{outer:?}"),
            "Ann wins the expansion whenever she wins the widest form",
            move || {
                let lo = chromatic_number(&big).expect("desk scale");
                let hi = coloring_number(&big).expect("non-empty");
                let mut lifted = 0;
                for k in lo..=hi {
                    let w = ann_wins(&small, k, limits).map(|v| v.outcome);
                    if w != Ok(Outcome::AnnWins) {
                        if w == Ok(Outcome::ResourceLimit) {
                            return Observed::skip(format!("resource-limit at k={k}"));
                        }
                        continue;
                    }
                    match ann_wins(&big, k, limits).map(|v| v.outcome) {
                        Ok(Outcome::AnnWins) => lifted += 1,
                        Ok(Outcome::ResourceLimit) => return Observed::skip(format!("resource-limit at k={k}")),
                        other => return Observed::new(format!("k={k}: {other:?}"), false),
                    }
                }
                Observed::new(format!("k in [{lo}, {hi}]: lifted {lifted}"), true)
            },
        ));
    }
    Ok(cases)
}

// Winning sets are reported as found; a gap is flagged, never failed.
fn monotonicity_audit(cfg: &SuiteConfig) -> Result<Vec<Case>, HarnessError> {
    let graphs = singles_or(cfg, || graph_corpus(6))?;
    let limits = cfg.limits;
    Ok(graphs
        .into_iter()
        .map(|(name, g)| {
            Case::new(name, "winning set is an interval", move || {
                if let Some(skip) = too_big(&g, limits) {
                    return skip;
                }
                match indicated_chromatic_number(&g, None, limits) {
                    Ok(r) if !r.unknown.is_empty() => Observed::skip(format!("unknown at {:?}", r.unknown)),
                    Ok(r) => {
                        let mut o = Observed::new(
                            format!("winning {} in [{}, {}]", range_str(&r.winning_set), r.chi, r.col),
                            true,
                        );
                        if r.non_monotone {
                            o.flag = Some("non-monotone winning set".into());
                        }
                        o
                    }
                    Err(e) => Observed::new(format!("solver error: {e}"), false),
                }
            })
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{parse_corpus, run_suite};

    fn cfg_with(corpus: &str) -> SuiteConfig {
        SuiteConfig { corpus: Some(parse_corpus(corpus).unwrap()), ..SuiteConfig::default() }
    }

    #[test]
    fn spec_examples() {
        let r = run_suite("bipartite-expansion", &cfg_with("P2\nP3\nP4\nC4\n")).unwrap();
        assert_eq!(r.summary.pass, 4, "{r:?}");
        assert!(r.cases.iter().any(|c| c.case.starts_with("K[C4]") && c.observed == "χ_i = 4"));
        let r = run_suite("reduction", &cfg_with("P3; P2\nK3; P2\npaw; P2\n")).unwrap();
        assert!(r.passed() && r.summary.pass > 0, "{r:?}");
        let r = run_suite("col-bound", &cfg_with("P2; P2\n")).unwrap();
        assert_eq!(r.summary.pass, 1, "{r:?}");
    }

    #[test]
    fn col_gap_default() {
        let r = run_suite("col-gap", &SuiteConfig::default()).unwrap();
        assert!(r.passed(), "{r:?}");
        assert!(r.cases.iter().any(|c| c.observed == "gaps [2, 4, 6]"));
    }

    #[test]
    fn seeded_suites_are_stable() {
        let cfg = SuiteConfig::default();
        let a = run_suite("complement-duality", &cfg).unwrap().without_timings();
        let b = run_suite("complement-duality", &cfg).unwrap().without_timings();
        assert_eq!(a.to_csv(), b.to_csv());
        assert_eq!(a.cases.len(), 50);
        assert!(a.passed());
    }

    #[test]
    fn prufer_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 3..=6 {
            let t = random_tree(&mut rng, n);
            assert!(t.is_connected() && t.edge_count() == n - 1);
        }
    }

    #[test]
    fn wrong_arity_is_a_corpus_error() {
        assert!(matches!(run_suite("col-bound", &cfg_with("P3\n")), Err(HarnessError::Corpus { .. })));
    }
}
