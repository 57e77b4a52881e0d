//! Randomized invariants over small graphs.

mod common;

use std::sync::Arc;

use indicolor_core::graph::corpus::all_graphs;
use indicolor_core::graph::{
    chromatic_number, clique_number, coloring_number, complement, decode_graph6, degree_stats, encode_graph6,
    expansion, family_generator, is_isomorphic, lexicographic_product, ExpansionSpec, Graph,
};
use indicolor_core::recognizers::{
    bipartition, classify, contains_induced, independent_c5_expansion_sizes, is_induced_embedding, Pattern,
};
use indicolor_core::solver::{
    ann_wins, ann_wins_from, canonical_key, exhaustive_playout, indicated_chromatic_number, play_game, AnnPolicy,
    BenBranching, BenPolicy, GameOutcome, GameState, Limits, Outcome, PlayError,
};
use indicolor_core::strategies::{degeneracy_ann, heuristic_ben, optimal_ben, reduction_ann_solved};
use indicolor_core::solver::SolverAnn;
use proptest::prelude::*;

/// Any graph on `lo..=hi` vertices.
fn graph(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    (lo..=hi).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::new(n, &edges).unwrap()
        })
    })
}

fn connected(lo: usize, hi: usize) -> impl Strategy<Value = Graph> {
    graph(lo, hi).prop_filter("connected", |g| g.is_connected())
}

fn min_degree(g: &Graph) -> usize {
    g.vertices().map(|v| g.degree(v)).min().unwrap_or(0)
}

/// Random legal play from the empty board, driven by `choices`.
fn reachable_state(g: &Graph, k: usize, choices: &[(usize, usize)]) -> GameState {
    let mut s = GameState::new(Arc::new(g.clone()), k).unwrap();
    for &(a, b) in choices {
        if !s.blocked_vertices().is_empty() || s.is_complete() {
            break;
        }
        let open = s.uncolored();
        let v = open[a % open.len()];
        let avail = s.available_colors(v);
        s = s.apply(v, avail[b % avail.len()]).unwrap();
    }
    s
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn constructions_are_valid(g in graph(1, 5), h in graph(1, 3), m in proptest::collection::vec(1usize..=2, 5)) {
        prop_assert!(g.validate().is_ok());
        prop_assert!(lexicographic_product(&g, &h).unwrap().validate().is_ok());
        let m = &m[..g.n()];
        prop_assert!(expansion(&ExpansionSpec::complete(&g, m)).unwrap().validate().is_ok());
        prop_assert!(expansion(&ExpansionSpec::independent(&g, m)).unwrap().validate().is_ok());
        prop_assert!(complement(&g).validate().is_ok());
    }

    #[test]
    fn product_min_degree(g in graph(1, 4), h in graph(1, 3)) {
        let p = lexicographic_product(&g, &h).unwrap();
        prop_assert_eq!(min_degree(&p), min_degree(&g) * h.n() + min_degree(&h));
        prop_assert_eq!(degree_stats(&p).unwrap().0, min_degree(&p));
    }

    #[test]
    fn parameter_chain(g in graph(1, 8)) {
        let (_, max_deg) = degree_stats(&g).unwrap();
        let (w, x, c) = (clique_number(&g).unwrap(), chromatic_number(&g).unwrap(), coloring_number(&g).unwrap());
        prop_assert!(w <= x && x <= c && c <= max_deg + 1);
    }

    #[test]
    fn parameters_match_brute_force(g in graph(1, 6)) {
        prop_assert_eq!(clique_number(&g).unwrap(), common::brute_clique(&g));
        prop_assert_eq!(chromatic_number(&g).unwrap(), common::brute_chromatic(&g));
        prop_assert_eq!(coloring_number(&g).unwrap(), common::brute_coloring_number(&g));
    }

    #[test]
    fn product_chromatic_depends_on_chi_of_inner(g in graph(1, 4), h in graph(1, 3)) {
        let l = chromatic_number(&h).unwrap();
        let kl = family_generator("K", &[l]).unwrap();
        let lhs = chromatic_number(&lexicographic_product(&g, &h).unwrap()).unwrap();
        let rhs = chromatic_number(&lexicographic_product(&g, &kl).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn complement_of_independent_expansion(g in graph(1, 5), m in proptest::collection::vec(1usize..=2, 5)) {
        let m = &m[..g.n()];
        let lhs = complement(&expansion(&ExpansionSpec::independent(&g, m)).unwrap());
        let rhs = expansion(&ExpansionSpec::complete(&complement(&g), m)).unwrap();
        prop_assert!(is_isomorphic(&lhs, &rhs).unwrap());
    }

    #[test]
    fn induced_search_matches_brute_force(g in graph(1, 7), p in graph(1, 4)) {
        let found = contains_induced(&g, &p).unwrap();
        prop_assert_eq!(found.is_some(), common::brute_contains_induced(&g, &p));
        if let Some(emb) = found {
            prop_assert!(is_induced_embedding(&g, &p, &emb));
        }
    }

    #[test]
    fn class_certificates_recheck(g in graph(1, 8)) {
        prop_assert!(classify(&g).verify(&g));
    }

    #[test]
    fn paw_free_structure(g in connected(1, 7)) {
        let r = classify(&g);
        if r.free_of(Pattern::Paw) {
            prop_assert!(r.holds("triangle-free") || r.holds("complete-multipartite"));
        }
    }

    #[test]
    fn p5_triangle_free_structure(g in graph(1, 8)) {
        let r = classify(&g);
        if r.free_of(Pattern::P5) && r.free_of(Pattern::K3) {
            for comp in g.components() {
                let c = g.induced_subgraph(&comp);
                prop_assert!(bipartition(&c).is_ok() || independent_c5_expansion_sizes(&c).is_some());
            }
        }
    }

    #[test]
    fn independent_expansion_keeps_bipartite(g in graph(1, 6), m in proptest::collection::vec(1usize..=3, 6)) {
        if bipartition(&g).is_ok() {
            let e = expansion(&ExpansionSpec::independent(&g, &m[..g.n()])).unwrap();
            prop_assert!(bipartition(&e).is_ok());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn solver_matches_oracle(g in graph(1, 6), extra in 0usize..=1) {
        let k = coloring_number(&g).unwrap().saturating_sub(1).max(1) + extra;
        let fast = ann_wins(&g, k, Limits::default()).unwrap().outcome;
        prop_assert_eq!(fast == Outcome::AnnWins, common::brute_ann_wins(&g, k));
    }

    #[test]
    fn colour_renaming_is_invisible(
        g in graph(2, 6),
        extra in 0usize..=2,
        choices in proptest::collection::vec((0usize..8, 0usize..8), 0..4),
        perm_seed in any::<u64>(),
    ) {
        let k = chromatic_number(&g).unwrap() + extra;
        let s = reachable_state(&g, k, &choices);
        // a random permutation of 1..=k
        let mut perm: Vec<usize> = (1..=k).collect();
        let mut x = perm_seed;
        for i in (1..perm.len()).rev() {
            x = x.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (x >> 33) as usize % (i + 1));
        }
        let moves: Vec<_> = s.history().iter().map(|m| (m.vertex, perm[m.color - 1])).collect();
        let mut t = GameState::new(Arc::new(g.clone()), k).unwrap();
        for (v, c) in moves {
            t = t.apply(v, c).unwrap();
        }
        prop_assert_eq!(canonical_key(&s), canonical_key(&t));
        if s.blocked_vertices().is_empty() {
            let a = ann_wins_from(&s, Limits::default()).unwrap().outcome;
            let b = ann_wins_from(&t, Limits::default()).unwrap().outcome;
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn indicated_number_is_bracketed_and_deterministic(g in graph(1, 6)) {
        let a = indicated_chromatic_number(&g, None, Limits::default()).unwrap();
        let b = indicated_chromatic_number(&g, None, Limits::default()).unwrap();
        let chi_i = a.chi_i.expect("solved");
        prop_assert!(a.chi <= chi_i && chi_i <= a.col);
        prop_assert_eq!(a.winning_set.last().copied(), Some(a.col));
        prop_assert_eq!(&a.winning_set, &b.winning_set);
        prop_assert_eq!(a.chi_i, b.chi_i);
    }

    #[test]
    fn transcripts_replay(g in graph(1, 7), extra in 0usize..=2, seed in any::<u64>()) {
        let k = chromatic_number(&g).unwrap().max(1) + extra;
        let arc = Arc::new(g.clone());
        let anns: Vec<Box<dyn AnnPolicy>> =
            vec![Box::new(degeneracy_ann(&g).unwrap()), Box::new(SolverAnn::new(arc.clone(), Limits::default()))];
        let bens: Vec<Box<dyn BenPolicy>> =
            vec![Box::new(optimal_ben(&g, Limits::default())), Box::new(heuristic_ben(seed).with_noise(0.3))];
        for ann in &anns {
            for ben in &bens {
                let t = match play_game(arc.clone(), k, ann.as_ref(), ben.as_ref()) {
                    Ok(t) => t,
                    Err(e @ PlayError::IllegalMove { .. }) => return Err(TestCaseError::fail(e.to_string())),
                    Err(e) => return Err(TestCaseError::fail(format!("{}/{}: {e}", ann.name(), ben.name()))),
                };
                prop_assert!(t.verify(arc.clone()).unwrap());
                if t.outcome == GameOutcome::Ben {
                    prop_assert!(t.blocked.is_some());
                }
            }
        }
    }

    #[test]
    fn degeneracy_strategy_wins_at_col(g in graph(1, 7)) {
        let k = coloring_number(&g).unwrap();
        let s = GameState::new(Arc::new(g.clone()), k).unwrap();
        let ann = degeneracy_ann(&g).unwrap();
        prop_assert!(exhaustive_playout(&s, &ann, BenBranching::All, 1_000_000).unwrap().ann_always_wins());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn reduction_follows_the_clique_product(g in connected(1, 4), h in connected(2, 3), extra in 0usize..=3) {
        // connected H on 2 or 3 vertices with chi 2: P2 or P3
        prop_assume!(chromatic_number(&h).unwrap() == 2);
        let gk = lexicographic_product(&g, &family_generator("K", &[2]).unwrap()).unwrap();
        let gh = lexicographic_product(&g, &h).unwrap();
        let lo = chromatic_number(&gk).unwrap();
        let hi = coloring_number(&g).unwrap() * coloring_number(&h).unwrap();
        let k = (lo + extra).min(hi);
        let target = ann_wins(&gk, k, Limits::default()).unwrap().outcome;
        let ann = reduction_ann_solved(&g, &h, Limits::default()).unwrap();
        let ben = optimal_ben(&gh, Limits::default());
        let t = play_game(Arc::new(gh.clone()), k, &ann, &ben);
        match target {
            Outcome::AnnWins => prop_assert_eq!(t.unwrap().outcome, GameOutcome::Ann),
            Outcome::BenWins => {
                prop_assert_eq!(ann_wins(&gh, k, Limits::default()).unwrap().outcome, Outcome::BenWins);
                // the strategy may stop with a precondition error once the
                // outer game is lost; it never claims a win
                if let Ok(t) = t {
                    prop_assert_eq!(t.outcome, GameOutcome::Ben);
                }
            }
            Outcome::ResourceLimit => unreachable!(),
        }
    }
}

#[test]
fn graph6_round_trip_exhaustive() {
    for n in 0..=5 {
        for g in all_graphs(n) {
            let text = encode_graph6(&g).unwrap();
            assert_eq!(decode_graph6(&text).unwrap(), g, "{text}");
        }
    }
}
