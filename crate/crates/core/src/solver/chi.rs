use std::sync::Arc;

use serde::Serialize;

use super::{GameSolver, Limits, Outcome, SearchStats, SolveError};
use crate::graph::{chromatic_number, coloring_number, Graph};

/// Solver answer for one palette size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct KResult {
    pub k: usize,
    pub outcome: Outcome,
    pub stats: SearchStats,
}

/// Outcome of the game for every `k` in `chi..=k_max`.
///
/// Palettes below the chromatic number are lost for Ann without search.
/// Winning sets are reported as found; nothing assumes that winning at `k`
/// implies winning at `k + 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChiReport {
    pub chi: usize,
    pub col: usize,
    pub k_max: usize,
    pub per_k: Vec<KResult>,
    /// Smallest winning `k`, when every smaller `k` is known to lose.
    pub chi_i: Option<usize>,
    pub winning_set: Vec<usize>,
    pub unknown: Vec<usize>,
    /// Some `k` is lost although a smaller `k` was won.
    pub non_monotone: bool,
}

impl ChiReport {
    pub fn outcome(&self, k: usize) -> Option<Outcome> {
        if k < self.chi {
            return Some(Outcome::BenWins);
        }
        self.per_k.iter().find(|r| r.k == k).map(|r| r.outcome)
    }
}

/// Solves the game for each palette from the chromatic number up to `k_max`
/// (default: the colouring number, where Ann always wins).
pub fn indicated_chromatic_number(
    g: &Graph,
    k_max: Option<usize>,
    limits: Limits,
) -> Result<ChiReport, SolveError> {
    let col = coloring_number(g)?;
    let chi = chromatic_number(g)?;
    let k_max = k_max.unwrap_or(col);
    let graph = Arc::new(g.clone());
    let mut per_k = Vec::new();
    for k in chi..=k_max {
        let mut solver = GameSolver::new(graph.clone(), k, limits)?;
        let v = solver.solve();
        per_k.push(KResult { k, outcome: v.outcome, stats: v.stats });
    }
    let winning_set: Vec<usize> =
        per_k.iter().filter(|r| r.outcome == Outcome::AnnWins).map(|r| r.k).collect();
    let unknown: Vec<usize> =
        per_k.iter().filter(|r| r.outcome == Outcome::ResourceLimit).map(|r| r.k).collect();
    let chi_i = per_k
        .iter()
        .find(|r| r.outcome != Outcome::BenWins)
        .filter(|r| r.outcome == Outcome::AnnWins)
        .map(|r| r.k);
    let non_monotone = winning_set
        .first()
        .is_some_and(|&w| per_k.iter().any(|r| r.k > w && r.outcome == Outcome::BenWins));
    Ok(ChiReport { chi, col, k_max, per_k, chi_i, winning_set, unknown, non_monotone })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{family_generator, parse_graph_expr};

    #[test]
    fn small_families() {
        let fam = |t: &str, p: &[usize]| family_generator(t, p).unwrap();
        let r = indicated_chromatic_number(&fam("C", &[5]), None, Limits::default()).unwrap();
        assert_eq!((r.chi, r.col, r.chi_i), (3, 3, Some(3)));
        let r = indicated_chromatic_number(&fam("P", &[4]), None, Limits::default()).unwrap();
        assert_eq!(r.chi_i, Some(2));
        let r = indicated_chromatic_number(&fam("K", &[4]), None, Limits::default()).unwrap();
        assert_eq!(r.chi_i, Some(4));
    }

    #[test]
    fn p3_blowup_with_explicit_range() {
        let g = parse_graph_expr("P3[K2]").unwrap();
        let r = indicated_chromatic_number(&g, Some(6), Limits::default()).unwrap();
        assert_eq!(r.col, 4);
        assert_eq!(r.chi_i, Some(4));
        assert_eq!(r.winning_set, vec![4, 5, 6]);
        assert!(!r.non_monotone);
        assert_eq!(r.outcome(2), Some(Outcome::BenWins));
    }

    #[test]
    fn unknowns_block_the_answer() {
        let g = parse_graph_expr("P3[K2]").unwrap();
        let r = indicated_chromatic_number(&g, None, Limits { max_states: 1, ..Limits::default() }).unwrap();
        assert_eq!(r.chi_i, None);
        assert_eq!(r.unknown, vec![4]);
    }
}
