//! Exact minimax over the indicated coloring game.
//!
//! A position with Ann to move is winning iff every vertex is coloured, or no
//! vertex is blocked and some uncoloured vertex has all of Ben's proper
//! replies leading to winning positions. Positions are memoised by their
//! colouring up to renaming of colours, and Ben only ever tries one unused
//! colour since unused colours are interchangeable.

use std::sync::Arc;
use std::time::Instant;

use rustc_hash::FxHashMap;
use thiserror::Error;

use super::{GameError, GameState, Limits, Outcome, SearchStats, Verdict, MAX_PALETTE};
use crate::graph::{bit, bits, Graph, GraphError, VertexId};

/// Hard ceiling on solvable graph size (5-bit canonical colours in a `u128` key).
pub const SOLVER_MAX_VERTICES: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("graph has {n} vertices; solver limit is {max}")]
    TooLarge { n: usize, max: usize },
    #[error(transparent)]
    Game(#[from] GameError),
    #[error("state was built on a different graph or palette")]
    Mismatch,
    #[error("search limit reached")]
    ResourceLimit,
    #[error(transparent)]
    Graph(#[from] GraphError),
}

struct Board {
    k: usize,
    adj: Vec<u64>,
    colors: Vec<u8>,
    /// colours on neighbours, bit `c - 1`
    seen: Vec<u64>,
    uncolored: u64,
    count: Vec<u8>,
    used: u64,
}

impl Board {
    fn new(g: &Graph, k: usize) -> Self {
        Board {
            k,
            adj: g.vertices().map(|v| g.neighbor_mask(v)).collect(),
            colors: vec![0; g.n()],
            seen: vec![0; g.n()],
            uncolored: g.vertex_mask(),
            count: vec![0; k + 1],
            used: 0,
        }
    }

    fn load(&mut self, s: &GameState) {
        for (v, c) in s.colors().iter().enumerate() {
            if let Some(c) = *c {
                self.color(v, c as u8);
            }
        }
    }

    /// Colours `v`; returns true if some uncoloured neighbour became blocked.
    fn color(&mut self, v: VertexId, c: u8) -> bool {
        self.colors[v] = c;
        self.uncolored &= !bit(v);
        self.count[c as usize] += 1;
        self.used |= 1 << (c - 1);
        let cb = 1u64 << (c - 1);
        let mut blocked = false;
        for u in bits(self.adj[v]) {
            self.seen[u] |= cb;
            if self.uncolored & bit(u) != 0 && self.seen[u].count_ones() as usize == self.k {
                blocked = true;
            }
        }
        blocked
    }

    fn uncolor(&mut self, v: VertexId) {
        let c = self.colors[v];
        self.colors[v] = 0;
        self.uncolored |= bit(v);
        self.count[c as usize] -= 1;
        if self.count[c as usize] == 0 {
            self.used &= !(1 << (c - 1));
        }
        for u in bits(self.adj[v]) {
            self.seen[u] = bits(self.adj[u])
                .filter(|&w| self.colors[w] != 0)
                .fold(0, |m, w| m | (1u64 << (self.colors[w] - 1)));
        }
    }

    fn any_blocked(&self) -> bool {
        bits(self.uncolored).any(|v| self.seen[v].count_ones() as usize == self.k)
    }

    /// A vertex that can never become blocked: even if every uncoloured
    /// neighbour gets a fresh colour it still has one left.
    fn is_safe(&self, v: VertexId) -> bool {
        (self.seen[v].count_ones() + (self.adj[v] & self.uncolored).count_ones()) < self.k as u32
    }

    /// Colouring with colours renamed by first appearance, 5 bits per vertex.
    fn key(&self) -> u128 {
        let mut rename = [0u8; MAX_PALETTE + 1];
        let mut next = 0u8;
        let mut key = 0u128;
        for (v, &c) in self.colors.iter().enumerate() {
            if c != 0 {
                let r = &mut rename[c as usize];
                if *r == 0 {
                    next += 1;
                    *r = next;
                }
                key |= (*r as u128) << (5 * v);
            }
        }
        key
    }

    /// Ann's candidates: unsafe vertices first, most constrained first.
    fn ann_order(&self) -> Vec<VertexId> {
        let mut vs: Vec<VertexId> = bits(self.uncolored).collect();
        vs.sort_by_key(|&v| {
            (
                self.is_safe(v),
                std::cmp::Reverse(self.seen[v].count_ones()),
                std::cmp::Reverse((self.adj[v] & self.uncolored).count_ones()),
                v,
            )
        });
        vs
    }

    /// Ben's candidates at `v`: proper used colours ascending, then the
    /// lowest unused colour if one exists.
    fn ben_candidates(&self, v: VertexId) -> Vec<u8> {
        let mut out: Vec<u8> = bits(self.used & !self.seen[v]).map(|b| b as u8 + 1).collect();
        if (self.used.count_ones() as usize) < self.k {
            let fresh = (!self.used).trailing_zeros() as u8 + 1;
            let pos = out.partition_point(|&c| c < fresh);
            out.insert(pos, fresh);
        }
        out
    }
}

struct Abort;

/// Reusable exact solver for one graph and palette size. The memo persists
/// across queries, so repeated policy lookups stay cheap.
pub struct GameSolver {
    graph: Arc<Graph>,
    k: usize,
    limits: Limits,
    memo: FxHashMap<u128, bool>,
    total: SearchStats,
}

struct Run<'a> {
    board: Board,
    memo: &'a mut FxHashMap<u128, bool>,
    limits: Limits,
    start: Instant,
    stats: SearchStats,
}

impl Run<'_> {
    fn tick(&mut self) -> Result<(), Abort> {
        self.stats.states += 1;
        if self.stats.states > self.limits.max_states {
            return Err(Abort);
        }
        if self.stats.states.is_multiple_of(1024)
            && self.start.elapsed().as_millis() as u64 > self.limits.max_millis
        {
            return Err(Abort);
        }
        Ok(())
    }

    /// Value of the current position with Ann to move (no vertex blocked).
    fn ann_to_move(&mut self) -> Result<bool, Abort> {
        if self.board.uncolored == 0 {
            return Ok(true);
        }
        if bits(self.board.uncolored).all(|v| self.board.is_safe(v)) {
            return Ok(true);
        }
        let key = self.board.key();
        if let Some(&w) = self.memo.get(&key) {
            self.stats.memo_hits += 1;
            return Ok(w);
        }
        self.tick()?;
        let mut win = false;
        for v in self.board.ann_order() {
            if self.survives_presentation(v)? {
                win = true;
                break;
            }
        }
        self.memo.insert(key, win);
        Ok(win)
    }

    /// True iff every Ben reply at `v` leaves Ann winning.
    fn survives_presentation(&mut self, v: VertexId) -> Result<bool, Abort> {
        for c in self.board.ben_candidates(v) {
            if !self.reply_value(v, c)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Value for Ann after Ben colours `v` with `c`.
    fn reply_value(&mut self, v: VertexId, c: u8) -> Result<bool, Abort> {
        let blocked = self.board.color(v, c);
        let r = if blocked { Ok(false) } else { self.ann_to_move() };
        self.board.uncolor(v);
        r
    }
}

impl GameSolver {
    pub fn new(graph: Arc<Graph>, k: usize, limits: Limits) -> Result<Self, SolveError> {
        let max = limits.max_vertices.min(SOLVER_MAX_VERTICES);
        if graph.n() > max {
            return Err(SolveError::TooLarge { n: graph.n(), max });
        }
        if k == 0 || k > MAX_PALETTE {
            return Err(GameError::InvalidPalette(k).into());
        }
        Ok(GameSolver { graph, k, limits, memo: FxHashMap::default(), total: SearchStats::default() })
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Cumulative statistics over every query so far.
    pub fn stats(&self) -> SearchStats {
        self.total
    }

    pub fn memo_len(&self) -> usize {
        self.memo.len()
    }

    fn check(&self, s: &GameState) -> Result<(), SolveError> {
        if s.k() != self.k || s.graph() != &*self.graph {
            return Err(SolveError::Mismatch);
        }
        Ok(())
    }

    fn run<T>(&mut self, s: &GameState, f: impl FnOnce(&mut Run) -> Result<T, Abort>) -> (Option<T>, SearchStats) {
        let mut board = Board::new(&self.graph, self.k);
        board.load(s);
        let mut run = Run {
            board,
            memo: &mut self.memo,
            limits: self.limits,
            start: Instant::now(),
            stats: SearchStats::default(),
        };
        let r = f(&mut run).ok();
        let mut stats = run.stats;
        stats.millis = run.start.elapsed().as_millis() as u64;
        self.total.states += stats.states;
        self.total.memo_hits += stats.memo_hits;
        self.total.millis += stats.millis;
        (r, stats)
    }

    /// Solves from the empty colouring.
    pub fn solve(&mut self) -> Verdict {
        let empty = GameState::new(self.graph.clone(), self.k).expect("validated palette");
        self.solve_state(&empty).expect("own state")
    }

    /// Exact value of `s` with Ann to move.
    pub fn solve_state(&mut self, s: &GameState) -> Result<Verdict, SolveError> {
        self.check(s)?;
        let (r, stats) = self.run(s, |run| {
            if run.board.any_blocked() {
                return Ok(false);
            }
            run.ann_to_move()
        });
        let outcome = match r {
            Some(true) => Outcome::AnnWins,
            Some(false) => Outcome::BenWins,
            None => Outcome::ResourceLimit,
        };
        Ok(Verdict { outcome, stats })
    }

    /// First vertex, in search order, whose presentation keeps Ann winning.
    /// `None` when the position is lost (or already finished).
    pub fn winning_presentation(&mut self, s: &GameState) -> Result<Option<VertexId>, SolveError> {
        self.check(s)?;
        let (r, _) = self.run(s, |run| {
            if run.board.any_blocked() || run.board.uncolored == 0 {
                return Ok(None);
            }
            for v in run.board.ann_order() {
                if run.survives_presentation(v)? {
                    return Ok(Some(v));
                }
            }
            Ok(None)
        });
        r.ok_or(SolveError::ResourceLimit)
    }

    /// Ben's reply at presented vertex `v`: the lowest candidate colour that
    /// leaves Ann losing, else the lowest proper colour. `None` if `v` has no
    /// proper colour.
    pub fn best_reply(&mut self, s: &GameState, v: VertexId) -> Result<Option<usize>, SolveError> {
        self.check(s)?;
        if v >= self.graph.n() {
            return Err(GameError::VertexOutOfRange(v).into());
        }
        if s.color(v).is_some() {
            return Err(GameError::AlreadyColored(v).into());
        }
        let (r, _) = self.run(s, |run| {
            let cands = run.board.ben_candidates(v);
            for &c in &cands {
                if !run.reply_value(v, c)? {
                    return Ok(Some(c as usize));
                }
            }
            Ok(cands.first().map(|&c| c as usize))
        });
        r.ok_or(SolveError::ResourceLimit)
    }
}

/// Does Ann win `G` with palette `k`?
pub fn ann_wins(g: &Graph, k: usize, limits: Limits) -> Result<Verdict, SolveError> {
    let mut solver = GameSolver::new(Arc::new(g.clone()), k, limits)?;
    Ok(solver.solve())
}

/// Value of an arbitrary proper position with Ann to move.
pub fn ann_wins_from(s: &GameState, limits: Limits) -> Result<Verdict, SolveError> {
    let mut solver = GameSolver::new(s.graph_arc().clone(), s.k(), limits)?;
    solver.solve_state(s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{family_generator, lexicographic_product};

    fn fam(t: &str, p: &[usize]) -> Graph {
        family_generator(t, p).unwrap()
    }

    fn wins(g: &Graph, k: usize) -> Outcome {
        ann_wins(g, k, Limits::default()).unwrap().outcome
    }

    #[test]
    fn solver_examples() {
        assert_eq!(wins(&fam("K", &[3]), 3), Outcome::AnnWins);
        assert_eq!(wins(&fam("C", &[5]), 2), Outcome::BenWins);
        assert_eq!(wins(&fam("C", &[5]), 3), Outcome::AnnWins);
        let p3k2 = lexicographic_product(&fam("P", &[3]), &fam("K", &[2])).unwrap();
        assert_eq!(wins(&p3k2, 3), Outcome::BenWins);
        assert_eq!(wins(&p3k2, 4), Outcome::AnnWins);
    }

    #[test]
    fn resource_limit_reported() {
        let g = lexicographic_product(&fam("C", &[5]), &fam("K", &[2])).unwrap();
        let tight = Limits { max_states: 3, ..Limits::default() };
        let v = ann_wins(&g, 5, tight).unwrap();
        assert_eq!(v.outcome, Outcome::ResourceLimit);
        assert!(v.stats.states > tight.max_states);
    }

    #[test]
    fn size_and_palette_errors() {
        let g = Graph::empty(13).unwrap();
        assert!(matches!(ann_wins(&g, 2, Limits::default()), Err(SolveError::TooLarge { .. })));
        assert!(matches!(ann_wins(&fam("P", &[2]), 0, Limits::default()), Err(SolveError::Game(_))));
    }

    #[test]
    fn blocked_state_is_lost() {
        let g = Arc::new(fam("P", &[3]));
        let s = GameState::new(g, 2).unwrap().apply(0, 1).unwrap().apply(2, 2).unwrap();
        assert_eq!(ann_wins_from(&s, Limits::default()).unwrap().outcome, Outcome::BenWins);
    }

    #[test]
    fn optimal_reply_blocks_centre() {
        let g = Arc::new(fam("P", &[3]));
        let mut solver = GameSolver::new(g.clone(), 2, Limits::default()).unwrap();
        let s = GameState::new(g, 2).unwrap();
        assert_eq!(solver.best_reply(&s, 0).unwrap(), Some(1));
        let s = s.apply(0, 1).unwrap();
        assert_eq!(solver.best_reply(&s, 2).unwrap(), Some(2));
        // presenting the centre first wins for Ann
        let empty = GameState::new(solver.graph().clone(), 2).unwrap();
        assert_eq!(solver.winning_presentation(&empty).unwrap(), Some(1));
    }
}
