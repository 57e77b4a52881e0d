//! The indicated coloring game: states, exact solving, policies and playback.

mod chi;
mod play;
mod policy;
mod search;

use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexId};

pub use chi::{indicated_chromatic_number, ChiReport, KResult};
pub use play::{
    exhaustive_playout, play_from, play_game, AnnPolicy, BenBranching, BenPolicy, GameOutcome,
    PlayError, PlayoutReport, PolicyError, Side, StrategyPolicy, Transcript,
};
pub use policy::{extract_policy, SolverAnn, SolverCache};
pub use search::{ann_wins, ann_wins_from, GameSolver, SolveError, SOLVER_MAX_VERTICES};

/// Palette colours are `1..=k`; `k` is capped so a colour set fits a `u64`.
pub const MAX_PALETTE: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("palette size must be between 1 and {MAX_PALETTE}, got {0}")]
    InvalidPalette(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("vertex {0} is already coloured")]
    AlreadyColored(usize),
    #[error("colour {color} outside palette 1..={k}")]
    ColorOutOfRange { color: usize, k: usize },
    #[error("colour {color} at vertex {vertex} clashes with a neighbour")]
    Improper { vertex: usize, color: usize },
}

/// One round: Ann presented `vertex`, Ben gave it `color`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Move {
    #[serde(rename = "v")]
    pub vertex: VertexId,
    #[serde(rename = "c")]
    pub color: usize,
}

/// Partial proper colouring under a fixed palette, plus the moves that built
/// it. Snapshots are immutable; [`GameState::apply`] returns a new one.
#[derive(Debug, Clone)]
pub struct GameState {
    graph: Arc<Graph>,
    k: usize,
    colors: Vec<Option<usize>>,
    history: Vec<Move>,
}

impl GameState {
    pub fn new(graph: Arc<Graph>, k: usize) -> Result<Self, GameError> {
        if k == 0 || k > MAX_PALETTE {
            return Err(GameError::InvalidPalette(k));
        }
        let n = graph.n();
        Ok(GameState { graph, k, colors: vec![None; n], history: Vec::new() })
    }

    /// Replays `moves` from the empty colouring, checking each one.
    pub fn from_moves(graph: Arc<Graph>, k: usize, moves: &[Move]) -> Result<Self, GameError> {
        let mut s = GameState::new(graph, k)?;
        for m in moves {
            s.push(m.vertex, m.color)?;
        }
        Ok(s)
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn graph_arc(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn colors(&self) -> &[Option<usize>] {
        &self.colors
    }

    pub fn color(&self, v: VertexId) -> Option<usize> {
        self.colors[v]
    }

    pub fn history(&self) -> &[Move] {
        &self.history
    }

    pub fn check_move(&self, v: VertexId, c: usize) -> Result<(), GameError> {
        if v >= self.graph.n() {
            return Err(GameError::VertexOutOfRange(v));
        }
        if self.colors[v].is_some() {
            return Err(GameError::AlreadyColored(v));
        }
        if c == 0 || c > self.k {
            return Err(GameError::ColorOutOfRange { color: c, k: self.k });
        }
        if self.graph.neighbors(v).any(|u| self.colors[u] == Some(c)) {
            return Err(GameError::Improper { vertex: v, color: c });
        }
        Ok(())
    }

    fn push(&mut self, v: VertexId, c: usize) -> Result<(), GameError> {
        self.check_move(v, c)?;
        self.colors[v] = Some(c);
        self.history.push(Move { vertex: v, color: c });
        Ok(())
    }

    /// New snapshot with `v` coloured `c`.
    pub fn apply(&self, v: VertexId, c: usize) -> Result<GameState, GameError> {
        let mut next = self.clone();
        next.push(v, c)?;
        Ok(next)
    }

    /// Colours present on the neighbours of `v`, bit `c - 1` for colour `c`.
    pub fn neighbor_colors(&self, v: VertexId) -> u64 {
        self.graph
            .neighbors(v)
            .filter_map(|u| self.colors[u])
            .fold(0u64, |m, c| m | (1u64 << (c - 1)))
    }

    /// Colours Ben may legally give `v`, ascending. Empty for coloured vertices.
    pub fn available_colors(&self, v: VertexId) -> Vec<usize> {
        if self.colors[v].is_some() {
            return Vec::new();
        }
        let seen = self.neighbor_colors(v);
        (1..=self.k).filter(|c| seen & (1u64 << (c - 1)) == 0).collect()
    }

    /// Colours used anywhere, as a mask (bit `c - 1`).
    pub fn used_colors(&self) -> u64 {
        self.colors.iter().flatten().fold(0u64, |m, c| m | (1u64 << (c - 1)))
    }

    pub fn uncolored(&self) -> Vec<VertexId> {
        (0..self.graph.n()).filter(|&v| self.colors[v].is_none()).collect()
    }

    pub fn is_complete(&self) -> bool {
        self.colors.iter().all(Option::is_some)
    }

    /// Adjacent coloured vertices never share a colour.
    pub fn is_proper(&self) -> bool {
        self.graph.edges().iter().all(|&(u, v)| match (self.colors[u], self.colors[v]) {
            (Some(a), Some(b)) => a != b,
            _ => true,
        })
    }

    /// Uncoloured vertices whose neighbours already carry all `k` colours.
    pub fn blocked_vertices(&self) -> Vec<VertexId> {
        blocked_vertices(self)
    }
}

/// Uncoloured vertices whose coloured neighbourhood carries all `k` colours.
pub fn blocked_vertices(s: &GameState) -> Vec<VertexId> {
    if s.graph.max_degree().unwrap_or(0) < s.k {
        return Vec::new();
    }
    (0..s.graph.n())
        .filter(|&v| s.colors[v].is_none() && s.neighbor_colors(v).count_ones() as usize == s.k)
        .collect()
}

/// Colour-permutation-invariant identity of a state: the palette size plus
/// the colour classes, listed by their minimum member.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CanonicalKey {
    pub k: usize,
    pub classes: Vec<Vec<VertexId>>,
}

pub fn canonical_key(s: &GameState) -> CanonicalKey {
    let mut slot: Vec<Option<usize>> = vec![None; s.k + 1];
    let mut classes: Vec<Vec<VertexId>> = Vec::new();
    for (v, c) in s.colors.iter().enumerate() {
        if let Some(c) = *c {
            let idx = *slot[c].get_or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[idx].push(v);
        }
    }
    CanonicalKey { k: s.k, classes }
}

/// Search budget. A solve that exceeds any of these reports
/// [`Outcome::ResourceLimit`] instead of an answer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Limits {
    pub max_states: u64,
    pub max_millis: u64,
    pub max_vertices: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_states: 50_000_000, max_millis: 300_000, max_vertices: 12 }
    }
}

impl Limits {
    pub fn with_max_vertices(mut self, n: usize) -> Self {
        self.max_vertices = n;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Outcome {
    AnnWins,
    BenWins,
    ResourceLimit,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchStats {
    /// Ann-to-move states expanded (memo misses).
    pub states: u64,
    pub memo_hits: u64,
    pub millis: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub outcome: Outcome,
    pub stats: SearchStats,
}

impl Verdict {
    pub fn ann_wins(&self) -> Option<bool> {
        match self.outcome {
            Outcome::AnnWins => Some(true),
            Outcome::BenWins => Some(false),
            Outcome::ResourceLimit => None,
        }
    }
}
