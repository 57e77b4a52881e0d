use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{GameError, GameState, Move, SolveError};
use crate::graph::{Graph, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Ann,
    Ben,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Side::Ann => "Ann",
            Side::Ben => "Ben",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolicyError {
    #[error("search limit reached")]
    ResourceLimit,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("no winning strategy: Ann loses this game")]
    NotWinning,
    #[error(transparent)]
    Solve(SolveError),
}

impl From<SolveError> for PolicyError {
    fn from(e: SolveError) -> Self {
        match e {
            SolveError::ResourceLimit => PolicyError::ResourceLimit,
            other => PolicyError::Solve(other),
        }
    }
}

/// Ann's move rule: which uncoloured vertex to present next.
pub trait AnnPolicy: Send + Sync {
    fn name(&self) -> String;
    fn present(&self, state: &GameState) -> Result<VertexId, PolicyError>;
}

/// Ben's move rule: which colour to give the presented vertex.
pub trait BenPolicy: Send + Sync {
    fn name(&self) -> String;
    fn color(&self, state: &GameState, vertex: VertexId) -> Result<usize, PolicyError>;
}

/// A move rule for one side of the game.
pub enum StrategyPolicy {
    Ann(Box<dyn AnnPolicy>),
    Ben(Box<dyn BenPolicy>),
}

impl StrategyPolicy {
    pub fn side(&self) -> Side {
        match self {
            StrategyPolicy::Ann(_) => Side::Ann,
            StrategyPolicy::Ben(_) => Side::Ben,
        }
    }

    pub fn name(&self) -> String {
        match self {
            StrategyPolicy::Ann(p) => p.name(),
            StrategyPolicy::Ben(p) => p.name(),
        }
    }

    pub fn as_ann(&self) -> Option<&dyn AnnPolicy> {
        match self {
            StrategyPolicy::Ann(p) => Some(p.as_ref()),
            StrategyPolicy::Ben(_) => None,
        }
    }

    pub fn as_ben(&self) -> Option<&dyn BenPolicy> {
        match self {
            StrategyPolicy::Ben(p) => Some(p.as_ref()),
            StrategyPolicy::Ann(_) => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GameOutcome {
    Ann,
    Ben,
}

/// A finished game: `{"k", "moves": [{"v","c"}], "outcome": "ann"|"ben", "blocked"?}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    pub k: usize,
    pub moves: Vec<Move>,
    pub outcome: GameOutcome,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub blocked: Option<VertexId>,
}

impl Transcript {
    /// Replays the moves on `g` and confirms the recorded outcome: a complete
    /// proper colouring for Ann, a genuinely blocked vertex for Ben.
    pub fn verify(&self, g: Arc<Graph>) -> Result<bool, GameError> {
        let s = GameState::from_moves(g, self.k, &self.moves)?;
        Ok(match self.outcome {
            GameOutcome::Ann => s.is_complete() && self.blocked.is_none(),
            GameOutcome::Ben => self.blocked.is_some_and(|b| s.blocked_vertices().contains(&b)),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PlayError {
    #[error("{side} made an illegal move: {reason}")]
    IllegalMove { side: Side, reason: String },
    #[error("{side} policy failed: {source}")]
    Policy { side: Side, source: PolicyError },
    #[error(transparent)]
    Game(#[from] GameError),
}

impl PlayError {
    pub fn side(&self) -> Option<Side> {
        match self {
            PlayError::IllegalMove { side, .. } | PlayError::Policy { side, .. } => Some(*side),
            PlayError::Game(_) => None,
        }
    }
}

/// Plays a full game from the empty colouring.
pub fn play_game(
    g: Arc<Graph>,
    k: usize,
    ann: &dyn AnnPolicy,
    ben: &dyn BenPolicy,
) -> Result<Transcript, PlayError> {
    play_from(GameState::new(g, k)?, ann, ben)
}

fn finished(s: &GameState) -> Option<(GameOutcome, Option<VertexId>)> {
    if let Some(&b) = s.blocked_vertices().first() {
        return Some((GameOutcome::Ben, Some(b)));
    }
    if s.is_complete() {
        return Some((GameOutcome::Ann, None));
    }
    None
}

fn ann_move(s: &GameState, ann: &dyn AnnPolicy) -> Result<VertexId, PlayError> {
    let v = ann.present(s).map_err(|source| PlayError::Policy { side: Side::Ann, source })?;
    if v >= s.graph().n() {
        return Err(PlayError::IllegalMove { side: Side::Ann, reason: format!("vertex {v} out of range") });
    }
    if s.color(v).is_some() {
        return Err(PlayError::IllegalMove { side: Side::Ann, reason: format!("vertex {v} already coloured") });
    }
    Ok(v)
}

/// Plays on from `state`. The game ends for Ben the moment a vertex is
/// blocked, or if Ann presents a vertex with no proper colour.
pub fn play_from(
    mut s: GameState,
    ann: &dyn AnnPolicy,
    ben: &dyn BenPolicy,
) -> Result<Transcript, PlayError> {
    loop {
        if let Some((outcome, blocked)) = finished(&s) {
            return Ok(Transcript { k: s.k(), moves: s.history().to_vec(), outcome, blocked });
        }
        let v = ann_move(&s, ann)?;
        if s.available_colors(v).is_empty() {
            return Ok(Transcript {
                k: s.k(),
                moves: s.history().to_vec(),
                outcome: GameOutcome::Ben,
                blocked: Some(v),
            });
        }
        let c = ben.color(&s, v).map_err(|source| PlayError::Policy { side: Side::Ben, source })?;
        s = s
            .apply(v, c)
            .map_err(|e| PlayError::IllegalMove { side: Side::Ben, reason: e.to_string() })?;
    }
}

/// Which Ben replies an exhaustive playout explores.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenBranching {
    /// Every proper colour.
    All,
    /// Proper used colours plus one unused colour. Exact for Ann policies
    /// that are invariant under renaming colours, which all policies in this
    /// crate are.
    Canonical,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlayoutReport {
    pub lines: u64,
    pub ann_lines: u64,
    pub ben_lines: u64,
    /// Set when `max_lines` was reached before the tree was exhausted.
    pub truncated: bool,
    pub first_loss: Option<Transcript>,
}

impl PlayoutReport {
    /// The Ann policy won every Ben line and the tree was fully explored.
    pub fn ann_always_wins(&self) -> bool {
        !self.truncated && self.ben_lines == 0
    }
}

/// Plays `ann` against every Ben line from `state`.
pub fn exhaustive_playout(
    state: &GameState,
    ann: &dyn AnnPolicy,
    branching: BenBranching,
    max_lines: u64,
) -> Result<PlayoutReport, PlayError> {
    let mut report =
        PlayoutReport { lines: 0, ann_lines: 0, ben_lines: 0, truncated: false, first_loss: None };
    walk(state, ann, branching, max_lines, &mut report)?;
    Ok(report)
}

fn record(report: &mut PlayoutReport, s: &GameState, outcome: GameOutcome, blocked: Option<VertexId>) {
    report.lines += 1;
    match outcome {
        GameOutcome::Ann => report.ann_lines += 1,
        GameOutcome::Ben => {
            report.ben_lines += 1;
            if report.first_loss.is_none() {
                report.first_loss =
                    Some(Transcript { k: s.k(), moves: s.history().to_vec(), outcome, blocked });
            }
        }
    }
}

fn walk(
    s: &GameState,
    ann: &dyn AnnPolicy,
    branching: BenBranching,
    max_lines: u64,
    report: &mut PlayoutReport,
) -> Result<(), PlayError> {
    if report.lines >= max_lines {
        report.truncated = true;
        return Ok(());
    }
    if let Some((outcome, blocked)) = finished(s) {
        record(report, s, outcome, blocked);
        return Ok(());
    }
    let v = ann_move(s, ann)?;
    let avail = s.available_colors(v);
    if avail.is_empty() {
        record(report, s, GameOutcome::Ben, Some(v));
        return Ok(());
    }
    let replies: Vec<usize> = match branching {
        BenBranching::All => avail,
        BenBranching::Canonical => {
            let used = s.used_colors();
            let mut fresh_taken = false;
            avail
                .into_iter()
                .filter(|&c| {
                    if used & (1u64 << (c - 1)) != 0 {
                        true
                    } else if !fresh_taken {
                        fresh_taken = true;
                        true
                    } else {
                        false
                    }
                })
                .collect()
        }
    };
    for c in replies {
        let next = s.apply(v, c)?;
        walk(&next, ann, branching, max_lines, report)?;
        if report.truncated {
            break;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::family_generator;

    /// Presents vertices in a fixed order.
    struct Fixed(Vec<VertexId>);
    impl AnnPolicy for Fixed {
        fn name(&self) -> String {
            "fixed".into()
        }
        fn present(&self, s: &GameState) -> Result<VertexId, PolicyError> {
            self.0.iter().copied().find(|&v| s.color(v).is_none()).ok_or(PolicyError::Precondition("done".into()))
        }
    }

    /// Colours from a script, one entry per move.
    struct Script(Vec<usize>);
    impl BenPolicy for Script {
        fn name(&self) -> String {
            "script".into()
        }
        fn color(&self, s: &GameState, _: VertexId) -> Result<usize, PolicyError> {
            Ok(self.0[s.history().len()])
        }
    }

    fn arc(t: &str, p: &[usize]) -> Arc<Graph> {
        Arc::new(family_generator(t, p).unwrap())
    }

    #[test]
    fn k2_finishes_in_two_moves() {
        let t = play_game(arc("K", &[2]), 2, &Fixed(vec![0, 1]), &Script(vec![2, 1])).unwrap();
        assert_eq!(t.outcome, GameOutcome::Ann);
        assert_eq!(t.moves.len(), 2);
    }

    #[test]
    fn leaves_first_blocks_centre() {
        let g = arc("P", &[3]);
        let t = play_game(g.clone(), 2, &Fixed(vec![0, 2, 1]), &Script(vec![1, 2])).unwrap();
        assert_eq!(t.outcome, GameOutcome::Ben);
        assert_eq!(t.blocked, Some(1));
        assert!(t.verify(g).unwrap());
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"k":2,"moves":[{"v":0,"c":1},{"v":2,"c":2}],"outcome":"ben","blocked":1}"#);
    }

    #[test]
    fn illegal_moves_name_the_side() {
        let g = arc("P", &[3]);
        let e = play_game(g.clone(), 2, &Fixed(vec![0, 1]), &Script(vec![1, 1])).unwrap_err();
        assert_eq!(e.side(), Some(Side::Ben));
        let e = play_game(g.clone(), 2, &Fixed(vec![0, 2, 1]), &Script(vec![3])).unwrap_err();
        assert_eq!(e.side(), Some(Side::Ben));

        struct Repeat;
        impl AnnPolicy for Repeat {
            fn name(&self) -> String {
                "repeat".into()
            }
            fn present(&self, _: &GameState) -> Result<VertexId, PolicyError> {
                Ok(0)
            }
        }
        let e = play_game(g, 2, &Repeat, &Script(vec![1, 1, 1])).unwrap_err();
        assert!(matches!(e, PlayError::IllegalMove { side: Side::Ann, .. }));
    }

    #[test]
    fn playout_counts_lines() {
        let g = arc("P", &[3]);
        let s = GameState::new(g, 2).unwrap();
        // leaves first: Ben can repeat or switch colour on the second leaf
        let r = exhaustive_playout(&s, &Fixed(vec![0, 2, 1]), BenBranching::All, 1000).unwrap();
        assert_eq!((r.lines, r.ann_lines, r.ben_lines), (4, 2, 2));
        let r = exhaustive_playout(&s, &Fixed(vec![0, 2, 1]), BenBranching::Canonical, 1000).unwrap();
        assert_eq!((r.lines, r.ann_lines, r.ben_lines), (2, 1, 1));
        let r = exhaustive_playout(&s, &Fixed(vec![1, 0, 2]), BenBranching::All, 1000).unwrap();
        assert!(r.ann_always_wins());
        let r = exhaustive_playout(&s, &Fixed(vec![1, 0, 2]), BenBranching::All, 1).unwrap();
        assert!(r.truncated && !r.ann_always_wins());
    }
}
