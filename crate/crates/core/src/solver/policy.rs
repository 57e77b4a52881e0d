use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::sync::Arc;

use parking_lot::Mutex;

use super::play::{AnnPolicy, PolicyError};
use super::{GameSolver, GameState, Limits, Outcome};
use crate::graph::{Graph, VertexId};

/// One lazily built solver per palette size, all on the same graph.
pub struct SolverCache {
    graph: Arc<Graph>,
    limits: Limits,
    solvers: Mutex<BTreeMap<usize, GameSolver>>,
}

impl SolverCache {
    pub fn new(graph: Arc<Graph>, limits: Limits) -> Self {
        SolverCache { graph, limits, solvers: Mutex::new(BTreeMap::new()) }
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    /// Runs `f` on the solver for palette `k`, rejecting states on another graph.
    pub fn with_solver<T>(
        &self,
        s: Option<&GameState>,
        k: usize,
        f: impl FnOnce(&mut GameSolver) -> Result<T, PolicyError>,
    ) -> Result<T, PolicyError> {
        if s.is_some_and(|s| s.graph() != &*self.graph) {
            return Err(PolicyError::Precondition("state is on a different graph".into()));
        }
        let mut map = self.solvers.lock();
        let solver = match map.entry(k) {
            Entry::Occupied(e) => e.into_mut(),
            Entry::Vacant(e) => e.insert(GameSolver::new(self.graph.clone(), k, self.limits)?),
        };
        f(solver)
    }
}

/// Ann policy backed by the exact solver: presents the first vertex (in
/// search order) that keeps the position winning, for whatever palette the
/// state carries. In a lost position it presents the lowest uncoloured
/// vertex, which is always legal.
pub struct SolverAnn {
    cache: SolverCache,
}

impl SolverAnn {
    pub fn new(graph: Arc<Graph>, limits: Limits) -> Self {
        SolverAnn { cache: SolverCache::new(graph, limits) }
    }

    pub fn graph(&self) -> &Arc<Graph> {
        self.cache.graph()
    }
}

impl AnnPolicy for SolverAnn {
    fn name(&self) -> String {
        "optimal".into()
    }

    fn present(&self, s: &GameState) -> Result<VertexId, PolicyError> {
        let first_open = s.uncolored().first().copied();
        let Some(fallback) = first_open else {
            return Err(PolicyError::Precondition("no uncoloured vertex left".into()));
        };
        let choice = self.cache.with_solver(Some(s), s.k(), |solver| Ok(solver.winning_presentation(s)?))?;
        Ok(choice.unwrap_or(fallback))
    }
}

/// A winning Ann policy for `(G, k)`; fails unless Ann actually wins.
pub fn extract_policy(g: &Graph, k: usize, limits: Limits) -> Result<SolverAnn, PolicyError> {
    let policy = SolverAnn::new(Arc::new(g.clone()), limits);
    let outcome = policy.cache.with_solver(None, k, |solver| Ok(solver.solve().outcome))?;
    match outcome {
        Outcome::AnnWins => Ok(policy),
        Outcome::BenWins => Err(PolicyError::NotWinning),
        Outcome::ResourceLimit => Err(PolicyError::ResourceLimit),
    }
}
