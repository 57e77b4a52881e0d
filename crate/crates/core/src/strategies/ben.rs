use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::graph::{Graph, VertexId};
use crate::solver::{BenPolicy, GameState, Limits, PolicyError, SolverCache};

/// Ben playing a minimax-optimal colour: the lowest colour (after merging
/// interchangeable unused colours) that leaves Ann lost, otherwise the
/// lowest proper colour.
pub struct OptimalBen {
    cache: SolverCache,
}

pub fn optimal_ben(g: &Graph, limits: Limits) -> OptimalBen {
    OptimalBen { cache: SolverCache::new(Arc::new(g.clone()), limits) }
}

impl BenPolicy for OptimalBen {
    fn name(&self) -> String {
        "optimal".into()
    }

    fn color(&self, s: &GameState, v: VertexId) -> Result<usize, PolicyError> {
        self.cache
            .with_solver(Some(s), s.k(), |solver| Ok(solver.best_reply(s, v)?))?
            .ok_or_else(|| PolicyError::Precondition(format!("vertex {v} has no proper colour")))
    }
}

/// Greedy Ben: picks the proper colour that blocks the most vertices, then
/// leaves the most vertices one colour short of blocked; ties go to the lowest
/// colour. With `noise > 0` a seeded coin occasionally picks a uniformly
/// random proper colour instead.
#[derive(Debug, Clone)]
pub struct HeuristicBen {
    seed: u64,
    noise: f64,
}

pub fn heuristic_ben(seed: u64) -> HeuristicBen {
    HeuristicBen { seed, noise: 0.0 }
}

impl HeuristicBen {
    pub fn with_noise(mut self, noise: f64) -> Self {
        self.noise = noise.clamp(0.0, 1.0);
        self
    }

    fn score(s: &GameState, v: VertexId, c: usize) -> (usize, usize) {
        let g = s.graph();
        let k = s.k();
        let bit = 1u64 << (c - 1);
        let mut blocked = 0;
        let mut nearly = 0;
        for u in g.neighbors(v) {
            if s.color(u).is_some() {
                continue;
            }
            let seen = s.neighbor_colors(u) | bit;
            match seen.count_ones() as usize {
                n if n == k => blocked += 1,
                n if n + 1 == k => nearly += 1,
                _ => {}
            }
        }
        (blocked, nearly)
    }
}

impl BenPolicy for HeuristicBen {
    fn name(&self) -> String {
        format!("heuristic:{}", self.seed)
    }

    fn color(&self, s: &GameState, v: VertexId) -> Result<usize, PolicyError> {
        if v >= s.graph().n() || s.color(v).is_some() {
            return Err(PolicyError::Precondition(format!("vertex {v} is not open")));
        }
        let avail = s.available_colors(v);
        if avail.is_empty() {
            return Err(PolicyError::Precondition(format!("vertex {v} has no proper colour")));
        }
        if self.noise > 0.0 {
            let mix = (s.history().len() as u64) << 32 | v as u64;
            let mut rng = ChaCha8Rng::seed_from_u64(self.seed ^ mix.wrapping_mul(0x9E37_79B9_7F4A_7C15));
            if rng.gen_bool(self.noise) {
                return Ok(avail[rng.gen_range(0..avail.len())]);
            }
        }
        let mut best = avail[0];
        let mut best_score = Self::score(s, v, best);
        for &c in &avail[1..] {
            let sc = Self::score(s, v, c);
            if sc > best_score {
                best = c;
                best_score = sc;
            }
        }
        Ok(best)
    }
}
