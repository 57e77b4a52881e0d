use std::sync::Arc;

use super::StrategyError;
use crate::graph::{chromatic_number, lexicographic_product, product_vertex, Graph, VertexId};
use crate::solver::{AnnPolicy, GameState, Limits, Move, PolicyError, SolverAnn};

/// Ann on `G[H]` driven by an Ann strategy for `G[K_ℓ]` (`ℓ = χ(H)`).
///
/// Each presentation the outer strategy makes in clique `r` is played out in
/// copy `r` of `H`, following the inner strategy for `H` with `ℓ` colours,
/// until Ben puts a colour on that copy it has not seen before. That colour
/// is then fed back to the outer strategy as Ben's reply. When the outer game
/// is fully coloured, each copy is finished in turn with the inner strategy
/// on whatever colours the neighbouring copies leave free.
pub struct ReductionAnn {
    g: Graph,
    h: Arc<Graph>,
    ell: usize,
    product: Graph,
    outer_graph: Arc<Graph>,
    outer: Box<dyn AnnPolicy>,
    inner: Box<dyn AnnPolicy>,
}

/// Checks `χ(H) = ℓ`; the remaining preconditions (the outer strategy wins
/// `G[K_ℓ]`, the inner one wins `H` at every palette from `ℓ` up) are the
/// caller's claim.
pub fn reduction_ann(
    g: &Graph,
    h: &Graph,
    outer: Box<dyn AnnPolicy>,
    inner: Box<dyn AnnPolicy>,
    ell: usize,
) -> Result<ReductionAnn, StrategyError> {
    let chi = chromatic_number(h)?;
    if chi != ell {
        return Err(StrategyError::Precondition(format!("declared ℓ = {ell} but χ(H) = {chi}")));
    }
    let clique = crate::graph::family_generator("K", &[ell])?;
    Ok(ReductionAnn {
        g: g.clone(),
        h: Arc::new(h.clone()),
        ell,
        product: lexicographic_product(g, h)?,
        outer_graph: Arc::new(lexicographic_product(g, &clique)?),
        outer,
        inner,
    })
}

/// The reduction with exact-solver strategies on both levels.
pub fn reduction_ann_solved(g: &Graph, h: &Graph, limits: Limits) -> Result<ReductionAnn, StrategyError> {
    let ell = chromatic_number(h)?;
    let clique = crate::graph::family_generator("K", &[ell])?;
    let outer = SolverAnn::new(Arc::new(lexicographic_product(g, &clique)?), limits);
    let inner = SolverAnn::new(Arc::new(h.clone()), limits);
    reduction_ann(g, h, Box::new(outer), Box::new(inner), ell)
}

struct Replay {
    outer: GameState,
    /// Per copy: colours in order of first appearance.
    palettes: Vec<Vec<usize>>,
    /// Outer vertex awaiting a new colour in its copy.
    pending: Option<VertexId>,
}

fn precondition(msg: impl Into<String>) -> PolicyError {
    PolicyError::Precondition(msg.into())
}

impl ReductionAnn {
    pub fn ell(&self) -> usize {
        self.ell
    }

    pub fn product(&self) -> &Graph {
        &self.product
    }

    fn h_n(&self) -> usize {
        self.h.n()
    }

    fn replay(&self, s: &GameState) -> Result<Replay, PolicyError> {
        let h_n = self.h_n();
        let mut r = Replay {
            outer: GameState::new(self.outer_graph.clone(), s.k()).map_err(|e| precondition(e.to_string()))?,
            palettes: vec![Vec::new(); self.g.n()],
            pending: None,
        };
        for m in s.history() {
            if r.outer.is_complete() {
                break;
            }
            let copy = m.vertex / h_n;
            let w = match r.pending {
                Some(w) => w,
                None => self.outer.present(&r.outer)?,
            };
            if w / self.ell != copy {
                return Err(precondition("history was not produced by this strategy"));
            }
            if r.palettes[copy].contains(&m.color) {
                r.pending = Some(w);
            } else {
                r.palettes[copy].push(m.color);
                r.outer = r.outer.apply(w, m.color).map_err(|e| precondition(e.to_string()))?;
                r.pending = None;
            }
        }
        Ok(r)
    }

    /// State of copy `copy` as a game on `H`, colours renamed through `rename`.
    fn local(
        &self,
        s: &GameState,
        copy: VertexId,
        k: usize,
        rename: impl Fn(usize) -> Option<usize>,
    ) -> Result<GameState, PolicyError> {
        let h_n = self.h_n();
        let moves: Vec<Move> = s
            .history()
            .iter()
            .filter(|m| m.vertex / h_n == copy)
            .map(|m| {
                rename(m.color)
                    .map(|c| Move { vertex: m.vertex % h_n, color: c })
                    .ok_or_else(|| precondition("colour outside the copy's palette"))
            })
            .collect::<Result<_, _>>()?;
        GameState::from_moves(self.h.clone(), k, &moves).map_err(|e| precondition(e.to_string()))
    }

    fn present_in_copy(&self, s: &GameState, copy: VertexId, local: &GameState) -> Result<VertexId, PolicyError> {
        let y = self.inner.present(local)?;
        let v = product_vertex(copy, y, self.h_n());
        if y >= self.h_n() || s.color(v).is_some() {
            return Err(precondition("inner strategy presented a coloured vertex"));
        }
        Ok(v)
    }
}

impl AnnPolicy for ReductionAnn {
    fn name(&self) -> String {
        "reduction".into()
    }

    fn present(&self, s: &GameState) -> Result<VertexId, PolicyError> {
        if s.graph() != &self.product {
            return Err(precondition("state is on a different graph"));
        }
        if s.k() < self.ell {
            return Err(precondition(format!("palette {} is below ℓ = {}", s.k(), self.ell)));
        }
        let h_n = self.h_n();
        let open = |copy: VertexId| (0..h_n).any(|y| s.color(product_vertex(copy, y, h_n)).is_none());
        let r = self.replay(s)?;

        if !r.outer.is_complete() {
            let w = match r.pending {
                Some(w) => w,
                None => self.outer.present(&r.outer)?,
            };
            let copy = w / self.ell;
            if !open(copy) {
                return Err(precondition("copy is full before the outer clique is; χ(H) < ℓ?"));
            }
            let palette = &r.palettes[copy];
            let local = self.local(s, copy, self.ell, |c| palette.iter().position(|&p| p == c).map(|i| i + 1))?;
            return self.present_in_copy(s, copy, &local);
        }

        let Some(copy) = (0..self.g.n()).find(|&x| open(x)) else {
            return Err(precondition("no uncoloured vertex left"));
        };
        let blocked: u64 = self
            .g
            .neighbors(copy)
            .flat_map(|x| (0..h_n).filter_map(move |y| s.color(product_vertex(x, y, h_n))))
            .fold(0, |m, c| m | 1 << (c - 1));
        let free: Vec<usize> = (1..=s.k()).filter(|c| blocked & (1 << (c - 1)) == 0).collect();
        if free.is_empty() {
            let y = (0..h_n).find(|&y| s.color(product_vertex(copy, y, h_n)).is_none()).expect("open copy");
            return Ok(product_vertex(copy, y, h_n));
        }
        let local = self.local(s, copy, free.len(), |c| free.iter().position(|&p| p == c).map(|i| i + 1))?;
        self.present_in_copy(s, copy, &local)
    }
}
