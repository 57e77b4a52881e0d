//! Constructive Ann strategies and Ben opponents.
//!
//! Every policy derives its move from the current [`GameState`] alone (the
//! reduction strategy replays the state's history), so a policy can resume a
//! game at any position and is safe to share between threads.

mod ben;
mod reduction;

use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{
    coloring_number, degeneracy_order, lexicographic_product, product_coords, product_vertex, Graph,
    GraphError, VertexId,
};
use crate::solver::{AnnPolicy, BenPolicy, GameState, Limits, PolicyError, SolverAnn, StrategyPolicy};

pub use ben::{heuristic_ben, optimal_ben, HeuristicBen, OptimalBen};
pub use reduction::{reduction_ann, reduction_ann_solved, ReductionAnn};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("unknown strategy `{0}`")]
    Unknown(String),
    #[error("strategy `{0}` needs the product factors G and H")]
    MissingFactors(String),
    #[error("strategy `{0}` cannot play this side")]
    WrongSide(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
}

/// A vertex of `G[H]` as (copy of H, layer of G).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProductCoords {
    pub copy: VertexId,
    pub layer: VertexId,
}

impl ProductCoords {
    pub fn of(v: VertexId, h_n: usize) -> Self {
        let (copy, layer) = product_coords(v, h_n);
        ProductCoords { copy, layer }
    }

    pub fn vertex(self, h_n: usize) -> VertexId {
        product_vertex(self.copy, self.layer, h_n)
    }
}

fn same_graph(s: &GameState, g: &Graph) -> Result<(), PolicyError> {
    if s.graph() != g {
        return Err(PolicyError::Precondition("state is on a different graph".into()));
    }
    Ok(())
}

/// Presents vertices in degeneracy order, ignoring Ben's replies.
pub struct DegeneracyAnn {
    graph: Graph,
    order: Vec<VertexId>,
}

impl DegeneracyAnn {
    pub fn order(&self) -> &[VertexId] {
        &self.order
    }
}

pub fn degeneracy_ann(g: &Graph) -> Result<DegeneracyAnn, StrategyError> {
    Ok(DegeneracyAnn { graph: g.clone(), order: degeneracy_order(g)? })
}

impl AnnPolicy for DegeneracyAnn {
    fn name(&self) -> String {
        "degeneracy".into()
    }

    fn present(&self, s: &GameState) -> Result<VertexId, PolicyError> {
        same_graph(s, &self.graph)?;
        self.order
            .iter()
            .copied()
            .find(|&v| s.color(v).is_none())
            .ok_or_else(|| PolicyError::Precondition("no uncoloured vertex left".into()))
    }
}

/// Ann on `G[H]` with at least `col(G)·col(H)` colours.
///
/// Copies are visited in degeneracy order of `G`. Inside the current copy Ann
/// presents layers in degeneracy order of `H` until Ben has used `col(H)`
/// distinct colours there, then moves on. Once every copy has been through
/// that, the leftover vertices go copy by copy in the same orders.
pub struct ProductColAnn {
    product: Graph,
    h_n: usize,
    copies: Vec<VertexId>,
    layers: Vec<VertexId>,
    col_h: usize,
    bound: usize,
}

impl ProductColAnn {
    /// `col(G)·col(H)`, the least palette this strategy accepts.
    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn product(&self) -> &Graph {
        &self.product
    }

    fn in_order(&self) -> impl Iterator<Item = (VertexId, Vec<VertexId>)> + '_ {
        self.copies.iter().map(|&x| {
            (x, self.layers.iter().map(|&y| product_vertex(x, y, self.h_n)).collect())
        })
    }
}

pub fn product_col_ann(g: &Graph, h: &Graph) -> Result<ProductColAnn, StrategyError> {
    let col_h = coloring_number(h)?;
    Ok(ProductColAnn {
        product: lexicographic_product(g, h)?,
        h_n: h.n(),
        copies: degeneracy_order(g)?,
        layers: degeneracy_order(h)?,
        col_h,
        bound: coloring_number(g)? * col_h,
    })
}

impl AnnPolicy for ProductColAnn {
    fn name(&self) -> String {
        "product-col".into()
    }

    fn present(&self, s: &GameState) -> Result<VertexId, PolicyError> {
        same_graph(s, &self.product)?;
        if s.k() < self.bound {
            return Err(PolicyError::Precondition(format!(
                "palette {} is below col(G)·col(H) = {}",
                s.k(),
                self.bound
            )));
        }
        for (_, copy) in self.in_order() {
            let distinct = copy.iter().filter_map(|&v| s.color(v)).fold(0u64, |m, c| m | 1 << (c - 1));
            if (distinct.count_ones() as usize) < self.col_h {
                if let Some(&v) = copy.iter().find(|&&v| s.color(v).is_none()) {
                    return Ok(v);
                }
            }
        }
        self.in_order()
            .flat_map(|(_, copy)| copy)
            .find(|&v| s.color(v).is_none())
            .ok_or_else(|| PolicyError::Precondition("no uncoloured vertex left".into()))
    }
}

/// Strategy names accepted by the CLI and the service.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StrategyName {
    Degeneracy,
    ProductCol,
    Reduction,
    Optimal,
    Heuristic(u64),
    Human,
}

impl FromStr for StrategyName {
    type Err = StrategyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "degeneracy" => StrategyName::Degeneracy,
            "product-col" => StrategyName::ProductCol,
            "reduction" => StrategyName::Reduction,
            "optimal" => StrategyName::Optimal,
            "human" => StrategyName::Human,
            "heuristic" => StrategyName::Heuristic(0),
            _ => match s.strip_prefix("heuristic:").map(str::parse::<u64>) {
                Some(Ok(seed)) => StrategyName::Heuristic(seed),
                _ => return Err(StrategyError::Unknown(s.to_string())),
            },
        })
    }
}

impl std::fmt::Display for StrategyName {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            StrategyName::Degeneracy => f.write_str("degeneracy"),
            StrategyName::ProductCol => f.write_str("product-col"),
            StrategyName::Reduction => f.write_str("reduction"),
            StrategyName::Optimal => f.write_str("optimal"),
            StrategyName::Heuristic(seed) => write!(f, "heuristic:{seed}"),
            StrategyName::Human => f.write_str("human"),
        }
    }
}

/// What a named strategy may need: the board, optionally its factors
/// `(G, H)` when the board is `G[H]`, and solver limits.
#[derive(Debug, Clone, Copy)]
pub struct StrategyContext<'a> {
    pub graph: &'a Graph,
    pub factors: Option<(&'a Graph, &'a Graph)>,
    pub limits: Limits,
}

impl StrategyContext<'_> {
    fn factors_for(&self, name: StrategyName) -> Result<(&Graph, &Graph), StrategyError> {
        let (g, h) = self.factors.ok_or_else(|| StrategyError::MissingFactors(name.to_string()))?;
        if &lexicographic_product(g, h)? != self.graph {
            return Err(StrategyError::Precondition("board is not the product of the given factors".into()));
        }
        Ok((g, h))
    }
}

/// Builds the named Ann strategy.
pub fn build_ann(name: StrategyName, ctx: StrategyContext<'_>) -> Result<Box<dyn AnnPolicy>, StrategyError> {
    Ok(match name {
        StrategyName::Degeneracy => Box::new(degeneracy_ann(ctx.graph)?),
        StrategyName::ProductCol => {
            let (g, h) = ctx.factors_for(name)?;
            Box::new(product_col_ann(g, h)?)
        }
        StrategyName::Reduction => {
            let (g, h) = ctx.factors_for(name)?;
            Box::new(reduction_ann_solved(g, h, ctx.limits)?)
        }
        StrategyName::Optimal => Box::new(SolverAnn::new(Arc::new(ctx.graph.clone()), ctx.limits)),
        StrategyName::Heuristic(_) | StrategyName::Human => {
            return Err(StrategyError::WrongSide(name.to_string()))
        }
    })
}

/// Builds the named Ben strategy.
pub fn build_ben(name: StrategyName, ctx: StrategyContext<'_>) -> Result<Box<dyn BenPolicy>, StrategyError> {
    Ok(match name {
        StrategyName::Optimal => Box::new(optimal_ben(ctx.graph, ctx.limits)),
        StrategyName::Heuristic(seed) => Box::new(heuristic_ben(seed)),
        _ => return Err(StrategyError::WrongSide(name.to_string())),
    })
}

/// Builds a named strategy for either side; Ann is tried first.
pub fn build_policy(name: StrategyName, ctx: StrategyContext<'_>) -> Result<StrategyPolicy, StrategyError> {
    match name {
        StrategyName::Heuristic(_) => Ok(StrategyPolicy::Ben(build_ben(name, ctx)?)),
        _ => Ok(StrategyPolicy::Ann(build_ann(name, ctx)?)),
    }
}
