//! Exact engine for the indicated coloring game.
//!
//! Ann repeatedly picks an uncoloured vertex and Ben colours it properly from
//! a fixed palette `{1..k}`. Ann wins if the whole graph gets coloured; Ben
//! wins as soon as some uncoloured vertex sees all `k` colours on its
//! neighbours.

pub mod graph;
pub mod harness;
pub mod solver;
pub mod recognizers;
pub mod strategies;
