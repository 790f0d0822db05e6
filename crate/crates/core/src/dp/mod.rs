//! Polynomial dynamic programs for minimum-length covering when the robots
//! start at one vertex or at two vertices.
//!
//! All solvers work on path tuples: a minimum-length strategy is determined by
//! the simple path each robot ends up displaced along, and its length is
//! `sum |P_i| + 2 * |V \ union V(P_i)|`. Each table stores the choice made at
//! every entry so an optimal tuple, and from it a strategy, can be rebuilt.
//!
//! Ties are broken towards the smaller robot split, then the earlier case.

mod destination;
mod one_source;
mod two_sources;

pub use destination::{destination_path, DestinationPath};
pub use one_source::{one_source, OneSource, OneSourceTable};
pub use two_sources::{two_sources, TwoSources};

use crate::strategy::{PathTuple, Strategy};
use crate::structure::strategy_from_paths;
use crate::tree::{Tree, Vertex};

/// An optimal cost with a path tuple and a strategy attaining it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DpSolution {
    pub cost: usize,
    pub paths: PathTuple,
    pub strategy: Strategy,
}

impl DpSolution {
    pub(crate) fn from_paths(tree: &Tree, cost: usize, paths: PathTuple) -> Self {
        let strategy = strategy_from_paths(tree, &paths);
        DpSolution { cost, paths, strategy }
    }
}

/// Ids of the first `count` paths whose last vertex is `at`.
fn ending_at(paths: &[Vec<Vertex>], at: Vertex, count: usize) -> Vec<usize> {
    let ids: Vec<usize> = paths
        .iter()
        .enumerate()
        .filter(|(_, p)| p.last() == Some(&at))
        .map(|(i, _)| i)
        .take(count)
        .collect();
    assert_eq!(ids.len(), count, "reconstruction lost a path ending at {at}");
    ids
}
