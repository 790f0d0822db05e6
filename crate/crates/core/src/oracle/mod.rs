//! Exhaustive solvers used as ground truth on small instances.
//!
//! [`Oracle`] searches the joint state space (robot positions, covered set,
//! steps since the last rendezvous) directly from the model's definitions. It
//! never consults the path-tuple theory the dynamic programs rely on, so the
//! two can be checked against each other. [`paths`] is the structural
//! counterpart that enumerates path tuples instead.

mod partition;
pub mod paths;
mod search;

pub use partition::{check_three_partition, three_partition_solve};
pub use paths::oracle_paths_mlcp;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::strategy::Strategy;
use crate::tree::{Tree, Vertex};
use search::Search;

/// Largest tree the joint-state encoding supports.
pub const MAX_VERTICES: usize = 64;
/// Largest fleet the joint-state encoding supports.
pub const MAX_ROBOTS: usize = 10;
pub const DEFAULT_MAX_STATES: usize = 5_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Objective {
    /// Cover time: number of synchronous steps.
    Time,
    /// Cover length: number of moves over all robots.
    Length,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Robot {
    pub start: Vertex,
    /// The robot must finish where it started.
    pub returns: bool,
}

impl Robot {
    pub fn at(start: Vertex) -> Self {
        Robot { start, returns: false }
    }

    pub fn returning(start: Vertex) -> Self {
        Robot { start, returns: true }
    }
}

pub fn fleet(starts: &[Vertex]) -> Vec<Robot> {
    starts.iter().map(|&s| Robot::at(s)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleSolution {
    pub cost: usize,
    pub strategy: Option<Strategy>,
}

#[derive(Debug, Clone, Copy)]
pub struct Oracle {
    pub max_states: usize,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle { max_states: DEFAULT_MAX_STATES }
    }
}

impl Oracle {
    pub fn with_max_states(max_states: usize) -> Self {
        Oracle { max_states }
    }

    /// Optimal cost of a covering strategy for `robots`. With `rendezvous`
    /// set to `p`, all robots must share a vertex at least every `p` steps and
    /// at the end.
    pub fn solve(
        &self,
        tree: &Tree,
        robots: &[Robot],
        objective: Objective,
        rendezvous: Option<usize>,
    ) -> Result<usize> {
        Ok(self.run(tree, robots, objective, rendezvous, false)?.cost)
    }

    /// Like [`Oracle::solve`] but also rebuilds an optimal strategy.
    pub fn solve_with_witness(
        &self,
        tree: &Tree,
        robots: &[Robot],
        objective: Objective,
        rendezvous: Option<usize>,
    ) -> Result<OracleSolution> {
        self.run(tree, robots, objective, rendezvous, true)
    }

    fn run(
        &self,
        tree: &Tree,
        robots: &[Robot],
        objective: Objective,
        rendezvous: Option<usize>,
        witness: bool,
    ) -> Result<OracleSolution> {
        if tree.len() > MAX_VERTICES {
            return Err(Error::ResourceLimit(format!(
                "oracle supports at most {MAX_VERTICES} vertices, got {}",
                tree.len()
            )));
        }
        if robots.is_empty() {
            return Err(invalid("at least one robot is required"));
        }
        if robots.len() > MAX_ROBOTS {
            return Err(Error::ResourceLimit(format!(
                "oracle supports at most {MAX_ROBOTS} robots, got {}",
                robots.len()
            )));
        }
        if let Some(r) = robots.iter().find(|r| !tree.contains(r.start)) {
            return Err(invalid(format!("start vertex {} out of range", r.start)));
        }
        if rendezvous == Some(0) {
            return Err(invalid("rendezvous period must be positive"));
        }
        let search = Search::new(tree, robots, objective, rendezvous, self.max_states);
        match search.run(robots, witness)? {
            Some((cost, strategy)) => Ok(OracleSolution { cost, strategy }),
            None => Err(Error::Precondition(
                "no covering strategy satisfies the rendezvous constraint".into(),
            )),
        }
    }
}

/// Minimum cover time for robots at `starts`.
pub fn oracle_time(tree: &Tree, starts: &[Vertex], rendezvous: Option<usize>) -> Result<usize> {
    Oracle::default().solve(tree, &fleet(starts), Objective::Time, rendezvous)
}

/// Minimum cover length for robots at `starts`.
pub fn oracle_length(tree: &Tree, starts: &[Vertex], rendezvous: Option<usize>) -> Result<usize> {
    Oracle::default().solve(tree, &fleet(starts), Objective::Length, rendezvous)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn time_examples() {
        let star = Tree::star(3);
        assert_eq!(oracle_time(&star, &[0], None).unwrap(), 5);
        assert_eq!(oracle_time(&star, &[0, 0, 0], None).unwrap(), 1);
        assert_eq!(oracle_time(&Tree::path(3), &[1], None).unwrap(), 3);
    }

    #[test]
    fn length_examples() {
        let star = Tree::star(3);
        assert_eq!(oracle_length(&star, &[0, 0], None).unwrap(), 4);
        assert_eq!(oracle_length(&Tree::path(3), &[0, 2], None).unwrap(), 1);
        assert_eq!(oracle_length(&Tree::single(), &[0, 0, 0], None).unwrap(), 0);
    }

    #[test]
    fn rendezvous_variants() {
        let star = Tree::star(3);
        // Two robots at the centre meeting every 2 steps. Every leaf costs two
        // moves whether it is a round trip or the shared final vertex.
        assert_eq!(oracle_length(&star, &[0, 0], Some(2)).unwrap(), 6);
        // out to leaves 1 and 2, back together, then both step to leaf 3
        assert_eq!(oracle_time(&star, &[0, 0], Some(2)).unwrap(), 3);
        // k = 1 is unconstrained
        assert_eq!(oracle_length(&star, &[0], Some(8)).unwrap(), 5);
        // both step to the middle at once
        assert_eq!(oracle_length(&Tree::path(3), &[0, 2], Some(1)).unwrap(), 2);
        // too far apart to meet after one step
        assert!(matches!(
            oracle_length(&Tree::path(4), &[0, 3], Some(1)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn returning_robot() {
        let p3 = Tree::path(3);
        let robots = [Robot::returning(0), Robot::at(2)];
        assert_eq!(Oracle::default().solve(&p3, &robots, Objective::Length, None).unwrap(), 1);
        // a leaf hanging off the returning robot's start must be toured
        let t = Tree::new(4, &[(0, 3), (0, 1), (1, 2)]).unwrap();
        let free = Oracle::default().solve(&t, &fleet(&[0, 2]), Objective::Length, None).unwrap();
        let anchored = Oracle::default()
            .solve(&t, &[Robot::returning(0), Robot::at(2)], Objective::Length, None)
            .unwrap();
        assert_eq!((free, anchored), (2, 3));
    }

    #[test]
    fn witnesses_attain_the_optimum() {
        let t = Tree::new(6, &[(0, 1), (1, 2), (1, 3), (3, 4), (0, 5)]).unwrap();
        let oracle = Oracle::default();
        for (objective, p) in [
            (Objective::Length, None),
            (Objective::Time, None),
            (Objective::Length, Some(3)),
            (Objective::Time, Some(3)),
        ] {
            let robots = [Robot::at(1), Robot::at(1), Robot::returning(5)];
            let sol = oracle.solve_with_witness(&t, &robots, objective, p).unwrap();
            let s = sol.strategy.unwrap();
            s.validate(&t).unwrap();
            assert!(s.is_covering(&t).unwrap());
            assert_eq!(s.starts(), vec![1, 1, 5]);
            assert_eq!(s.walks()[2].end(), 5);
            let measured = match objective {
                Objective::Length => s.length(),
                Objective::Time => s.time(),
            };
            assert_eq!(measured, sol.cost, "{objective:?} {p:?}");
            if let Some(p) = p {
                assert!(s.rendezvous_ok(p));
            }
        }
    }

    #[test]
    fn state_limit_is_an_error() {
        let t = Tree::star(7);
        let err = Oracle::with_max_states(10).solve(&t, &fleet(&[0, 0]), Objective::Time, None);
        assert_eq!(err, Err(Error::ResourceLimit("search exceeded 10 states".into())));
        assert!(matches!(
            oracle_length(&Tree::path(65), &[0], None),
            Err(Error::ResourceLimit(_))
        ));
        assert!(matches!(oracle_length(&Tree::path(2), &[0; 11], None), Err(Error::ResourceLimit(_))));
        assert!(matches!(oracle_length(&Tree::path(2), &[], None), Err(Error::InvalidInput(_))));
    }
}
