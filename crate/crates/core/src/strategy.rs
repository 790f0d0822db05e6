//! Walks, strategies and their cost measures.
//!
//! A walk is the vertex sequence a robot occupies at times `0, 1, 2, ...`.
//! Consecutive entries are either adjacent (a move) or equal (a stay). A robot
//! that has finished its walk keeps occupying the last vertex.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::tree::{is_simple_path, Tree, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Walk(Vec<Vertex>);

impl Walk {
    /// Panics if `vertices` is empty.
    pub fn new(vertices: Vec<Vertex>) -> Self {
        assert!(!vertices.is_empty(), "a walk visits at least one vertex");
        Walk(vertices)
    }

    pub fn stay(v: Vertex) -> Self {
        Walk(vec![v])
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.0
    }

    pub fn start(&self) -> Vertex {
        self.0[0]
    }

    pub fn end(&self) -> Vertex {
        *self.0.last().unwrap()
    }

    /// Number of steps, `m - 1` for `m` entries.
    pub fn time(&self) -> usize {
        self.0.len() - 1
    }

    /// Number of steps that change position.
    pub fn length(&self) -> usize {
        self.0.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// Position at time `t`, holding the final vertex once the walk is over.
    pub fn at(&self, t: usize) -> Vertex {
        self.0[t.min(self.0.len() - 1)]
    }

    pub fn push(&mut self, v: Vertex) {
        self.0.push(v);
    }

    /// Pads with stay moves up to the given time.
    pub fn pad_to(&mut self, time: usize) {
        let last = self.end();
        while self.time() < time {
            self.0.push(last);
        }
    }

    pub fn validate(&self, tree: &Tree) -> Result<()> {
        if let Some(&v) = self.0.iter().find(|&&v| !tree.contains(v)) {
            return Err(invalid(format!(
                "vertex {v} out of range for a tree on {} vertices",
                tree.len()
            )));
        }
        if let Some(i) = self
            .0
            .windows(2)
            .position(|w| w[0] != w[1] && !tree.has_edge(w[0], w[1]))
        {
            return Err(invalid(format!(
                "step {} moves {} -> {} along a non-edge",
                i + 1,
                self.0[i],
                self.0[i + 1]
            )));
        }
        Ok(())
    }
}

impl From<Vec<Vertex>> for Walk {
    fn from(v: Vec<Vertex>) -> Self {
        Walk::new(v)
    }
}

impl fmt::Display for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// One walk per robot; robot `i` starts at the first vertex of walk `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Strategy {
    walks: Vec<Walk>,
}

impl Strategy {
    /// Panics on an empty walk list.
    pub fn new(walks: Vec<Walk>) -> Self {
        assert!(!walks.is_empty(), "a strategy needs at least one robot");
        Strategy { walks }
    }

    pub fn from_sequences<I, W>(walks: I) -> Self
    where
        I: IntoIterator<Item = W>,
        W: Into<Vec<Vertex>>,
    {
        Strategy::new(walks.into_iter().map(|w| Walk::new(w.into())).collect())
    }

    pub fn walks(&self) -> &[Walk] {
        &self.walks
    }

    pub fn robots(&self) -> usize {
        self.walks.len()
    }

    pub fn starts(&self) -> Vec<Vertex> {
        self.walks.iter().map(Walk::start).collect()
    }

    /// Cover time: the longest walk time.
    pub fn time(&self) -> usize {
        self.walks.iter().map(Walk::time).max().unwrap_or(0)
    }

    /// Cover length: total number of moves.
    pub fn length(&self) -> usize {
        self.walks.iter().map(Walk::length).sum()
    }

    pub fn validate(&self, tree: &Tree) -> Result<()> {
        for (i, w) in self.walks.iter().enumerate() {
            w.validate(tree)
                .map_err(|e| invalid(format!("walk {i}: {}", strip_prefix(&e))))?;
        }
        Ok(())
    }

    /// Vertices no walk visits, ascending.
    pub fn uncovered(&self, tree: &Tree) -> Result<Vec<Vertex>> {
        let mut seen = vec![false; tree.len()];
        for (i, w) in self.walks.iter().enumerate() {
            for &v in w.vertices() {
                if !tree.contains(v) {
                    return Err(invalid(format!(
                        "walk {i} visits vertex {v}, out of range for {} vertices",
                        tree.len()
                    )));
                }
                seen[v] = true;
            }
        }
        Ok((0..tree.len()).filter(|&v| !seen[v]).collect())
    }

    pub fn is_covering(&self, tree: &Tree) -> Result<bool> {
        Ok(self.uncovered(tree)?.is_empty())
    }

    /// Finds the first breach of the rendezvous rule with period `p`; `None`
    /// when the rule holds.
    ///
    /// Walks are padded with their final vertex. Time 0 counts as a meeting
    /// when all robots start together; otherwise the first meeting must happen
    /// by time `p`. The final time step must be a meeting.
    pub fn rendezvous_violation(&self, p: usize) -> Option<RendezvousViolation> {
        let horizon = self.time();
        let mut last_meet = 0;
        for t in 0..=horizon {
            let here = self.walks[0].at(t);
            let met = self.walks.iter().all(|w| w.at(t) == here);
            if met {
                last_meet = t;
            } else if t - last_meet >= p {
                return Some(RendezvousViolation::Gap {
                    since: last_meet,
                    step: t,
                });
            }
        }
        if last_meet != horizon {
            return Some(RendezvousViolation::NoFinalMeeting { step: horizon });
        }
        None
    }

    pub fn rendezvous_ok(&self, p: usize) -> bool {
        self.rendezvous_violation(p).is_none()
    }
}

fn strip_prefix(e: &Error) -> String {
    match e {
        Error::InvalidInput(m) => m.clone(),
        other => other.to_string(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RendezvousViolation {
    /// The robots were apart at every time in `since..=step` and the gap
    /// reached `p`.
    Gap { since: usize, step: usize },
    /// The robots do not share a vertex at the last time step.
    NoFinalMeeting { step: usize },
}

impl fmt::Display for RendezvousViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RendezvousViolation::Gap { since, step } => write!(
                f,
                "no meeting at step {step}: last meeting at step {since}"
            ),
            RendezvousViolation::NoFinalMeeting { step } => {
                write!(f, "robots are not together at the final step {step}")
            }
        }
    }
}

/// A tuple of simple paths, one per robot.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PathTuple {
    paths: Vec<Vec<Vertex>>,
}

impl PathTuple {
    pub fn new(tree: &Tree, paths: Vec<Vec<Vertex>>) -> Result<Self> {
        for (i, p) in paths.iter().enumerate() {
            if !is_simple_path(tree, p) {
                return Err(invalid(format!("path {i} {p:?} is not a simple path")));
            }
        }
        Ok(PathTuple { paths })
    }

    pub(crate) fn new_unchecked(paths: Vec<Vec<Vertex>>) -> Self {
        PathTuple { paths }
    }

    pub fn paths(&self) -> &[Vec<Vertex>] {
        &self.paths
    }

    pub fn len(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    /// Total number of path edges.
    pub fn total_length(&self) -> usize {
        self.paths.iter().map(|p| p.len() - 1).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(walks: &[&[Vertex]]) -> Strategy {
        Strategy::from_sequences(walks.iter().map(|w| w.to_vec()))
    }

    #[test]
    fn walk_measures() {
        assert_eq!(Walk::stay(0).time(), 0);
        assert_eq!(Walk::new(vec![0, 1, 1, 2]).time(), 3);
        assert_eq!(Walk::new(vec![0, 1, 0, 1]).time(), 3);
        assert_eq!(Walk::stay(0).length(), 0);
        assert_eq!(Walk::new(vec![0, 1, 1, 2]).length(), 2);
        assert_eq!(Walk::new(vec![0, 0, 0]).length(), 0);
    }

    #[test]
    fn strategy_measures() {
        assert_eq!(s(&[&[0, 1], &[0, 0, 0]]).time(), 2);
        assert_eq!(s(&[&[0], &[0]]).time(), 0);
        assert_eq!(s(&[&[0, 1, 2], &[0, 1]]).time(), 2);
        assert_eq!(s(&[&[0, 1], &[0, 0, 0]]).length(), 1);
        assert_eq!(s(&[&[0], &[0]]).length(), 0);
        assert_eq!(s(&[&[0, 1, 0], &[0, 2]]).length(), 3);
    }

    #[test]
    fn covering() {
        let star = Tree::star(3);
        assert!(s(&[&[0, 1, 0, 2, 0, 3]]).is_covering(&star).unwrap());
        assert!(!s(&[&[0, 1]]).is_covering(&star).unwrap());
        assert_eq!(s(&[&[0, 1]]).uncovered(&star).unwrap(), vec![2, 3]);
        assert!(s(&[&[0, 1], &[2]]).is_covering(&Tree::path(3)).unwrap());
        assert!(matches!(
            s(&[&[0, 7]]).is_covering(&star),
            Err(Error::InvalidInput(_))
        ));
        assert!(s(&[&[0], &[0, 0]]).is_covering(&Tree::single()).unwrap());
    }

    #[test]
    fn rendezvous() {
        assert!(s(&[&[0, 1, 0], &[0, 0, 0]]).rendezvous_ok(2));
        assert_eq!(
            s(&[&[0, 1, 0], &[0, 0, 0]]).rendezvous_violation(1),
            Some(RendezvousViolation::Gap { since: 0, step: 1 })
        );
        assert_eq!(
            s(&[&[0, 1], &[0, 2]]).rendezvous_violation(5),
            Some(RendezvousViolation::NoFinalMeeting { step: 1 })
        );
        // distinct starts must meet within p steps
        assert!(s(&[&[0, 1], &[2, 1]]).rendezvous_ok(1));
        assert!(!s(&[&[0, 1, 1], &[2, 2, 1]]).rendezvous_ok(1));
        assert!(s(&[&[0, 1, 1], &[2, 2, 1]]).rendezvous_ok(2));
        // padding: robot 1 stops at 0 and waits
        assert!(s(&[&[0, 1, 0, 1, 0], &[0]]).rendezvous_ok(2));
        assert!(s(&[&[3, 4, 5]]).rendezvous_ok(1));
    }

    #[test]
    fn walk_validation() {
        let t = Tree::path(3);
        assert!(Walk::new(vec![0, 1, 1, 2, 1]).validate(&t).is_ok());
        assert!(Walk::new(vec![0, 2]).validate(&t).is_err());
        assert!(Walk::new(vec![0, 3]).validate(&t).is_err());
        assert!(s(&[&[0, 1], &[2, 0]]).validate(&t).is_err());
    }

    #[test]
    fn path_tuple_validation() {
        let t = Tree::star(3);
        assert!(PathTuple::new(&t, vec![vec![1, 0, 2], vec![3]]).is_ok());
        assert!(PathTuple::new(&t, vec![vec![1, 0, 1]]).is_err());
        assert!(PathTuple::new(&t, vec![vec![]]).is_err());
    }
}
