//! Structure of minimum-length strategies.
//!
//! Every edge a walk uses is either on the path from its start to its end
//! (crossed an odd number of times) or part of a detour forest (crossed an even
//! number of times). For optimal strategies the path edges are crossed once,
//! forest edges twice by a single robot, and the total length depends only on
//! the paths: `sum |P_i| + 2 * |V \ union V(P_i)|`. This module decomposes walks,
//! checks those structural properties, evaluates the path cost and rebuilds a
//! covering strategy from a path tuple.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::error::{Error, Result};
use crate::strategy::{PathTuple, Strategy, Walk};
use crate::tree::{edge, Edge, Tree, Vertex};

/// Edge usage of a single walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkDecomposition {
    /// Vertices of the path from the walk's start to its end.
    pub path: Vec<Vertex>,
    /// Edges crossed an odd number of times.
    pub path_edges: BTreeSet<Edge>,
    /// Edges crossed an even, nonzero number of times.
    pub forest_edges: BTreeSet<Edge>,
    pub traversal_counts: BTreeMap<Edge, usize>,
}

impl WalkDecomposition {
    pub fn forest_vertices(&self) -> BTreeSet<Vertex> {
        self.forest_edges.iter().flat_map(|&(a, b)| [a, b]).collect()
    }
}

pub fn decompose_walk(tree: &Tree, walk: &Walk) -> WalkDecomposition {
    let mut counts = BTreeMap::new();
    for w in walk.vertices().windows(2) {
        if w[0] != w[1] {
            *counts.entry(edge(w[0], w[1])).or_insert(0) += 1;
        }
    }
    let (odd, even): (Vec<_>, Vec<_>) = counts.iter().partition(|(_, &c)| c % 2 == 1);
    WalkDecomposition {
        // In a tree the odd edges are exactly the start-to-end path.
        path: tree.path_between(walk.start(), walk.end()),
        path_edges: odd.into_iter().map(|(&e, _)| e).collect(),
        forest_edges: even.into_iter().map(|(&e, _)| e).collect(),
        traversal_counts: counts,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StructureViolation {
    PathEdgeCount { robot: usize, edge: Edge, count: usize },
    ForestEdgeCount { robot: usize, edge: Edge, count: usize },
    ForestEdgeShared { robot: usize, other: usize, edge: Edge },
    ComponentAnchors { robot: usize, component: Vec<Vertex>, anchors: Vec<Vertex> },
    ForestOverlap { robots: (usize, usize), vertex: Vertex },
}

impl fmt::Display for StructureViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use StructureViolation::*;
        match self {
            PathEdgeCount { robot, edge, count } => write!(
                f,
                "robot {robot} crosses path edge {}-{} {count} times",
                edge.0, edge.1
            ),
            ForestEdgeCount { robot, edge, count } => write!(
                f,
                "robot {robot} crosses forest edge {}-{} {count} times",
                edge.0, edge.1
            ),
            ForestEdgeShared { robot, other, edge } => write!(
                f,
                "forest edge {}-{} of robot {robot} is also used by robot {other}",
                edge.0, edge.1
            ),
            ComponentAnchors { robot, component, anchors } => write!(
                f,
                "forest component {component:?} of robot {robot} touches path vertices {anchors:?}"
            ),
            ForestOverlap { robots, vertex } => write!(
                f,
                "forests of robots {} and {} share vertex {vertex} off every path",
                robots.0, robots.1
            ),
        }
    }
}

/// Outcome of the four structural checks; an empty list means the check passed.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct StructureReport {
    /// Path edges are crossed exactly once by their robot.
    pub path_once: Vec<StructureViolation>,
    /// Forest edges are crossed exactly twice, and only by their robot.
    pub forest_twice: Vec<StructureViolation>,
    /// Each forest component touches the union of path vertices exactly once.
    pub single_anchor: Vec<StructureViolation>,
    /// Forests of different robots meet only on path vertices.
    pub disjoint_forests: Vec<StructureViolation>,
}

impl StructureReport {
    pub fn passes(&self) -> bool {
        self.checks().iter().all(|(_, v)| v.is_empty())
    }

    pub fn checks(&self) -> [(&'static str, &[StructureViolation]); 4] {
        [
            ("path-once", &self.path_once),
            ("forest-twice", &self.forest_twice),
            ("single-anchor", &self.single_anchor),
            ("disjoint-forests", &self.disjoint_forests),
        ]
    }
}

/// Checks the structural properties every minimum-length covering strategy has.
/// Passing does not certify optimality.
pub fn verify_structure(tree: &Tree, s: &Strategy) -> Result<StructureReport> {
    s.validate(tree)?;
    let missing = s.uncovered(tree)?;
    if !missing.is_empty() {
        return Err(Error::Precondition(format!(
            "strategy does not cover vertices {missing:?}"
        )));
    }
    let parts: Vec<_> = s.walks().iter().map(|w| decompose_walk(tree, w)).collect();
    let mut on_path = vec![false; tree.len()];
    for d in &parts {
        for &v in &d.path {
            on_path[v] = true;
        }
    }

    let mut report = StructureReport::default();
    for (i, d) in parts.iter().enumerate() {
        for e in &d.path_edges {
            let count = d.traversal_counts[e];
            if count != 1 {
                report
                    .path_once
                    .push(StructureViolation::PathEdgeCount { robot: i, edge: *e, count });
            }
        }
        for e in &d.forest_edges {
            let count = d.traversal_counts[e];
            if count != 2 {
                report
                    .forest_twice
                    .push(StructureViolation::ForestEdgeCount { robot: i, edge: *e, count });
            }
            for (j, other) in parts.iter().enumerate() {
                if j != i && other.traversal_counts.contains_key(e) {
                    report.forest_twice.push(StructureViolation::ForestEdgeShared {
                        robot: i,
                        other: j,
                        edge: *e,
                    });
                }
            }
        }
        for component in edge_components(&d.forest_edges) {
            let anchors: Vec<_> = component.iter().copied().filter(|&v| on_path[v]).collect();
            if anchors.len() != 1 {
                report.single_anchor.push(StructureViolation::ComponentAnchors {
                    robot: i,
                    component,
                    anchors,
                });
            }
        }
    }

    let forest_vertices: Vec<_> = parts.iter().map(WalkDecomposition::forest_vertices).collect();
    for j in 0..parts.len() {
        for l in j + 1..parts.len() {
            for &v in forest_vertices[j].intersection(&forest_vertices[l]) {
                if !on_path[v] {
                    report.disjoint_forests.push(StructureViolation::ForestOverlap {
                        robots: (j, l),
                        vertex: v,
                    });
                }
            }
        }
    }
    Ok(report)
}

/// Vertex sets of the connected components spanned by an edge set.
fn edge_components(edges: &BTreeSet<Edge>) -> Vec<Vec<Vertex>> {
    let mut adj: BTreeMap<Vertex, Vec<Vertex>> = BTreeMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &start in adj.keys() {
        if !seen.insert(start) {
            continue;
        }
        let mut comp = vec![start];
        let mut stack = vec![start];
        while let Some(v) = stack.pop() {
            for &w in &adj[&v] {
                if seen.insert(w) {
                    comp.push(w);
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

/// `sum |P_i| + 2 * |V \ union V(P_i)|`.
pub fn cost_of_paths(tree: &Tree, paths: &PathTuple) -> usize {
    let mut on_path = vec![false; tree.len()];
    for p in paths.paths() {
        for &v in p {
            on_path[v] = true;
        }
    }
    let uncovered = on_path.iter().filter(|&&c| !c).count();
    paths.total_length() + 2 * uncovered
}

/// Builds a covering strategy in which robot `i` follows path `i` and, at each
/// path vertex `v`, tours the part of the tree hanging off `v` that contains no
/// path vertex and nothing an earlier robot already visited. Children are
/// toured in ascending id order.
///
/// The result's length equals [`cost_of_paths`] and it passes
/// [`verify_structure`].
pub fn strategy_from_paths(tree: &Tree, paths: &PathTuple) -> Strategy {
    let mut blocked = vec![false; tree.len()];
    for p in paths.paths() {
        for &v in p {
            blocked[v] = true;
        }
    }
    let walks = paths
        .paths()
        .iter()
        .map(|p| {
            let mut walk = Vec::with_capacity(p.len());
            for &v in p {
                walk.push(v);
                tour_hanging(tree, v, &mut blocked, &mut walk);
            }
            Walk::new(walk)
        })
        .collect();
    Strategy::new(walks)
}

/// Appends a depth-first tour from `root` over unblocked vertices, returning to
/// `root`. Visited vertices become blocked.
fn tour_hanging(tree: &Tree, root: Vertex, blocked: &mut [bool], walk: &mut Vec<Vertex>) {
    let mut stack = vec![(root, 0usize)];
    while let Some(top) = stack.last_mut() {
        let (x, next) = *top;
        let nbrs = tree.neighbors(x);
        if next < nbrs.len() {
            top.1 += 1;
            let w = nbrs[next];
            if !blocked[w] {
                blocked[w] = true;
                walk.push(w);
                stack.push((w, 0));
            }
        } else {
            stack.pop();
            if let Some(&(parent, _)) = stack.last() {
                walk.push(parent);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectionConflict {
    pub edge: Edge,
    /// Robots crossing from the smaller to the larger endpoint.
    pub forward: Vec<usize>,
    /// Robots crossing from the larger to the smaller endpoint.
    pub backward: Vec<usize>,
}

impl fmt::Display for DirectionConflict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = self.edge;
        write!(
            f,
            "edge {a}-{b}: robots {:?} cross {a}->{b}, robots {:?} cross {b}->{a}",
            self.forward, self.backward
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DirectionReport {
    /// Number of edges used by two or more robots.
    pub shared_edges: usize,
    pub conflicts: Vec<DirectionConflict>,
}

impl DirectionReport {
    pub fn passes(&self) -> bool {
        self.conflicts.is_empty()
    }
}

/// For each edge used by at least two robots, checks that every crossing goes
/// the same way.
pub fn check_edge_directions(s: &Strategy) -> DirectionReport {
    let mut usage: BTreeMap<Edge, (BTreeSet<usize>, BTreeSet<usize>)> = BTreeMap::new();
    for (i, w) in s.walks().iter().enumerate() {
        for step in w.vertices().windows(2) {
            let (a, b) = (step[0], step[1]);
            if a == b {
                continue;
            }
            let entry = usage.entry(edge(a, b)).or_default();
            if a < b {
                entry.0.insert(i);
            } else {
                entry.1.insert(i);
            }
        }
    }
    let mut report = DirectionReport::default();
    for (e, (fwd, bwd)) in usage {
        let robots: BTreeSet<_> = fwd.union(&bwd).collect();
        if robots.len() < 2 {
            continue;
        }
        report.shared_edges += 1;
        if !fwd.is_empty() && !bwd.is_empty() {
            report.conflicts.push(DirectionConflict {
                edge: e,
                forward: fwd.into_iter().collect(),
                backward: bwd.into_iter().collect(),
            });
        }
    }
    report
}
