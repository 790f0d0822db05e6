//! Unit-length undirected trees over dense vertex ids `0..n`.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::TreeError;

pub type Vertex = usize;

/// An undirected edge, always stored with the smaller endpoint first.
pub type Edge = (Vertex, Vertex);

#[inline]
pub fn edge(u: Vertex, v: Vertex) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}

/// A tree with sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Tree {
    adj: Vec<Vec<Vertex>>,
}

impl Tree {
    pub fn new(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Self, TreeError> {
        if n == 0 {
            return Err(TreeError::Empty);
        }
        if edges.len() != n - 1 {
            return Err(TreeError::EdgeCount { n, got: edges.len() });
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(TreeError::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(TreeError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = edge(u, w[0]);
                return Err(TreeError::DuplicateEdge(a, b));
            }
        }
        let tree = Tree { adj };
        // n - 1 edges and connected implies acyclic.
        let dist = tree.distances(0);
        if let Some(v) = dist.iter().position(|d| *d == usize::MAX) {
            return Err(TreeError::Disconnected(v));
        }
        Ok(tree)
    }

    pub fn single() -> Self {
        Tree { adj: vec![Vec::new()] }
    }

    /// The path `0 - 1 - ... - (n-1)`.
    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Tree::new(n, &edges).expect("path is a tree")
    }

    /// Vertex 0 joined to `leaves` leaves `1..=leaves`.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        Tree::new(leaves + 1, &edges).expect("star is a tree")
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.adj.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn edge_count(&self) -> usize {
        self.adj.len() - 1
    }

    #[inline]
    pub fn contains(&self, v: Vertex) -> bool {
        v < self.adj.len()
    }

    #[inline]
    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.contains(u) && self.contains(v) && self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = Edge> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn leaves(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.len()).filter(|&v| self.degree(v) <= 1)
    }

    /// BFS distances from `from`; unreachable vertices get `usize::MAX`.
    pub fn distances(&self, from: Vertex) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.len()];
        let mut queue = VecDeque::from([from]);
        dist[from] = 0;
        while let Some(v) = queue.pop_front() {
            for &w in &self.adj[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Largest distance from `u` to any vertex.
    pub fn eccentricity(&self, u: Vertex) -> usize {
        self.distances(u).into_iter().max().unwrap_or(0)
    }

    /// Parent of every vertex when the tree hangs from `root` (`None` at the root).
    pub fn parents(&self, root: Vertex) -> Vec<Option<Vertex>> {
        let mut parent = vec![None; self.len()];
        let mut seen = vec![false; self.len()];
        let mut stack = vec![root];
        seen[root] = true;
        while let Some(v) = stack.pop() {
            for &w in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(v);
                    stack.push(w);
                }
            }
        }
        parent
    }

    /// The unique simple path from `u` to `v`, both ends included.
    pub fn path_between(&self, u: Vertex, v: Vertex) -> Vec<Vertex> {
        let parent = self.parents(v);
        let mut path = vec![u];
        let mut x = u;
        while let Some(p) = parent[x] {
            path.push(p);
            x = p;
        }
        path
    }

    /// Removes the edges of the path `gamma` and returns the resulting components,
    /// one per path vertex and in path order. Component `i` is rooted at `gamma[i]`.
    pub fn split_along_path(&self, gamma: &[Vertex]) -> Vec<Component> {
        let mut on_path = vec![false; self.len()];
        for &x in gamma {
            on_path[x] = true;
        }
        gamma
            .iter()
            .map(|&root| {
                let mut vertices = vec![root];
                let mut stack = vec![(root, usize::MAX)];
                while let Some((v, from)) = stack.pop() {
                    for &w in &self.adj[v] {
                        if w != from && !on_path[w] {
                            vertices.push(w);
                            stack.push((w, v));
                        }
                    }
                }
                vertices.sort_unstable();
                Component { root, vertices }
            })
            .collect()
    }
}

/// A rooted connected piece of a tree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub root: Vertex,
    /// Sorted ascending.
    pub vertices: Vec<Vertex>,
}

impl Component {
    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }
}

/// Is `seq` a simple path in `tree`?
pub fn is_simple_path(tree: &Tree, seq: &[Vertex]) -> bool {
    if seq.is_empty() || seq.iter().any(|&v| !tree.contains(v)) {
        return false;
    }
    let mut seen = vec![false; tree.len()];
    for &v in seq {
        if std::mem::replace(&mut seen[v], true) {
            return false;
        }
    }
    seq.windows(2).all(|w| tree.has_edge(w[0], w[1]))
}
