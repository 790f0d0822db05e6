use crate::dp::{ending_at, OneSourceTable};
use crate::error::{invalid, Result};
use crate::strategy::PathTuple;
use crate::tree::{Tree, Vertex};

/// Costs for covering growing prefixes of a `u`-`v` path.
///
/// With `gamma = (x_0 = u, ..., x_{m-1} = v)` and `T_i` the component hanging
/// off `x_i` once the path edges are removed, prefix `i` is `x_0..=x_i` together
/// with `T_0..=T_i`. Entry `(i, r, j)` is the least cost of covering prefix `i`
/// with `r` robots from `u` of which at least `j` end at `x_i`. Entry
/// `(i, 0, 0)` is the cost of a single closed tour from `u`.
#[derive(Debug, Clone)]
pub(crate) struct DestTable {
    k: usize,
    cost: Vec<usize>,
    choice: Vec<u32>,
}

impl DestTable {
    /// `forest` must hold the components of `gamma` with at least `k` robots.
    pub(crate) fn build(gamma: &[Vertex], k: usize, forest: &OneSourceTable) -> Self {
        let m = gamma.len();
        let w = k + 1;
        let mut t = DestTable { k, cost: vec![0; m * w * w], choice: vec![0; m * w * w] };
        let x0 = gamma[0];
        for r in 0..=k {
            for j in 0..=r {
                let (best, pick) = (j..=r)
                    .map(|l| (forest.cost(x0, r - l), l))
                    .min_by_key(|&(c, _)| c)
                    .unwrap();
                t.set(0, r, j, best, pick);
            }
        }
        for (i, &x) in gamma.iter().enumerate().skip(1) {
            for r in 0..=k {
                let mut best = t.cost(i - 1, r, 0) + forest.cost(x, 0) + 2;
                let mut pick = 0;
                for l in 1..=r {
                    let cand = t.cost(i - 1, r, l) + forest.cost(x, l) + l;
                    if cand < best {
                        best = cand;
                        pick = l;
                    }
                }
                t.set(i, r, 0, best, pick);
                for j in 1..=r {
                    let (best, pick) = (j..=r)
                        .map(|l| (t.cost(i - 1, r, l) + forest.cost(x, l - j) + l, l))
                        .min_by_key(|&(c, _)| c)
                        .unwrap();
                    t.set(i, r, j, best, pick);
                }
            }
        }
        t
    }

    #[inline]
    fn index(&self, i: usize, r: usize, j: usize) -> usize {
        (i * (self.k + 1) + r) * (self.k + 1) + j
    }

    fn set(&mut self, i: usize, r: usize, j: usize, cost: usize, pick: usize) {
        let at = self.index(i, r, j);
        self.cost[at] = cost;
        self.choice[at] = pick as u32;
    }

    pub(crate) fn cost(&self, i: usize, r: usize, j: usize) -> usize {
        debug_assert!(j <= r && r <= self.k);
        self.cost[self.index(i, r, j)]
    }

    /// Rebuilds the `r` paths behind entry `(i, r, j)`; empty for `r = 0`.
    pub(crate) fn paths(
        &self,
        gamma: &[Vertex],
        forest: &OneSourceTable,
        i: usize,
        r: usize,
        j: usize,
    ) -> Vec<Vec<Vertex>> {
        // required enders at each prefix, walking back from i
        let mut need = vec![0; i + 1];
        need[i] = j;
        for level in (1..=i).rev() {
            need[level - 1] = self.choice[self.index(level, r, need[level])] as usize;
        }
        let mut paths = vec![vec![gamma[0]]; r];
        let stay = self.choice[self.index(0, r, need[0])] as usize;
        forest.extend_paths(gamma[0], (stay..r).collect(), &mut paths);
        for level in 1..=i {
            let crossing = need[level - 1];
            let x = gamma[level];
            let mut ids = ending_at(&paths, gamma[level - 1], crossing);
            for &id in &ids {
                paths[id].push(x);
            }
            let go = ids.split_off(need[level]);
            forest.extend_paths(x, go, &mut paths);
        }
        paths
    }
}

/// The destination-path table for robots starting at `u` and heading along
/// the path towards `v`.
#[derive(Debug, Clone)]
pub struct DestinationPath {
    gamma: Vec<Vertex>,
    components: Vec<Vec<Vertex>>,
    forest: OneSourceTable,
    table: DestTable,
}

impl DestinationPath {
    pub fn solve(tree: &Tree, u: Vertex, v: Vertex, k: usize) -> Result<Self> {
        check_pair(tree, u, v)?;
        let gamma = tree.path_between(u, v);
        let components = tree
            .split_along_path(&gamma)
            .into_iter()
            .map(|c| c.vertices)
            .collect();
        let forest = OneSourceTable::for_forest(tree, &gamma, k);
        let table = DestTable::build(&gamma, k, &forest);
        Ok(DestinationPath { gamma, components, forest, table })
    }

    pub fn gamma(&self) -> &[Vertex] {
        &self.gamma
    }

    pub fn max_robots(&self) -> usize {
        self.table.k
    }

    /// Vertices of prefix `i`, ascending.
    pub fn prefix_vertices(&self, i: usize) -> Vec<Vertex> {
        let mut vs: Vec<_> = self.components[..=i].iter().flatten().copied().collect();
        vs.sort_unstable();
        vs
    }

    /// Entry `(i, r, j)`; `None` when out of range or `j > r`.
    pub fn cost(&self, i: usize, r: usize, j: usize) -> Option<usize> {
        (i < self.gamma.len() && j <= r && r <= self.table.k).then(|| self.table.cost(i, r, j))
    }

    /// Paths attaining entry `(i, r, j)`. For `r = 0` this is the single-vertex
    /// path of the closed-tour robot at `u`.
    pub fn paths(&self, i: usize, r: usize, j: usize) -> PathTuple {
        assert!(self.cost(i, r, j).is_some(), "entry ({i}, {r}, {j}) out of range");
        if r == 0 {
            return PathTuple::new_unchecked(vec![vec![self.gamma[0]]]);
        }
        PathTuple::new_unchecked(self.table.paths(&self.gamma, &self.forest, i, r, j))
    }
}

pub fn destination_path(tree: &Tree, u: Vertex, v: Vertex, k: usize) -> Result<DestinationPath> {
    DestinationPath::solve(tree, u, v, k)
}

pub(crate) fn check_pair(tree: &Tree, u: Vertex, v: Vertex) -> Result<()> {
    for x in [u, v] {
        if !tree.contains(x) {
            return Err(invalid(format!(
                "vertex {x} out of range for {} vertices",
                tree.len()
            )));
        }
    }
    if u == v {
        return Err(invalid("the two start vertices must differ; use the one-source solver"));
    }
    Ok(())
}
