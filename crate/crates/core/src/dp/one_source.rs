use crate::dp::DpSolution;
use crate::error::{invalid, Result};
use crate::strategy::PathTuple;
use crate::tree::{Tree, Vertex};

/// Children-prefix table over a rooted forest.
///
/// For a vertex `v` with children `c_1 < ... < c_d`, let `T_v[i]` be `v`
/// together with the subtrees of its first `i` children. Entry `(v, i, j)` holds
/// the least cost `sum |P| + 2 * (uncovered vertices)` of covering `T_v[i]` with
/// `j` paths that all start at `v`. For `j = 0` the entry is the cost of one
/// closed tour from `v`, twice the edge count of `T_v[i]`.
#[derive(Debug, Clone)]
pub struct OneSourceTable {
    k: usize,
    children: Vec<Vec<Vertex>>,
    offset: Vec<usize>,
    cost: Vec<usize>,
    choice: Vec<u32>,
}

impl OneSourceTable {
    /// Builds the table for the tree hanging from `root` with up to `k` robots.
    pub fn new(tree: &Tree, root: Vertex, k: usize) -> Self {
        Self::for_forest(tree, &[root], k)
    }

    /// Builds the table for the forest obtained by rooting a component at each
    /// of `roots` and never stepping onto another root.
    pub fn for_forest(tree: &Tree, roots: &[Vertex], k: usize) -> Self {
        let n = tree.len();
        let mut is_root = vec![false; n];
        for &r in roots {
            is_root[r] = true;
        }
        let mut children = vec![Vec::new(); n];
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        for &r in roots {
            seen[r] = true;
            let mut stack = vec![r];
            while let Some(v) = stack.pop() {
                order.push(v);
                for &w in tree.neighbors(v) {
                    if !seen[w] && !is_root[w] {
                        seen[w] = true;
                        children[v].push(w);
                        stack.push(w);
                    }
                }
            }
        }

        let width = k + 1;
        let mut offset = vec![0; n];
        let mut total = 0;
        for &v in &order {
            offset[v] = total;
            total += (children[v].len() + 1) * width;
        }
        let mut table = OneSourceTable {
            k,
            children,
            offset,
            cost: vec![0; total],
            choice: vec![0; total],
        };
        // Reverse preorder visits every child before its parent.
        for &v in order.iter().rev() {
            table.fill(v);
        }
        table
    }

    fn fill(&mut self, v: Vertex) {
        let width = self.k + 1;
        let base = self.offset[v];
        for i in 1..=self.children[v].len() {
            let c = self.children[v][i - 1];
            let child = self.offset[c] + self.children[c].len() * width;
            let prev = base + (i - 1) * width;
            let cur = base + i * width;
            let closed_child = self.cost[child] + 2;
            for j in 0..=self.k {
                let mut best = self.cost[prev + j] + closed_child;
                let mut pick = 0;
                for l in 1..=j {
                    let cand = self.cost[prev + j - l] + self.cost[child + l] + l;
                    if cand < best {
                        best = cand;
                        pick = l;
                    }
                }
                self.cost[cur + j] = best;
                self.choice[cur + j] = pick as u32;
            }
        }
    }

    pub fn max_robots(&self) -> usize {
        self.k
    }

    /// Entry for `T_v[i]` with `j` robots.
    pub fn entry(&self, v: Vertex, i: usize, j: usize) -> usize {
        assert!(i <= self.children[v].len() && j <= self.k);
        self.cost[self.offset[v] + i * (self.k + 1) + j]
    }

    /// Cost of covering the whole subtree of `v` with `j` robots from `v`
    /// (`j = 0`: one closed tour).
    pub fn cost(&self, v: Vertex, j: usize) -> usize {
        self.entry(v, self.children[v].len(), j)
    }

    pub fn children(&self, v: Vertex) -> &[Vertex] {
        &self.children[v]
    }

    /// Extends the paths `ids`, each currently ending at `v`, so that together
    /// they realise `cost(v, ids.len())` on the subtree of `v`.
    pub(crate) fn extend_paths(&self, v: Vertex, ids: Vec<usize>, paths: &mut [Vec<Vertex>]) {
        let width = self.k + 1;
        let mut tasks = vec![(v, self.children[v].len(), ids)];
        while let Some((v, i, ids)) = tasks.pop() {
            if i == 0 || ids.is_empty() {
                continue;
            }
            let j = ids.len();
            let l = self.choice[self.offset[v] + i * width + j] as usize;
            if l == 0 {
                tasks.push((v, i - 1, ids));
                continue;
            }
            let c = self.children[v][i - 1];
            let mut stay = ids;
            let go = stay.split_off(j - l);
            for &id in &go {
                paths[id].push(c);
            }
            tasks.push((v, i - 1, stay));
            tasks.push((c, self.children[c].len(), go));
        }
    }
}

/// Minimum-length covering with every robot starting at one vertex.
#[derive(Debug, Clone)]
pub struct OneSource {
    root: Vertex,
    table: OneSourceTable,
}

impl OneSource {
    pub fn solve(tree: &Tree, root: Vertex, k: usize) -> Result<Self> {
        if k == 0 {
            return Err(invalid("at least one robot is required"));
        }
        if !tree.contains(root) {
            return Err(invalid(format!(
                "start vertex {root} out of range for {} vertices",
                tree.len()
            )));
        }
        Ok(OneSource { root, table: OneSourceTable::new(tree, root, k) })
    }

    pub fn max_robots(&self) -> usize {
        self.table.k
    }

    /// Optimal cover length with `j` robots, `1 <= j <= k`.
    pub fn cost(&self, j: usize) -> usize {
        assert!(j >= 1 && j <= self.table.k, "robot count {j} out of 1..={}", self.table.k);
        self.table.cost(self.root, j)
    }

    pub fn paths(&self, j: usize) -> PathTuple {
        assert!(j >= 1 && j <= self.table.k);
        let mut paths = vec![vec![self.root]; j];
        self.table.extend_paths(self.root, (0..j).collect(), &mut paths);
        PathTuple::new_unchecked(paths)
    }

    pub fn solution(&self, tree: &Tree, j: usize) -> DpSolution {
        DpSolution::from_paths(tree, self.cost(j), self.paths(j))
    }

    pub fn table(&self) -> &OneSourceTable {
        &self.table
    }
}

/// Optimal solutions for `1..=k` robots starting at `u`; element `j - 1` is for
/// `j` robots.
pub fn one_source(tree: &Tree, u: Vertex, k: usize) -> Result<Vec<DpSolution>> {
    let solver = OneSource::solve(tree, u, k)?;
    Ok((1..=k).map(|j| solver.solution(tree, j)).collect())
}
