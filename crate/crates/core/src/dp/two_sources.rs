use crate::dp::destination::{check_pair, DestTable};
use crate::dp::{ending_at, DpSolution, OneSourceTable};
use crate::error::{invalid, Result};
use crate::strategy::PathTuple;
use crate::tree::{Tree, Vertex};

/// How an optimal solution splits the `u`-`v` path between the two groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Split {
    /// No `u` robot leaves `u` along the path; `enter` robots from `v` reach `u`.
    AtStart { enter: usize },
    /// No `v` robot leaves `v` along the path; `enter` robots from `u` reach `v`.
    AtEnd { enter: usize },
    /// The groups stay on opposite sides of the edge `(x_i, x_{i+1})`.
    Apart { i: usize },
    /// `from_u` and `from_v` robots meet at `x_i`, an interior path vertex.
    Meet { i: usize, from_u: usize, from_v: usize },
}

/// Minimum-length covering with `s` robots at `u` and `t` robots at `v`.
///
/// A count of zero on either side stands for one robot that must return to its
/// start vertex.
#[derive(Debug, Clone)]
pub struct TwoSources {
    gamma: Vec<Vertex>,
    k: usize,
    forest: OneSourceTable,
    from_u: DestTable,
    from_v: DestTable,
    cost: Vec<usize>,
    split: Vec<Split>,
}

impl TwoSources {
    pub fn solve(tree: &Tree, u: Vertex, v: Vertex, k: usize) -> Result<Self> {
        check_pair(tree, u, v)?;
        if k == 0 {
            return Err(invalid("at least one robot per start is required"));
        }
        let gamma = tree.path_between(u, v);
        let reversed: Vec<_> = gamma.iter().rev().copied().collect();
        // meeting robots from both sides may pile into one component
        let forest = OneSourceTable::for_forest(tree, &gamma, 2 * k);
        let from_u = DestTable::build(&gamma, k, &forest);
        let from_v = DestTable::build(&reversed, k, &forest);
        let w = k + 1;
        let mut solver = TwoSources {
            gamma,
            k,
            forest,
            from_u,
            from_v,
            cost: vec![usize::MAX; w * w],
            split: vec![Split::Apart { i: 0 }; w * w],
        };
        for s in 0..=k {
            for t in 0..=k {
                if s + t > 0 {
                    let (c, split) = solver.best(s, t);
                    solver.cost[s * w + t] = c;
                    solver.split[s * w + t] = split;
                }
            }
        }
        Ok(solver)
    }

    /// Position along the reversed path of `gamma[i]`.
    fn rev(&self, i: usize) -> usize {
        self.gamma.len() - 1 - i
    }

    fn best(&self, s: usize, t: usize) -> (usize, Split) {
        let m = self.gamma.len();
        let os = |i: usize, robots: usize| self.forest.cost(self.gamma[i], robots);
        let mut best = (usize::MAX, Split::Apart { i: 0 });
        let mut offer = |c: usize, split: Split| {
            if c < best.0 {
                best = (c, split);
            }
        };
        for i in 0..m {
            if i == 0 {
                for j in 0..=t {
                    offer(os(0, s + j) + self.from_v.cost(self.rev(1), t, j) + j, Split::AtStart { enter: j });
                }
            } else if i == m - 1 {
                for j in 0..=s {
                    offer(os(m - 1, t + j) + self.from_u.cost(m - 2, s, j) + j, Split::AtEnd { enter: j });
                }
            } else {
                let right = self.rev(i + 1);
                offer(
                    self.from_u.cost(i, s, 0) + self.from_v.cost(right, t, 0),
                    Split::Apart { i },
                );
                for j in 1..=s {
                    for l in 0..=t {
                        offer(
                            self.from_u.cost(i - 1, s, j)
                                + os(i, j + l)
                                + self.from_v.cost(right, t, l)
                                + j
                                + l,
                            Split::Meet { i, from_u: j, from_v: l },
                        );
                    }
                }
            }
        }
        best
    }

    pub fn max_robots(&self) -> usize {
        self.k
    }

    pub fn gamma(&self) -> &[Vertex] {
        &self.gamma
    }

    /// Optimal cost for `s` robots at `u` and `t` at `v`; `None` for `(0, 0)`
    /// or counts above `k`.
    pub fn cost(&self, s: usize, t: usize) -> Option<usize> {
        (s <= self.k && t <= self.k && s + t > 0).then(|| self.cost[s * (self.k + 1) + t])
    }

    /// Optimal paths: the `u` group first, then the `v` group.
    pub fn paths(&self, s: usize, t: usize) -> PathTuple {
        assert!(self.cost(s, t).is_some(), "no entry for ({s}, {t})");
        let m = self.gamma.len();
        let reversed: Vec<_> = self.gamma.iter().rev().copied().collect();
        let (u, v) = (self.gamma[0], self.gamma[m - 1]);
        let u_side = |i: usize, j: usize| self.from_u.paths(&self.gamma, &self.forest, i, s, j);
        let v_side = |i: usize, j: usize| self.from_v.paths(&reversed, &self.forest, i, t, j);

        let (mut left, mut right) = match self.split[s * (self.k + 1) + t] {
            Split::AtStart { enter } => {
                let mut right = v_side(self.rev(1), enter);
                let movers = ending_at(&right, self.gamma[1], enter);
                let mut left = vec![vec![u]; s];
                for &id in &movers {
                    right[id].push(u);
                }
                self.route_into(0, &mut left, (0..s).collect(), &mut right, movers);
                (left, right)
            }
            Split::AtEnd { enter } => {
                let mut left = u_side(m - 2, enter);
                let movers = ending_at(&left, self.gamma[m - 2], enter);
                let mut right = vec![vec![v]; t];
                for &id in &movers {
                    left[id].push(v);
                }
                self.route_into(m - 1, &mut left, movers, &mut right, (0..t).collect());
                (left, right)
            }
            Split::Apart { i } => (u_side(i, 0), v_side(self.rev(i + 1), 0)),
            Split::Meet { i, from_u, from_v } => {
                let x = self.gamma[i];
                let mut left = u_side(i - 1, from_u);
                let mut right = v_side(self.rev(i + 1), from_v);
                let lmove = ending_at(&left, self.gamma[i - 1], from_u);
                let rmove = ending_at(&right, self.gamma[i + 1], from_v);
                for &id in &lmove {
                    left[id].push(x);
                }
                for &id in &rmove {
                    right[id].push(x);
                }
                self.route_into(i, &mut left, lmove, &mut right, rmove);
                (left, right)
            }
        };
        if s == 0 {
            left = vec![vec![u]];
        }
        if t == 0 {
            right = vec![vec![v]];
        }
        left.append(&mut right);
        PathTuple::new_unchecked(left)
    }

    /// Sends the selected paths of both groups, all ending at `gamma[i]`, into
    /// the component hanging off `gamma[i]`.
    fn route_into(
        &self,
        i: usize,
        left: &mut [Vec<Vertex>],
        left_ids: Vec<usize>,
        right: &mut [Vec<Vertex>],
        right_ids: Vec<usize>,
    ) {
        let mut joint: Vec<Vec<Vertex>> = left_ids
            .iter()
            .map(|&id| std::mem::take(&mut left[id]))
            .chain(right_ids.iter().map(|&id| std::mem::take(&mut right[id])))
            .collect();
        let ids = (0..joint.len()).collect();
        self.forest.extend_paths(self.gamma[i], ids, &mut joint);
        let mut joint = joint.into_iter();
        for &id in &left_ids {
            left[id] = joint.next().unwrap();
        }
        for &id in &right_ids {
            right[id] = joint.next().unwrap();
        }
    }

    pub fn solution(&self, tree: &Tree, s: usize, t: usize) -> DpSolution {
        let cost = self.cost(s, t).expect("valid robot counts");
        DpSolution::from_paths(tree, cost, self.paths(s, t))
    }
}

/// Every `(s, t)` with `0 <= s, t <= k` except `(0, 0)`, in row-major order.
pub fn two_sources(
    tree: &Tree,
    u: Vertex,
    v: Vertex,
    k: usize,
) -> Result<Vec<((usize, usize), DpSolution)>> {
    let solver = TwoSources::solve(tree, u, v, k)?;
    let mut out = Vec::new();
    for s in 0..=k {
        for t in 0..=k {
            if s + t > 0 {
                out.push(((s, t), solver.solution(tree, s, t)));
            }
        }
    }
    Ok(out)
}
