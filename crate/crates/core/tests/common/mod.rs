//! Test-side helpers: a naive exhaustive search written directly from the
//! model definitions, and tree generators independent of the library's.
#![allow(dead_code)]

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use proptest::prelude::*;
use treecover::{Tree, Vertex};

/// Decodes a Prüfer sequence the quadratic way.
pub fn from_prufer(n: usize, seq: &[usize]) -> Tree {
    if n == 1 {
        return Tree::single();
    }
    let mut degree = vec![1; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::new();
    for &v in seq {
        let leaf = (0..n).find(|&x| degree[x] == 1).unwrap();
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<_> = (0..n).filter(|&x| degree[x] == 1).collect();
    edges.push((rest[0], rest[1]));
    Tree::new(n, &edges).unwrap()
}

pub fn arb_tree(min_n: usize, max_n: usize) -> impl Strategy<Value = Tree> {
    (min_n..=max_n).prop_flat_map(|n| {
        let len = n.saturating_sub(2);
        prop::collection::vec(0..n, len).prop_map(move |seq| from_prufer(n, &seq))
    })
}

/// Deterministic pseudo-random trees for the exhaustive sweeps.
pub fn sample_trees(count: usize, min_n: usize, max_n: usize, seed: u64) -> Vec<Tree> {
    let mut state = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = move |bound: usize| {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        (state % bound as u64) as usize
    };
    (0..count)
        .map(|_| {
            let n = min_n + next(max_n - min_n + 1);
            let seq: Vec<usize> = (0..n.saturating_sub(2)).map(|_| next(n)).collect();
            from_prufer(n, &seq)
        })
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Cost {
    Time,
    Length,
}

/// Minimum cost over covering strategies, by Dijkstra over
/// (positions, visited set, steps since the last meeting). Every robot may
/// move or stay at each step. `home[i]` forces robot `i` back to its start.
pub fn naive_optimum(
    tree: &Tree,
    starts: &[Vertex],
    home: &[bool],
    cost: Cost,
    p: Option<usize>,
) -> Option<usize> {
    let n = tree.len();
    let k = starts.len();
    let all: u64 = if n == 64 { !0 } else { (1 << n) - 1 };
    let together = |pos: &[Vertex]| pos.iter().all(|&v| v == pos[0]);
    let done = |pos: &[Vertex], seen: u64| {
        seen == all
            && (0..k).all(|i| !home[i] || pos[i] == starts[i])
            && (p.is_none() || together(pos))
    };
    type Key = (Vec<Vertex>, u64, usize);
    let start_seen = starts.iter().fold(0u64, |m, &v| m | 1 << v);
    let start: Key = (starts.to_vec(), start_seen, 0);
    let mut best: HashMap<Key, usize> = HashMap::new();
    let mut heap = BinaryHeap::new();
    best.insert(start.clone(), 0);
    heap.push(Reverse((0usize, start)));
    while let Some(Reverse((d, key))) = heap.pop() {
        if best[&key] < d {
            continue;
        }
        let (pos, seen, since) = &key;
        if done(pos, *seen) {
            return Some(d);
        }
        // every combination of moves
        let options: Vec<Vec<Vertex>> = pos
            .iter()
            .map(|&v| {
                let mut o = vec![v];
                o.extend_from_slice(tree.neighbors(v));
                o
            })
            .collect();
        let total: usize = options.iter().map(Vec::len).product();
        for code in 1..total {
            let mut c = code;
            let mut next = Vec::with_capacity(k);
            let mut moved = 0;
            for o in &options {
                let pick = c % o.len();
                c /= o.len();
                next.push(o[pick]);
                moved += (pick != 0) as usize;
            }
            let since = if together(&next) { 0 } else { since + 1 };
            if let Some(p) = p {
                if since >= p {
                    continue;
                }
            }
            let seen = next.iter().fold(*seen, |m, &v| m | 1 << v);
            let step = match cost {
                Cost::Time => 1,
                Cost::Length => moved,
            };
            let nk = (next, seen, since);
            let nd = d + step;
            if best.get(&nk).is_none_or(|&b| nd < b) {
                best.insert(nk.clone(), nd);
                heap.push(Reverse((nd, nk)));
            }
        }
    }
    None
}

/// Distances, recomputed here rather than taken from the library.
pub fn ecc(tree: &Tree, u: Vertex) -> usize {
    let mut dist = vec![usize::MAX; tree.len()];
    dist[u] = 0;
    let mut stack = vec![u];
    while let Some(x) = stack.pop() {
        for &y in tree.neighbors(x) {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                stack.push(y);
            }
        }
    }
    dist.into_iter().max().unwrap()
}
