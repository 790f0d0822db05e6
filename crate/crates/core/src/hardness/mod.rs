//! Instances built from 3-PARTITION inputs on which covering is hard, and the
//! strategies that witness a yes-answer when a partition is known.
//!
//! Both constructions hang `3m` paths of lengths `a_1, ..., a_{3m}` off a hub
//! vertex `u`. Vertex ids follow a fixed scheme: the hub is 0, path `i`
//! occupies the next `a_i` ids in order of increasing depth, and the extra
//! paths of each construction come last.

mod random;

pub use random::{gen_random_tree, random_three_partition, TreeShape};

use crate::error::{invalid, Result};
use crate::oracle::check_three_partition;
use crate::strategy::{Strategy, Walk};
use crate::tree::{Tree, Vertex};

/// The hub with its `3m` spokes. Returns the edges, each spoke's vertices
/// (excluding the hub) and the next free id.
fn spokes(a: &[u64]) -> (Vec<(Vertex, Vertex)>, Vec<Vec<Vertex>>, Vertex) {
    let mut edges = Vec::new();
    let mut paths = Vec::with_capacity(a.len());
    let mut next = 1;
    for &len in a {
        let path: Vec<Vertex> = (next..next + len as usize).collect();
        let mut prev = 0;
        for &v in &path {
            edges.push((prev, v));
            prev = v;
        }
        next += len as usize;
        paths.push(path);
    }
    (edges, paths, next)
}

/// Appends `chain` to `edges` as a path hanging from `from`.
fn attach_chain(edges: &mut Vec<(Vertex, Vertex)>, from: Vertex, chain: &[Vertex]) {
    let mut prev = from;
    for &v in chain {
        edges.push((prev, v));
        prev = v;
    }
}

fn spoke_labels(spokes: &[Vec<Vertex>], labels: &mut [String]) {
    labels[0] = "u".into();
    for (i, path) in spokes.iter().enumerate() {
        for (d, &v) in path.iter().enumerate() {
            labels[v] = format!("p{}_{}", i + 1, d + 1);
        }
    }
}

/// Checks that `partition` splits the item indices into triples summing to `b`.
fn check_partition(a: &[u64], b: u64, partition: &[[usize; 3]]) -> Result<()> {
    let m = a.len() / 3;
    if partition.len() != m {
        return Err(invalid(format!("expected {m} triples, got {}", partition.len())));
    }
    let mut seen = vec![false; a.len()];
    for (t, triple) in partition.iter().enumerate() {
        for &i in triple {
            if i >= a.len() {
                return Err(invalid(format!("triple {t} names item {i}, out of range")));
            }
            if std::mem::replace(&mut seen[i], true) {
                return Err(invalid(format!("item {i} is used twice")));
            }
        }
        let sum: u64 = triple.iter().map(|&i| a[i]).sum();
        if sum != b {
            return Err(invalid(format!("triple {t} sums to {sum}, expected {b}")));
        }
    }
    Ok(())
}

/// Out along a spoke to its end and back to the hub, excluding the starting
/// hub visit.
fn sweep(walk: &mut Vec<Vertex>, spoke: &[Vertex]) {
    walk.extend(spoke.iter().copied());
    walk.extend(spoke.iter().rev().skip(1).copied());
    walk.push(0);
}

/// Rendezvous length instance: the spokes plus a tail `v_1, ..., v_{3B+4}`
/// joined to the hub through `v_1`. `m + 1` robots start at `v_1`, must meet
/// every `2B + 2` steps, and may use at most `(2m + 2)(2B + 2)` moves.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LcsrInstance {
    pub tree: Tree,
    pub a: Vec<u64>,
    pub b: u64,
    pub spokes: Vec<Vec<Vertex>>,
    /// `tail[j]` is `v_{j+1}`.
    pub tail: Vec<Vertex>,
    pub start: Vertex,
    pub robots: usize,
    pub period: usize,
    pub budget: usize,
}

impl LcsrInstance {
    pub fn m(&self) -> usize {
        self.a.len() / 3
    }

    /// `v_j`, 1-based as in the construction.
    pub fn v(&self, j: usize) -> Vertex {
        self.tail[j - 1]
    }

    pub fn labels(&self) -> Vec<String> {
        let mut labels = vec![String::new(); self.tree.len()];
        spoke_labels(&self.spokes, &mut labels);
        for (j, &v) in self.tail.iter().enumerate() {
            labels[v] = format!("v{}", j + 1);
        }
        labels
    }
}

pub fn gen_lcsr(a: &[u64], b: u64) -> Result<LcsrInstance> {
    let m = check_three_partition(a, b)?;
    let (mut edges, spokes, next) = spokes(a);
    let bb = b as usize;
    let tail: Vec<Vertex> = (next..next + 3 * bb + 4).collect();
    attach_chain(&mut edges, 0, &tail);
    let n = next + tail.len();
    let tree = Tree::new(n, &edges)?;
    let period = 2 * bb + 2;
    Ok(LcsrInstance {
        tree,
        a: a.to_vec(),
        b,
        spokes,
        start: tail[0],
        tail,
        robots: m + 1,
        period,
        budget: (2 * m + 2) * period,
    })
}

/// Strategy meeting the rendezvous length budget, built from a partition.
///
/// Robot `i < m` sweeps the spokes of triple `i` during window `i`, leaving
/// and re-entering through `v_1` in exactly `2B + 2` steps while everyone else
/// waits at `v_1`. All `m + 1` robots then walk together to `v_{2B+3}`, and the
/// last robot runs out to `v_{3B+4}` and back, again in `2B + 2` steps.
pub fn witness_lcsr(inst: &LcsrInstance, partition: &[[usize; 3]]) -> Result<Strategy> {
    check_partition(&inst.a, inst.b, partition)?;
    let m = inst.m();
    let bb = inst.b as usize;
    let v1 = inst.start;
    let mut walks: Vec<Vec<Vertex>> = vec![vec![v1]; m + 1];

    for (w, triple) in partition.iter().enumerate() {
        let mut tour = vec![0];
        for &i in triple {
            sweep(&mut tour, &inst.spokes[i]);
        }
        tour.push(v1);
        debug_assert_eq!(tour.len(), inst.period);
        for (r, walk) in walks.iter_mut().enumerate() {
            if r == w {
                walk.extend_from_slice(&tour);
            } else {
                walk.extend(std::iter::repeat_n(v1, tour.len()));
            }
        }
    }

    let meet = inst.v(2 * bb + 3);
    for walk in walks.iter_mut() {
        walk.extend_from_slice(&inst.tail[1..2 * bb + 3]);
    }
    let out_and_back: Vec<Vertex> = inst.tail[2 * bb + 3..]
        .iter()
        .chain(inst.tail[2 * bb + 2..3 * bb + 3].iter().rev())
        .copied()
        .collect();
    for (r, walk) in walks.iter_mut().enumerate() {
        if r == m {
            walk.extend_from_slice(&out_and_back);
        } else {
            walk.extend(std::iter::repeat_n(meet, out_and_back.len()));
        }
    }
    Ok(Strategy::new(walks.into_iter().map(Walk::new).collect()))
}

/// Cover-time instance: the spokes plus `m` arms of length `L = 2 sum a_i`,
/// all at the hub. `m` robots start at the hub with time budget `L + 2B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TcsInstance {
    pub tree: Tree,
    pub a: Vec<u64>,
    pub b: u64,
    pub spokes: Vec<Vec<Vertex>>,
    /// Arm vertices, excluding the hub, in order of increasing depth.
    pub arms: Vec<Vec<Vertex>>,
    pub arm_length: usize,
    pub start: Vertex,
    pub robots: usize,
    pub budget: usize,
}

impl TcsInstance {
    pub fn m(&self) -> usize {
        self.a.len() / 3
    }

    pub fn labels(&self) -> Vec<String> {
        let mut labels = vec![String::new(); self.tree.len()];
        spoke_labels(&self.spokes, &mut labels);
        for (i, arm) in self.arms.iter().enumerate() {
            for (d, &v) in arm.iter().enumerate() {
                labels[v] = format!("q{}_{}", i + 1, d + 1);
            }
        }
        labels
    }
}

pub fn gen_tcs(a: &[u64], b: u64) -> Result<TcsInstance> {
    let m = check_three_partition(a, b)?;
    let (mut edges, spokes, mut next) = spokes(a);
    let arm_length = 2 * a.iter().sum::<u64>() as usize;
    let mut arms = Vec::with_capacity(m);
    for _ in 0..m {
        let arm: Vec<Vertex> = (next..next + arm_length).collect();
        attach_chain(&mut edges, 0, &arm);
        next += arm_length;
        arms.push(arm);
    }
    let tree = Tree::new(next, &edges)?;
    Ok(TcsInstance {
        tree,
        a: a.to_vec(),
        b,
        spokes,
        arms,
        arm_length,
        start: 0,
        robots: m,
        budget: arm_length + 2 * b as usize,
    })
}

/// Robot `i` sweeps the three spokes of triple `i` and then walks down arm `i`.
pub fn witness_tcs(inst: &TcsInstance, partition: &[[usize; 3]]) -> Result<Strategy> {
    check_partition(&inst.a, inst.b, partition)?;
    let walks = partition
        .iter()
        .zip(&inst.arms)
        .map(|(triple, arm)| {
            let mut walk = vec![0];
            for &i in triple {
                sweep(&mut walk, &inst.spokes[i]);
            }
            walk.extend_from_slice(arm);
            Walk::new(walk)
        })
        .collect();
    Ok(Strategy::new(walks))
}
