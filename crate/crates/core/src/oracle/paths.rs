//! Exhaustive minimisation of the path-tuple cost.

use crate::error::{invalid, Error, Result};
use crate::oracle::{fleet, Robot, MAX_VERTICES};
use crate::strategy::PathTuple;
use crate::tree::{Tree, Vertex};

const MAX_TUPLES: usize = 100_000_000;

/// Minimum of `sum |P_i| + 2 * |V \ union V(P_i)|` over all tuples of simple
/// paths where path `i` starts at `starts[i]`.
pub fn oracle_paths_mlcp(tree: &Tree, starts: &[Vertex]) -> Result<usize> {
    Ok(best_path_tuple(tree, &fleet(starts))?.0)
}

/// The minimising tuple itself. Returning robots are held to the single-vertex
/// path at their start. Ties go to the lexicographically first tuple of end
/// vertices.
pub fn best_path_tuple(tree: &Tree, robots: &[Robot]) -> Result<(usize, PathTuple)> {
    let n = tree.len();
    if n > MAX_VERTICES {
        return Err(Error::ResourceLimit(format!(
            "at most {MAX_VERTICES} vertices supported, got {n}"
        )));
    }
    if robots.is_empty() {
        return Err(invalid("at least one robot is required"));
    }
    if let Some(r) = robots.iter().find(|r| !tree.contains(r.start)) {
        return Err(invalid(format!("start vertex {} out of range", r.start)));
    }
    // (end, length, vertex mask) of every path a robot may take
    let options: Vec<Vec<(Vertex, usize, u64)>> = robots
        .iter()
        .map(|r| {
            let ends: Vec<Vertex> = if r.returns { vec![r.start] } else { (0..n).collect() };
            ends.into_iter()
                .map(|e| {
                    let p = tree.path_between(r.start, e);
                    let mask = p.iter().fold(0u64, |m, &v| m | 1 << v);
                    (e, p.len() - 1, mask)
                })
                .collect()
        })
        .collect();

    let tuples = options.iter().fold(1usize, |acc, o| acc.saturating_mul(o.len()));
    if tuples > MAX_TUPLES {
        return Err(Error::ResourceLimit(format!(
            "{tuples} path tuples exceed the limit of {MAX_TUPLES}"
        )));
    }
    let k = robots.len();
    let mut idx = vec![0usize; k];
    let mut best: Option<(usize, Vec<usize>)> = None;
    loop {
        let (mut len, mut mask) = (0, 0u64);
        for (r, &i) in idx.iter().enumerate() {
            let (_, l, m) = options[r][i];
            len += l;
            mask |= m;
        }
        let cost = len + 2 * (n - mask.count_ones() as usize);
        if best.as_ref().is_none_or(|(c, _)| cost < *c) {
            best = Some((cost, idx.clone()));
        }
        let mut r = k;
        loop {
            if r == 0 {
                let (cost, idx) = best.unwrap();
                let paths = idx
                    .iter()
                    .enumerate()
                    .map(|(r, &i)| tree.path_between(robots[r].start, options[r][i].0))
                    .collect();
                return Ok((cost, PathTuple::new_unchecked(paths)));
            }
            r -= 1;
            idx[r] += 1;
            if idx[r] < options[r].len() {
                break;
            }
            idx[r] = 0;
        }
    }
}
