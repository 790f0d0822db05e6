//! Joint-state search over synchronised robot moves.

use std::collections::hash_map::Entry;

use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::oracle::{Objective, Robot};
use crate::strategy::{Strategy, Walk};
use crate::tree::{Tree, Vertex};

const BITS: u32 = 6;
const MASK: u64 = (1 << BITS) - 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct State {
    /// Slot positions, `BITS` bits each.
    pos: u64,
    covered: u64,
    /// Steps since all robots last shared a vertex.
    since: u32,
}

#[inline]
fn get(pos: u64, slot: usize) -> Vertex {
    ((pos >> (slot as u32 * BITS)) & MASK) as Vertex
}

#[inline]
fn set(pos: u64, slot: usize, v: Vertex) -> u64 {
    let shift = slot as u32 * BITS;
    (pos & !(MASK << shift)) | ((v as u64) << shift)
}

pub(crate) struct Search<'a> {
    tree: &'a Tree,
    k: usize,
    /// Robot index for each slot; robots of one class occupy adjacent slots.
    slot_robot: Vec<usize>,
    /// Slot ranges whose robots are interchangeable.
    classes: Vec<(usize, usize)>,
    /// Vertex the robot in each slot must finish on, if any.
    home: Vec<Option<Vertex>>,
    rendezvous: Option<usize>,
    objective: Objective,
    max_states: usize,
}

type Pred = Option<(State, u64)>;

impl<'a> Search<'a> {
    pub(crate) fn new(
        tree: &'a Tree,
        robots: &[Robot],
        objective: Objective,
        rendezvous: Option<usize>,
        max_states: usize,
    ) -> Self {
        // free robots first, then returning robots grouped by start
        let mut slot_robot: Vec<usize> = (0..robots.len()).collect();
        let class_key = |r: &Robot| if r.returns { Some(r.start) } else { None };
        slot_robot.sort_by_key(|&i| class_key(&robots[i]));
        let mut classes = Vec::new();
        let mut begin = 0;
        for s in 1..=slot_robot.len() {
            if s == slot_robot.len()
                || class_key(&robots[slot_robot[s]]) != class_key(&robots[slot_robot[begin]])
            {
                classes.push((begin, s));
                begin = s;
            }
        }
        let home = slot_robot
            .iter()
            .map(|&i| robots[i].returns.then_some(robots[i].start))
            .collect();
        Search {
            tree,
            k: robots.len(),
            slot_robot,
            classes,
            home,
            rendezvous,
            objective,
            max_states,
        }
    }

    fn full(&self) -> u64 {
        if self.tree.len() == 64 {
            u64::MAX
        } else {
            (1u64 << self.tree.len()) - 1
        }
    }

    fn all_together(&self, pos: u64) -> bool {
        let first = get(pos, 0);
        (1..self.k).all(|s| get(pos, s) == first)
    }

    fn is_goal(&self, st: &State) -> bool {
        st.covered == self.full()
            && self
                .home
                .iter()
                .enumerate()
                .all(|(s, h)| h.is_none_or(|h| get(st.pos, s) == h))
            && (self.rendezvous.is_none() || self.all_together(st.pos))
    }

    /// Sorts positions inside each class; returns the canonical positions and
    /// the permutation `new slot -> old slot`.
    fn canonical(&self, pos: u64) -> (u64, Vec<usize>) {
        let mut order: Vec<usize> = (0..self.k).collect();
        for &(a, b) in &self.classes {
            order[a..b].sort_by_key(|&s| get(pos, s));
        }
        let mut out = 0;
        for (new, &old) in order.iter().enumerate() {
            out = set(out, new, get(pos, old));
        }
        (out, order)
    }

    fn canonical_pos(&self, pos: u64) -> u64 {
        if self.classes.iter().all(|&(a, b)| b - a <= 1) {
            return pos;
        }
        let mut vals = [0 as Vertex; 10];
        let mut out = pos;
        for &(a, b) in &self.classes {
            if b - a > 1 {
                let vals = &mut vals[..b - a];
                for (i, s) in (a..b).enumerate() {
                    vals[i] = get(pos, s);
                }
                vals.sort_unstable();
                for (i, s) in (a..b).enumerate() {
                    out = set(out, s, vals[i]);
                }
            }
        }
        out
    }

    /// Builds the successor reached by moving to `moved` (positions in the
    /// current slot order). `None` when the rendezvous window is broken.
    fn step(&self, st: &State, moved: u64) -> Option<State> {
        let mut covered = st.covered;
        for s in 0..self.k {
            covered |= 1 << get(moved, s);
        }
        let since = match self.rendezvous {
            None => 0,
            Some(p) => {
                if self.all_together(moved) {
                    0
                } else if st.since as usize + 1 >= p {
                    return None;
                } else {
                    st.since + 1
                }
            }
        };
        Some(State { pos: self.canonical_pos(moved), covered, since })
    }

    /// Successors with their cost and the uncanonicalised move.
    fn successors(&self, st: &State, out: &mut Vec<(State, usize, u64)>) {
        out.clear();
        let single = self.objective == Objective::Length && self.rendezvous.is_none();
        if single {
            // Without rendezvous, length does not depend on timing, so moving
            // one robot per step loses nothing.
            for s in 0..self.k {
                for &w in self.tree.neighbors(get(st.pos, s)) {
                    let moved = set(st.pos, s, w);
                    if let Some(nx) = self.step(st, moved) {
                        out.push((nx, 1, moved));
                    }
                }
            }
            return;
        }
        let options: Vec<Vec<Vertex>> = (0..self.k)
            .map(|s| {
                let v = get(st.pos, s);
                std::iter::once(v).chain(self.tree.neighbors(v).iter().copied()).collect()
            })
            .collect();
        let mut idx = vec![0usize; self.k];
        loop {
            // advance the mixed-radix counter; the all-stay move is skipped
            let mut s = 0;
            while s < self.k {
                idx[s] += 1;
                if idx[s] < options[s].len() {
                    break;
                }
                idx[s] = 0;
                s += 1;
            }
            if s == self.k {
                break;
            }
            let mut moved = 0;
            let mut changes = 0;
            for s in 0..self.k {
                moved = set(moved, s, options[s][idx[s]]);
                changes += (idx[s] != 0) as usize;
            }
            if let Some(nx) = self.step(st, moved) {
                let cost = match self.objective {
                    Objective::Time => 1,
                    Objective::Length => changes,
                };
                out.push((nx, cost, moved));
            }
        }
    }

    fn initial(&self, robots_start: impl Fn(usize) -> Vertex) -> State {
        let mut pos = 0;
        let mut covered = 0;
        for s in 0..self.k {
            let v = robots_start(self.slot_robot[s]);
            pos = set(pos, s, v);
            covered |= 1 << v;
        }
        State { pos: self.canonical_pos(pos), covered, since: 0 }
    }

    /// Least-cost search with bucketed costs. Returns the optimum and, when
    /// asked, a witness strategy indexed like `robots`.
    pub(crate) fn run(&self, robots: &[Robot], witness: bool) -> Result<Option<(usize, Option<Strategy>)>> {
        let start = self.initial(|r| robots[r].start);
        let mut dist: FxHashMap<State, (usize, Pred)> = FxHashMap::default();
        dist.insert(start, (0, None));
        let mut buckets: Vec<Vec<State>> = vec![vec![start]];
        let mut succ = Vec::new();
        let mut cost = 0;
        while cost < buckets.len() {
            while let Some(st) = buckets[cost].pop() {
                if dist[&st].0 != cost {
                    continue;
                }
                if self.is_goal(&st) {
                    let strategy = witness.then(|| self.rebuild(robots, &dist, st));
                    return Ok(Some((cost, strategy)));
                }
                self.successors(&st, &mut succ);
                for &(nx, w, moved) in &succ {
                    let nc = cost + w;
                    match dist.entry(nx) {
                        Entry::Occupied(mut e) => {
                            if e.get().0 <= nc {
                                continue;
                            }
                            e.insert((nc, Some((st, moved))));
                        }
                        Entry::Vacant(e) => {
                            e.insert((nc, Some((st, moved))));
                        }
                    }
                    if dist.len() > self.max_states {
                        return Err(Error::ResourceLimit(format!(
                            "search exceeded {} states",
                            self.max_states
                        )));
                    }
                    if buckets.len() <= nc {
                        buckets.resize_with(nc + 1, Vec::new);
                    }
                    buckets[nc].push(nx);
                }
            }
            cost += 1;
        }
        Ok(None)
    }

    fn rebuild(
        &self,
        robots: &[Robot],
        dist: &FxHashMap<State, (usize, Pred)>,
        goal: State,
    ) -> Strategy {
        let mut moves = Vec::new();
        let mut cur = goal;
        while let Some((prev, moved)) = dist[&cur].1 {
            moves.push(moved);
            cur = prev;
        }
        moves.reverse();

        // slot -> robot for the start state
        let mut first = 0;
        for s in 0..self.k {
            first = set(first, s, robots[self.slot_robot[s]].start);
        }
        let (_, order) = self.canonical(first);
        let mut holder: Vec<usize> = order.iter().map(|&old| self.slot_robot[old]).collect();
        let mut walks: Vec<Vec<Vertex>> = robots.iter().map(|r| vec![r.start]).collect();
        for moved in moves {
            for s in 0..self.k {
                walks[holder[s]].push(get(moved, s));
            }
            let (_, order) = self.canonical(moved);
            holder = order.iter().map(|&old| holder[old]).collect();
        }
        Strategy::new(walks.into_iter().map(Walk::new).collect())
    }
}
