//! Left-to-right greedy decision procedure.
//!
//! Covers the barrier from the leftmost uncovered point `s`, always using the
//! eligible sensor with the smallest right reach `g`. A sensor is eligible
//! when `l - 2 r_max <= s <= g`. Placements therefore move at most
//! `D + 2 r_max`, and the procedure never answers infeasible when the
//! instance is feasible at `D`.

use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use crate::error::Result;
use crate::model::{reach_range, DecisionOutcome, Instance, Solution};
use crate::tolerance::eps;

/// Heap key ordered by right reach, then by sensor index.
#[derive(Debug, Clone, Copy, PartialEq)]
struct ByReach {
    g: f64,
    index: usize,
}

impl Eq for ByReach {}

impl PartialOrd for ByReach {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ByReach {
    fn cmp(&self, other: &Self) -> Ordering {
        self.g
            .total_cmp(&other.g)
            .then(self.index.cmp(&other.index))
    }
}

pub fn decide_greedy(inst: &Instance, d: f64) -> Result<DecisionOutcome> {
    inst.require_sensors()?;
    let m = inst.barrier_length();
    let tol = eps();
    let slack = 2.0 * inst.r_max();

    // (l, g, index) for reachable sensors, sorted on l
    let mut pending: Vec<(f64, f64, usize)> = inst
        .sensors()
        .iter()
        .enumerate()
        .filter_map(|(i, s)| reach_range(s, d).map(|rr| (rr.l, rr.g, i)))
        .collect();
    pending.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.2.cmp(&b.2)));

    let mut positions = vec![None; inst.len()];
    let mut heap: BinaryHeap<Reverse<ByReach>> = BinaryHeap::new();
    let mut next = 0;
    let mut frontier = 0.0_f64;

    while frontier < m - tol {
        while next < pending.len() && pending[next].0 - slack <= frontier + tol {
            let (_, g, index) = pending[next];
            heap.push(Reverse(ByReach { g, index }));
            next += 1;
        }
        // frontier never decreases, so a sensor with g < frontier is dead for good
        while heap.peek().is_some_and(|Reverse(k)| k.g < frontier - tol) {
            heap.pop();
        }
        let Some(Reverse(pick)) = heap.pop() else {
            return Ok(DecisionOutcome::Infeasible);
        };
        let r = inst.sensors()[pick.index].r;
        let reached = (frontier + 2.0 * r).min(pick.g);
        positions[pick.index] = Some(reached - r);
        frontier = frontier.max(reached);
    }

    Ok(DecisionOutcome::Feasible(Solution::new(inst, positions)?))
}
