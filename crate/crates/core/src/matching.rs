//! Pseudo-polynomial decision over unit edges.
//!
//! The barrier `[0, M]` is cut into `M` unit edges and every sensor offers
//! `2 r_i` interchangeable slots. A unit edge may use a slot of sensor `i`
//! when it lies entirely inside the sensor's clipped reach window. A perfect
//! matching of the unit edges is rounded with the same swap and exchange
//! phases as the fractional cover.
//!
//! `M` and every `r_i` must be integers; rational instances are handled by
//! scaling with [`decide_matching_scaled`].

use std::collections::VecDeque;
use std::ops::Range;

use crate::error::{Error, Result};
use crate::lp_round::{self, SubEdge, SubEdgeList};
use crate::model::{reach_range, DecisionOutcome, Instance, Sensor, Solution};
use crate::tolerance::eps;

/// Bipartite graph between unit edges and sensor slots.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitCoverGraph {
    unit_edges: usize,
    /// Slot vertex range of each sensor.
    slots: Vec<Range<usize>>,
    /// Unit edges inside each sensor's window.
    windows: Vec<Range<usize>>,
    slot_owner: Vec<usize>,
}

impl UnitCoverGraph {
    /// `|U|`, one vertex per unit edge.
    pub fn unit_edges(&self) -> usize {
        self.unit_edges
    }

    /// `|V| = sum 2 r_i`.
    pub fn slot_count(&self) -> usize {
        self.slot_owner.len()
    }

    pub fn window(&self, sensor: usize) -> Range<usize> {
        self.windows[sensor].clone()
    }

    pub fn slots_of(&self, sensor: usize) -> Range<usize> {
        self.slots[sensor].clone()
    }

    pub fn slot_owner(&self, slot: usize) -> usize {
        self.slot_owner[slot]
    }

    /// Slots adjacent to unit edge `u`.
    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.windows
            .iter()
            .enumerate()
            .filter(move |(_, w)| w.contains(&u))
            .flat_map(move |(i, _)| self.slots[i].clone())
    }

    pub fn edge_count(&self) -> usize {
        self.windows
            .iter()
            .zip(&self.slots)
            .map(|(w, s)| w.len() * s.len())
            .sum()
    }
}

/// Matched `(unit edge, slot)` pairs.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Matching {
    pub pairs: Vec<(usize, usize)>,
}

impl Matching {
    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

fn as_integer(what: &'static str, value: f64, scale: f64) -> Result<usize> {
    let scaled = value * scale;
    let rounded = scaled.round();
    if (scaled - rounded).abs() > eps() * scaled.abs().max(1.0) || rounded < 0.0 {
        return Err(Error::NonIntegral { what, value, scale });
    }
    Ok(rounded as usize)
}

pub fn build_h(inst: &Instance, d: f64) -> Result<UnitCoverGraph> {
    let m = as_integer("barrier length", inst.barrier_length(), 1.0)?;
    let tol = eps();
    let mut slots = Vec::with_capacity(inst.len());
    let mut slot_owner = Vec::new();
    let mut windows = Vec::with_capacity(inst.len());
    for (i, s) in inst.sensors().iter().enumerate() {
        let width = 2 * as_integer("sensor radius", s.r, 1.0)?;
        slots.push(slot_owner.len()..slot_owner.len() + width);
        slot_owner.extend(std::iter::repeat_n(i, width));
        let window = match reach_range(s, d).and_then(|rr| rr.clipped(m as f64)) {
            Some((a, b)) => {
                let first = (a - tol).ceil().max(0.0) as usize;
                let end = ((b + tol).floor() as usize).min(m);
                first..end.max(first)
            }
            None => 0..0,
        };
        windows.push(window);
    }
    Ok(UnitCoverGraph {
        unit_edges: m,
        slots,
        windows,
        slot_owner,
    })
}

/// Maximum-cardinality matching by Hopcroft-Karp.
pub fn max_matching(h: &UnitCoverGraph) -> Matching {
    let nu = h.unit_edges;
    let nv = h.slot_count();
    let adj: Vec<Vec<usize>> = (0..nu).map(|u| h.neighbors(u).collect()).collect();
    let mut mate_u: Vec<Option<usize>> = vec![None; nu];
    let mut mate_v: Vec<Option<usize>> = vec![None; nv];
    let mut dist = vec![usize::MAX; nu];

    loop {
        // layered BFS from free unit edges
        let mut queue = VecDeque::new();
        for u in 0..nu {
            if mate_u[u].is_none() {
                dist[u] = 0;
                queue.push_back(u);
            } else {
                dist[u] = usize::MAX;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                match mate_v[v] {
                    None => found = true,
                    Some(w) if dist[w] == usize::MAX => {
                        dist[w] = dist[u] + 1;
                        queue.push_back(w);
                    }
                    Some(_) => {}
                }
            }
        }
        if !found {
            break;
        }
        let mut next = vec![0usize; nu];
        for u in 0..nu {
            if mate_u[u].is_none() {
                augment(u, &adj, &mut mate_u, &mut mate_v, &mut dist, &mut next);
            }
        }
    }

    Matching {
        pairs: mate_u
            .iter()
            .enumerate()
            .filter_map(|(u, v)| v.map(|v| (u, v)))
            .collect(),
    }
}

fn augment(
    u: usize,
    adj: &[Vec<usize>],
    mate_u: &mut [Option<usize>],
    mate_v: &mut [Option<usize>],
    dist: &mut [usize],
    next: &mut [usize],
) -> bool {
    while next[u] < adj[u].len() {
        let v = adj[u][next[u]];
        next[u] += 1;
        let ok = match mate_v[v] {
            None => true,
            Some(w) => dist[w] == dist[u] + 1 && augment(w, adj, mate_u, mate_v, dist, next),
        };
        if ok {
            mate_u[u] = Some(v);
            mate_v[v] = Some(u);
            return true;
        }
    }
    dist[u] = usize::MAX;
    false
}

/// Matching-based decision on an instance with integral `M` and radii.
pub fn decide_matching(inst: &Instance, d: f64) -> Result<DecisionOutcome> {
    inst.require_sensors()?;
    let h = build_h(inst, d)?;
    let matching = max_matching(&h);
    if matching.len() < h.unit_edges {
        return Ok(DecisionOutcome::Infeasible);
    }
    let mut owner_of = vec![0usize; h.unit_edges];
    for &(u, v) in &matching.pairs {
        owner_of[u] = h.slot_owner(v);
    }
    let mut list: Vec<SubEdge> = Vec::with_capacity(h.unit_edges);
    for (u, &owner) in owner_of.iter().enumerate() {
        match list.last_mut() {
            Some(last) if last.owner == owner => last.end = (u + 1) as f64,
            _ => list.push(SubEdge::new(u as f64, (u + 1) as f64, owner)),
        }
    }
    let (_, _, solution) = lp_round::aggregate(inst, &SubEdgeList::new(list))?;
    Ok(DecisionOutcome::Feasible(solution))
}

/// Decides on the instance scaled by `scale` and maps the placement back.
/// `M * scale` and every `r_i * scale` must be integers.
pub fn decide_matching_scaled(inst: &Instance, d: f64, scale: f64) -> Result<DecisionOutcome> {
    if !(scale.is_finite() && scale > 0.0) {
        return Err(Error::Precondition(format!("scale {scale} must be > 0")));
    }
    as_integer("barrier length", inst.barrier_length(), scale)?;
    for s in inst.sensors() {
        as_integer("sensor radius", s.r, scale)?;
    }
    let scaled = Instance::new(
        (inst.barrier_length() * scale).round(),
        inst.sensors()
            .iter()
            .map(|s| Sensor::new(s.x * scale, s.y * scale, (s.r * scale).round()))
            .collect(),
    )?;
    Ok(match decide_matching(&scaled, d * scale)? {
        DecisionOutcome::Infeasible => DecisionOutcome::Infeasible,
        DecisionOutcome::Feasible(sol) => DecisionOutcome::Feasible(Solution::new(
            inst,
            sol.positions()
                .iter()
                .map(|p| p.map(|c| c / scale))
                .collect(),
        )?),
    })
}
