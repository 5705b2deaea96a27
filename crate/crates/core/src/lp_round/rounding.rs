//! Aggregation of a fractional cover into one contiguous block per sensor.
//!
//! Pipeline: pre-aggregation splits every edge among the sensors covering
//! it, the swap phase removes interleaved ownership (`A B A B`), the
//! exchange phase removes nesting (`A B A`) by sliding components, and the
//! final step centers each sensor on its block.

use crate::dmmsm::BarrierGraph;
use crate::error::{Error, Result};
use crate::model::{Instance, Solution};
use crate::tolerance::eps;

use super::{FractionalCover, LpModel};

/// An ownership-labelled piece of the barrier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SubEdge {
    pub start: f64,
    pub end: f64,
    pub owner: usize,
    /// Signed drift from the position the piece had when the exchange
    /// phase started.
    pub offset: f64,
}

impl SubEdge {
    pub fn new(start: f64, end: f64, owner: usize) -> Self {
        SubEdge {
            start,
            end,
            owner,
            offset: 0.0,
        }
    }

    #[inline]
    pub fn len(&self) -> f64 {
        self.end - self.start
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len() <= 0.0
    }
}

/// Left-to-right list of sub-edges tiling `[0, M]`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SubEdgeList {
    items: Vec<SubEdge>,
}

impl SubEdgeList {
    /// Takes ownership of `items` as given; call [`SubEdgeList::validate_tiling`]
    /// to check them.
    pub fn new(items: Vec<SubEdge>) -> Self {
        SubEdgeList { items }
    }

    pub fn items(&self) -> &[SubEdge] {
        &self.items
    }

    pub fn into_items(self) -> Vec<SubEdge> {
        self.items
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn total_length(&self) -> f64 {
        self.items.iter().map(SubEdge::len).sum()
    }

    /// Covered length per owner, indexed by sensor.
    pub fn owner_lengths(&self, sensors: usize) -> Vec<f64> {
        let mut out = vec![0.0; sensors];
        for e in &self.items {
            out[e.owner] += e.len();
        }
        out
    }

    /// Checks that the pieces are contiguous from `0` to `m`.
    pub fn validate_tiling(&self, m: f64) -> Result<()> {
        let tol = eps() * m.max(1.0);
        let mut cursor = 0.0;
        for (k, e) in self.items.iter().enumerate() {
            if (e.start - cursor).abs() > tol || e.end < e.start - tol {
                return Err(Error::Precondition(format!(
                    "sub-edge {k} = [{}, {}] does not continue the tiling at {cursor}",
                    e.start, e.end
                )));
            }
            cursor = e.end;
        }
        if (cursor - m).abs() > tol {
            return Err(Error::Precondition(format!(
                "sub-edges end at {cursor}, barrier ends at {m}"
            )));
        }
        Ok(())
    }

    /// Whether two owners interleave as `A .. B .. A .. B`.
    pub fn has_interleaving(&self) -> bool {
        self.find_interleaving().is_some()
    }

    /// Positions `(j1, j1', j2, j2')` of an interleaved pair, if any.
    pub fn find_interleaving(&self) -> Option<(usize, usize, usize, usize)> {
        let owners: Vec<usize> = self.items.iter().map(|e| e.owner).collect();
        let k = owners.len();
        // for every ordered owner pair, the pattern exists iff some piece of B
        // lies strictly between two pieces of A and another piece of B lies
        // after the later one
        for j1 in 0..k {
            for j1p in j1 + 1..k {
                if owners[j1p] == owners[j1] {
                    continue;
                }
                for j2 in j1p + 1..k {
                    if owners[j2] != owners[j1] {
                        continue;
                    }
                    for j2p in j2 + 1..k {
                        if owners[j2p] == owners[j1p] {
                            return Some((j1, j1p, j2, j2p));
                        }
                    }
                }
            }
        }
        None
    }

    /// Number of maximal same-owner runs per owner.
    pub fn component_counts(&self, sensors: usize) -> Vec<usize> {
        let mut counts = vec![0; sensors];
        for (k, e) in self.items.iter().enumerate() {
            if k == 0 || self.items[k - 1].owner != e.owner {
                counts[e.owner] += 1;
            }
        }
        counts
    }

    /// Joins neighbouring pieces with the same owner. The left piece's offset
    /// is kept.
    fn merge_adjacent(&mut self) {
        let mut merged: Vec<SubEdge> = Vec::with_capacity(self.items.len());
        for e in self.items.drain(..) {
            match merged.last_mut() {
                Some(last) if last.owner == e.owner => last.end = e.end,
                _ => merged.push(e),
            }
        }
        self.items = merged;
    }

    /// Re-lays components end to end from zero, keeping order and lengths.
    fn relayout(&mut self, lengths: &[f64]) {
        let mut cursor = 0.0;
        for (e, &len) in self.items.iter_mut().zip(lengths) {
            e.start = cursor;
            cursor += len;
            e.end = cursor;
        }
    }
}

/// Contiguous interval assigned to one sensor.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Block {
    pub owner: usize,
    pub start: f64,
    pub end: f64,
}

impl Block {
    pub fn len(&self) -> f64 {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.len() <= 0.0
    }
}

/// One block per used sensor, ordered along the barrier.
#[derive(Debug, Clone, PartialEq)]
pub struct BlockAssignment {
    pub blocks: Vec<Block>,
    /// Smallest and largest component offset seen during the exchange.
    pub offset_bounds: (f64, f64),
}

impl BlockAssignment {
    pub fn block_of(&self, owner: usize) -> Option<&Block> {
        self.blocks.iter().find(|b| b.owner == owner)
    }
}

/// Splits every edge among its covering sensors, in ascending sensor order.
pub fn pre_aggregate(
    cover: &FractionalCover,
    model: &LpModel,
    graph: &BarrierGraph,
) -> Result<SubEdgeList> {
    let m = graph.vertices().last().copied().unwrap_or(0.0);
    if cover.objective < m - eps() * m.max(1.0) {
        return Err(Error::NotFullCover {
            objective: cover.objective,
            barrier: m,
        });
    }
    let tol = eps();
    let mut per_edge: Vec<Vec<(usize, f64)>> = vec![Vec::new(); graph.edge_count()];
    for (&(sensor, edge), &value) in model.vars().iter().zip(&cover.values) {
        if value > tol {
            per_edge[edge].push((sensor, value));
        }
    }

    let mut items = Vec::new();
    for (j, contributions) in per_edge.iter_mut().enumerate() {
        let (a, b) = graph.edge(j);
        contributions.sort_by_key(|&(sensor, _)| sensor);
        let total: f64 = contributions.iter().map(|&(_, v)| v).sum();
        if total <= 0.0 {
            return Err(Error::NotFullCover {
                objective: cover.objective,
                barrier: m,
            });
        }
        // full cover: total equals the edge length up to tolerance
        let scale = (b - a) / total;
        let mut cursor = a;
        let last = contributions.len() - 1;
        for (k, &(sensor, value)) in contributions.iter().enumerate() {
            let end = if k == last { b } else { cursor + value * scale };
            items.push(SubEdge::new(cursor, end, sensor));
            cursor = end;
        }
    }
    let mut list = SubEdgeList::new(items);
    list.merge_adjacent();
    Ok(list)
}

/// Removes every `A .. B .. A .. B` pattern by exchanging coverage between
/// the two owners. Lengths per owner and the tiling are preserved.
pub fn swap_phase(list: &SubEdgeList) -> Result<SubEdgeList> {
    let tol = eps();
    let mut items = list.items.clone();
    let sensors = items.iter().map(|e| e.owner + 1).max().unwrap_or(0);
    let mut processed = vec![false; sensors];
    let budget = 64 * (items.len() + 1) * (items.len() + 1) * (sensors + 1);
    let mut steps = 0usize;

    while let Some(current) = items.iter().find(|e| !processed[e.owner]).map(|e| e.owner) {
        while let Some((u, q)) = find_swap(&items, current, &processed) {
            steps += 1;
            if steps > budget {
                return Err(Error::Precondition(
                    "swap phase exceeded its step budget".into(),
                ));
            }
            swap_pieces(&mut items, u, q, tol);
            merge_items(&mut items);
        }
        processed[current] = true;
    }
    Ok(SubEdgeList::new(items))
}

/// Finds a piece `u` of an unprocessed owner sitting between two consecutive
/// pieces of `current`, where the same owner also has a piece after the
/// later one `q`.
fn find_swap(items: &[SubEdge], current: usize, processed: &[bool]) -> Option<(usize, usize)> {
    let mine: Vec<usize> = (0..items.len())
        .filter(|&k| items[k].owner == current)
        .collect();
    for pair in mine.windows(2) {
        let (p, q) = (pair[0], pair[1]);
        for u in p + 1..q {
            let other = items[u].owner;
            if processed[other] {
                continue;
            }
            if items[q + 1..].iter().any(|e| e.owner == other) {
                return Some((u, q));
            }
        }
    }
    None
}

/// Exchanges coverage between piece `u` (owner B) and a later piece `q`
/// (owner A) so that A gains length at `u` and B gains the same amount at `q`.
fn swap_pieces(items: &mut Vec<SubEdge>, u: usize, q: usize, tol: f64) {
    let a_owner = items[q].owner;
    let b_owner = items[u].owner;
    let (len_u, len_q) = (items[u].len(), items[q].len());
    if (len_u - len_q).abs() <= tol {
        items[u].owner = a_owner;
        items[q].owner = b_owner;
    } else if len_u > len_q {
        // A takes the left part of u, B takes all of q
        let split = items[u].start + len_q;
        let right = SubEdge::new(split, items[u].end, b_owner);
        items[u].end = split;
        items[u].owner = a_owner;
        items[q].owner = b_owner;
        items.insert(u + 1, right);
    } else {
        // A takes all of u plus the left part of q, B takes the right part of q
        let split = items[q].end - len_u;
        let right = SubEdge::new(split, items[q].end, b_owner);
        items[u].owner = a_owner;
        items[q].end = split;
        items.insert(q + 1, right);
    }
}

fn merge_items(items: &mut Vec<SubEdge>) {
    let mut list = SubEdgeList::new(std::mem::take(items));
    list.merge_adjacent();
    *items = list.items;
}

/// Outcome of a single [`mover`] step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveKind {
    /// The later component was pulled left next to the earlier one.
    PulledLater,
    /// The earlier component was pushed right next to the later one.
    PushedEarlier,
}

/// Joins components `i` and `i + delta` (same owner, nothing of that owner
/// in between) by sliding one of them and shifting the components between.
///
/// The later component is pulled left when
/// `|C_i| - o_i >= (other lengths of the owner) + o_i`; otherwise `C_i` is
/// pushed right. Intermediate offsets change by the moved length.
pub fn mover(list: &SubEdgeList, i: usize, delta: usize) -> Result<(SubEdgeList, MoveKind)> {
    let items = &list.items;
    let j = i + delta;
    if delta < 2 || j >= items.len() {
        return Err(Error::Precondition(format!(
            "mover needs 1 < delta and i + delta < {}, got i = {i}, delta = {delta}",
            items.len()
        )));
    }
    let owner = items[i].owner;
    if items[j].owner != owner {
        return Err(Error::Precondition(format!(
            "components {i} and {j} have different owners"
        )));
    }
    if items[i + 1..j].iter().any(|e| e.owner == owner) {
        return Err(Error::Precondition(format!(
            "delta = {delta} is not minimal for component {i}"
        )));
    }

    let len_i = items[i].len();
    let offset_i = items[i].offset;
    let others: f64 = items
        .iter()
        .enumerate()
        .filter(|&(k, e)| k != i && e.owner == owner)
        .map(|(_, e)| e.len())
        .sum();

    let mut lengths: Vec<f64> = items.iter().map(SubEdge::len).collect();
    let mut next = items.clone();
    let kind = if len_i - offset_i >= others + offset_i {
        let moved = lengths[j];
        for e in &mut next[i + 1..j] {
            e.offset += moved;
        }
        next.remove(j);
        lengths.remove(j);
        lengths[i] += moved;
        MoveKind::PulledLater
    } else {
        for e in &mut next[i + 1..j] {
            e.offset -= len_i;
        }
        next.remove(i);
        lengths.remove(i);
        // C_j now sits at j - 1
        lengths[j - 1] += len_i;
        MoveKind::PushedEarlier
    };

    let mut out = SubEdgeList::new(next);
    out.relayout(&lengths);
    out.merge_adjacent();
    Ok((out, kind))
}

/// Applies [`mover`] to the leftmost nested pair until every owner holds a
/// single component.
pub fn exchange_phase(list: &SubEdgeList) -> Result<BlockAssignment> {
    let mut state = list.clone();
    for e in &mut state.items {
        e.offset = 0.0;
    }
    state.merge_adjacent();
    let (mut lo, mut hi) = (0.0_f64, 0.0_f64);

    while let Some((i, delta)) = first_nested(&state.items) {
        let (next, _) = mover(&state, i, delta)?;
        state = next;
        for e in &state.items {
            lo = lo.min(e.offset);
            hi = hi.max(e.offset);
        }
    }

    let blocks = state
        .items
        .iter()
        .map(|e| Block {
            owner: e.owner,
            start: e.start,
            end: e.end,
        })
        .collect();
    Ok(BlockAssignment {
        blocks,
        offset_bounds: (lo, hi),
    })
}

/// Smallest `i` having a later component of the same owner that is not its
/// neighbour, with the smallest such `delta`.
fn first_nested(items: &[SubEdge]) -> Option<(usize, usize)> {
    (0..items.len()).find_map(|i| {
        items[i + 1..]
            .iter()
            .position(|e| e.owner == items[i].owner)
            .map(|p| (i, p + 1))
            .filter(|&(_, delta)| delta > 1)
    })
}

/// Centers each sensor on its block as close to its original `x` as possible.
pub fn finalize_positions(inst: &Instance, blocks: &BlockAssignment) -> Result<Solution> {
    let mut positions = vec![None; inst.len()];
    for b in &blocks.blocks {
        let s = inst.sensors()[b.owner];
        let capacity = 2.0 * s.r;
        if b.len() > capacity + eps() * capacity.max(1.0) {
            return Err(Error::BlockTooLong {
                sensor: b.owner,
                length: b.len(),
                capacity,
            });
        }
        if positions[b.owner].is_some() {
            return Err(Error::Precondition(format!(
                "sensor {} owns more than one block",
                b.owner
            )));
        }
        // admissible centers are [end - r, start + r]
        let lo = b.end - s.r;
        let hi = b.start + s.r;
        let center = if lo <= hi {
            s.x.clamp(lo, hi)
        } else {
            0.5 * (lo + hi)
        };
        positions[b.owner] = Some(center);
    }
    Solution::new(inst, positions)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn list(pieces: &[(usize, f64)]) -> SubEdgeList {
        let mut cursor = 0.0;
        SubEdgeList::new(
            pieces
                .iter()
                .map(|&(owner, len)| {
                    let e = SubEdge::new(cursor, cursor + len, owner);
                    cursor += len;
                    e
                })
                .collect(),
        )
    }

    fn owners(l: &SubEdgeList) -> Vec<usize> {
        l.items().iter().map(|e| e.owner).collect()
    }

    #[test]
    fn swap_unweaves_abab() {
        let input = list(&[(0, 1.0), (1, 1.0), (0, 1.0), (1, 1.0)]);
        assert!(input.has_interleaving());
        let out = swap_phase(&input).unwrap();
        assert_eq!(owners(&out), vec![0, 1]);
        assert_eq!(out.owner_lengths(2), vec![2.0, 2.0]);
        out.validate_tiling(4.0).unwrap();
    }

    #[test]
    fn swap_leaves_nested_and_disjoint_alone() {
        let nested = list(&[(0, 1.0), (1, 1.0), (0, 1.0)]);
        assert_eq!(swap_phase(&nested).unwrap(), nested);
        let disjoint = list(&[(0, 1.0), (1, 1.0), (2, 2.0)]);
        assert_eq!(swap_phase(&disjoint).unwrap(), disjoint);
    }

    #[test]
    fn swap_with_unequal_lengths_preserves_owner_totals() {
        let input = list(&[(0, 0.5), (1, 2.0), (0, 1.5), (1, 0.25), (2, 1.0), (1, 0.75)]);
        let before = input.owner_lengths(3);
        let out = swap_phase(&input).unwrap();
        assert!(!out.has_interleaving());
        for (a, b) in before.iter().zip(out.owner_lengths(3)) {
            assert!((a - b).abs() < 1e-12);
        }
        out.validate_tiling(6.0).unwrap();
    }

    #[test]
    fn mover_pulls_later_component_when_first_dominates() {
        // |C_i| = 2, others = 1
        let input = list(&[(0, 2.0), (1, 1.0), (0, 1.0)]);
        let (out, kind) = mover(&input, 0, 2).unwrap();
        assert_eq!(kind, MoveKind::PulledLater);
        assert_eq!(owners(&out), vec![0, 1]);
        assert_eq!(out.items()[1].offset, 1.0);
        assert_eq!(out.items()[0].len(), 3.0);
    }

    #[test]
    fn mover_pushes_first_component_otherwise() {
        // |C_i| = 1, others = 3
        let input = list(&[(0, 1.0), (1, 1.0), (0, 3.0)]);
        let (out, kind) = mover(&input, 0, 2).unwrap();
        assert_eq!(kind, MoveKind::PushedEarlier);
        assert_eq!(owners(&out), vec![1, 0]);
        assert_eq!(out.items()[0].offset, -1.0);
        assert_eq!(out.items()[0].start, 0.0);
        assert_eq!(out.items()[1].len(), 4.0);
    }

    #[test]
    fn mover_tie_takes_pull_branch() {
        let input = list(&[(0, 0.5), (1, 1.0), (0, 0.5)]);
        let (out, kind) = mover(&input, 0, 2).unwrap();
        assert_eq!(kind, MoveKind::PulledLater);
        assert_eq!(owners(&out), vec![0, 1]);
        assert_eq!(out.items()[0].len(), 1.0);
        assert_eq!(out.items()[1].offset, 0.5);
    }

    #[test]
    fn mover_rejects_bad_preconditions() {
        let input = list(&[(0, 1.0), (1, 1.0), (0, 1.0), (0, 1.0)]);
        assert!(mover(&input, 0, 1).is_err());
        assert!(mover(&input, 0, 3).is_err());
        assert!(mover(&input, 1, 2).is_err());
        assert!(mover(&input, 0, 9).is_err());
    }

    #[test]
    fn exchange_on_single_blocks_is_identity() {
        let input = list(&[(0, 1.0), (1, 2.0), (2, 1.0)]);
        let out = exchange_phase(&input).unwrap();
        assert_eq!(out.blocks.len(), 3);
        assert_eq!(out.offset_bounds, (0.0, 0.0));
        assert_eq!(
            out.blocks[1],
            Block {
                owner: 1,
                start: 1.0,
                end: 3.0
            }
        );
    }

    #[test]
    fn exchange_resolves_nesting() {
        let input = list(&[(0, 0.5), (1, 1.0), (0, 0.5)]);
        let out = exchange_phase(&input).unwrap();
        assert_eq!(
            out.blocks,
            vec![
                Block {
                    owner: 0,
                    start: 0.0,
                    end: 1.0
                },
                Block {
                    owner: 1,
                    start: 1.0,
                    end: 2.0
                },
            ]
        );
        assert_eq!(out.offset_bounds, (0.0, 0.5));
    }

    #[test]
    fn finalize_clamps_to_block() {
        let inst = Instance::new(
            6.0,
            vec![
                crate::model::Sensor::on_line(3.0, 1.0),
                crate::model::Sensor::new(3.0, -1.2, 1.0),
            ],
        )
        .unwrap();
        let blocks = BlockAssignment {
            blocks: vec![
                Block {
                    owner: 0,
                    start: 0.0,
                    end: 2.0,
                },
                Block {
                    owner: 1,
                    start: 4.0,
                    end: 6.0,
                },
            ],
            offset_bounds: (0.0, 0.0),
        };
        let sol = finalize_positions(&inst, &blocks).unwrap();
        assert_eq!(sol.positions(), &[Some(1.0), Some(5.0)]);
        assert!((sol.moves()[1].unwrap() - 5.44f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn finalize_rejects_long_block() {
        let inst = Instance::new(3.0, vec![crate::model::Sensor::on_line(1.0, 1.0)]).unwrap();
        let blocks = BlockAssignment {
            blocks: vec![Block {
                owner: 0,
                start: 0.0,
                end: 3.0,
            }],
            offset_bounds: (0.0, 0.0),
        };
        assert!(matches!(
            finalize_positions(&inst, &blocks),
            Err(Error::BlockTooLong { .. })
        ));
    }
}
