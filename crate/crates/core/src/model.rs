//! Problem representation, coverage geometry and solution checking.
//!
//! The barrier is the segment `[0, M]` of the x-axis. A sensor at `(x, y)`
//! with radius `r` that moves to `(c, 0)` covers `[c - r, c + r]`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tolerance::eps;

/// A mobile sensor with its original position and sensing radius.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sensor {
    pub x: f64,
    pub y: f64,
    pub r: f64,
}

impl Sensor {
    pub const fn new(x: f64, y: f64, r: f64) -> Self {
        Sensor { x, y, r }
    }

    /// Sensor already lying on the barrier line.
    pub const fn on_line(x: f64, r: f64) -> Self {
        Sensor { x, y: 0.0, r }
    }

    /// Euclidean distance from the original position to `(center, 0)`.
    #[inline]
    pub fn distance_to(&self, center: f64) -> f64 {
        (self.x - center).hypot(self.y)
    }

    fn validate(&self, index: usize) -> Result<()> {
        if !(self.x.is_finite() && self.y.is_finite() && self.r.is_finite()) {
            return Err(Error::InvalidInstance(format!(
                "sensor {index} has a non-finite field"
            )));
        }
        if self.r <= 0.0 {
            return Err(Error::InvalidInstance(format!(
                "sensor {index} has radius {} (must be > 0)",
                self.r
            )));
        }
        Ok(())
    }
}

#[derive(Deserialize)]
struct RawInstance {
    barrier_length: f64,
    sensors: Vec<Sensor>,
}

/// A barrier `[0, M]` together with the sensors available to cover it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawInstance")]
pub struct Instance {
    barrier_length: f64,
    sensors: Vec<Sensor>,
}

impl TryFrom<RawInstance> for Instance {
    type Error = Error;

    fn try_from(raw: RawInstance) -> Result<Self> {
        Instance::new(raw.barrier_length, raw.sensors)
    }
}

impl Instance {
    /// Validates `M > 0` and every sensor. An empty sensor list is accepted
    /// here; solvers reject it.
    pub fn new(barrier_length: f64, sensors: Vec<Sensor>) -> Result<Self> {
        if !(barrier_length.is_finite() && barrier_length > 0.0) {
            return Err(Error::InvalidInstance(format!(
                "barrier length {barrier_length} must be finite and > 0"
            )));
        }
        for (i, s) in sensors.iter().enumerate() {
            s.validate(i)?;
        }
        Ok(Instance {
            barrier_length,
            sensors,
        })
    }

    #[inline]
    pub fn barrier_length(&self) -> f64 {
        self.barrier_length
    }

    #[inline]
    pub fn sensors(&self) -> &[Sensor] {
        &self.sensors
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.sensors.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.sensors.is_empty()
    }

    /// Largest radius over all sensors, reachable or not. Zero when empty.
    pub fn r_max(&self) -> f64 {
        self.sensors.iter().map(|s| s.r).fold(0.0, f64::max)
    }

    /// Total coverage capacity `sum 2 r_i`.
    pub fn total_capacity(&self) -> f64 {
        self.sensors.iter().map(|s| 2.0 * s.r).sum()
    }

    /// Whether the sensors together are long enough to cover the barrier.
    pub fn has_capacity(&self) -> bool {
        self.total_capacity() >= self.barrier_length - eps()
    }

    pub(crate) fn require_sensors(&self) -> Result<()> {
        if self.sensors.is_empty() {
            Err(Error::EmptyInstance)
        } else {
            Ok(())
        }
    }
}

/// Reachable part of the barrier line for one sensor under a movement bound.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReachRange {
    /// Leftmost coverable point.
    pub l: f64,
    /// Rightmost coverable point.
    pub g: f64,
    pub c_min: f64,
    pub c_max: f64,
}

impl ReachRange {
    /// `[l, g]` clipped to the barrier; `None` when it misses `[0, m]`
    /// entirely.
    pub fn clipped(&self, m: f64) -> Option<(f64, f64)> {
        let lo = self.l.max(0.0);
        let hi = self.g.min(m);
        (lo <= hi).then_some((lo, hi))
    }
}

/// Reach range of `s` when it may move at most `d`. `None` when the sensor
/// cannot touch the barrier line. Values are not clipped to the barrier.
pub fn reach_range(s: &Sensor, d: f64) -> Option<ReachRange> {
    let dy = s.y.abs();
    if d < dy {
        return None;
    }
    let h = (d * d - dy * dy).max(0.0).sqrt();
    let c_min = s.x - h;
    let c_max = s.x + h;
    Some(ReachRange {
        l: c_min - s.r,
        g: c_max + s.r,
        c_min,
        c_max,
    })
}

/// Maximum distance from any sensor to any barrier point. The distance to a
/// point is convex along the segment, so only the endpoints matter.
pub fn max_barrier_distance(inst: &Instance) -> Result<f64> {
    inst.require_sensors()?;
    let m = inst.barrier_length();
    Ok(inst
        .sensors()
        .iter()
        .map(|s| s.distance_to(0.0).max(s.distance_to(m)))
        .fold(0.0, f64::max))
}

/// Ordered set of disjoint closed intervals inside the barrier.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SegmentSet {
    segments: Vec<(f64, f64)>,
}

impl SegmentSet {
    pub fn new(segments: Vec<(f64, f64)>) -> Result<Self> {
        for (k, &(a, b)) in segments.iter().enumerate() {
            if !(a.is_finite() && b.is_finite()) || a >= b {
                return Err(Error::InvalidSegments(format!(
                    "segment {k} = [{a}, {b}] is empty or non-finite"
                )));
            }
            if k > 0 && segments[k - 1].1 >= a {
                return Err(Error::InvalidSegments(format!(
                    "segment {k} overlaps or precedes its predecessor"
                )));
            }
        }
        Ok(SegmentSet { segments })
    }

    pub fn empty() -> Self {
        SegmentSet::default()
    }

    pub fn segments(&self) -> &[(f64, f64)] {
        &self.segments
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn total_length(&self) -> f64 {
        self.segments.iter().map(|(a, b)| b - a).sum()
    }
}

/// Relocation of every sensor: a barrier center, or `None` when unused.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    positions: Vec<Option<f64>>,
    moves: Vec<Option<f64>>,
    max_move: f64,
}

impl Solution {
    /// Builds the solution and records each used sensor's movement.
    pub fn new(inst: &Instance, positions: Vec<Option<f64>>) -> Result<Self> {
        if positions.len() != inst.len() {
            return Err(Error::Precondition(format!(
                "{} positions for {} sensors",
                positions.len(),
                inst.len()
            )));
        }
        if let Some(bad) = positions.iter().flatten().find(|p| !p.is_finite()) {
            return Err(Error::Precondition(format!("non-finite position {bad}")));
        }
        let moves: Vec<Option<f64>> = positions
            .iter()
            .zip(inst.sensors())
            .map(|(p, s)| p.map(|c| s.distance_to(c)))
            .collect();
        let max_move = moves.iter().flatten().copied().fold(0.0, f64::max);
        Ok(Solution {
            positions,
            moves,
            max_move,
        })
    }

    pub fn positions(&self) -> &[Option<f64>] {
        &self.positions
    }

    pub fn moves(&self) -> &[Option<f64>] {
        &self.moves
    }

    /// Largest movement over used sensors; zero when none is used.
    pub fn max_move(&self) -> f64 {
        self.max_move
    }

    pub fn used(&self) -> usize {
        self.positions.iter().flatten().count()
    }
}

/// Result of a fixed-bound decision procedure.
#[derive(Debug, Clone, PartialEq)]
pub enum DecisionOutcome {
    Infeasible,
    Feasible(Solution),
}

impl DecisionOutcome {
    pub fn is_feasible(&self) -> bool {
        matches!(self, DecisionOutcome::Feasible(_))
    }

    pub fn solution(&self) -> Option<&Solution> {
        match self {
            DecisionOutcome::Feasible(s) => Some(s),
            DecisionOutcome::Infeasible => None,
        }
    }

    pub fn into_solution(self) -> Option<Solution> {
        match self {
            DecisionOutcome::Feasible(s) => Some(s),
            DecisionOutcome::Infeasible => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verification {
    pub covered: bool,
    pub max_move: f64,
    pub gaps: SegmentSet,
}

/// Checks that the placed sensors cover `[0, M]` and reports uncovered gaps.
pub fn verify_solution(inst: &Instance, sol: &Solution) -> Verification {
    let m = inst.barrier_length();
    let tol = eps();
    let mut spans: Vec<(f64, f64)> = sol
        .positions()
        .iter()
        .zip(inst.sensors())
        .filter_map(|(p, s)| p.map(|c| (c - s.r, c + s.r)))
        .collect();
    spans.sort_by(|a, b| a.0.total_cmp(&b.0));

    let mut gaps = Vec::new();
    let mut reach = 0.0_f64;
    for (a, b) in spans {
        if a >= m {
            break;
        }
        if a > reach + tol {
            gaps.push((reach, a));
        }
        reach = reach.max(b);
    }
    if reach < m - tol {
        gaps.push((reach, m));
    }
    let covered = gaps.is_empty();
    Verification {
        covered,
        max_move: sol.max_move(),
        // gaps are strictly increasing and non-empty by construction
        gaps: SegmentSet { segments: gaps },
    }
}

/// Largest part of `[x, x']` sensor `s` can cover within movement `d`.
pub fn lambda_cov(s: &Sensor, d: f64, x: f64, x_end: f64) -> f64 {
    match reach_range(s, d) {
        Some(rr) if rr.g > x && rr.l < x_end => {
            (2.0 * s.r).min(x_end.min(rr.g) - x.max(rr.l)).max(0.0)
        }
        _ => 0.0,
    }
}

/// Total coverage `s` can contribute to a set of segments, capped at `2r`.
pub fn sigma_cov(s: &Sensor, d: f64, set: &SegmentSet) -> f64 {
    let sum: f64 = set
        .segments()
        .iter()
        .map(|&(a, b)| lambda_cov(s, d, a, b))
        .sum();
    sum.min(2.0 * s.r)
}

/// Capacity test over a segment set. `false` proves the instance infeasible
/// at movement bound `d`.
pub fn certificate_check(inst: &Instance, d: f64, set: &SegmentSet) -> bool {
    let supply: f64 = inst.sensors().iter().map(|s| sigma_cov(s, d, set)).sum();
    supply >= set.total_length() - eps()
}
