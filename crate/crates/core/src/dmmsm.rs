//! Discretization of the barrier at a fixed movement bound.
//!
//! Every clipped reach endpoint becomes a vertex, so each sensor's reach
//! window is a contiguous run of atomic edges.

use std::ops::Range;

use crate::model::{reach_range, Instance};
use crate::tolerance::eps;

/// Breakpoint path over `[0, M]` plus the edge window of every sensor.
#[derive(Debug, Clone, PartialEq)]
pub struct BarrierGraph {
    vertices: Vec<f64>,
    windows: Vec<Range<usize>>,
}

impl BarrierGraph {
    pub fn vertices(&self) -> &[f64] {
        &self.vertices
    }

    pub fn edge_count(&self) -> usize {
        self.vertices.len() - 1
    }

    /// `(start, end)` of edge `j`.
    pub fn edge(&self, j: usize) -> (f64, f64) {
        (self.vertices[j], self.vertices[j + 1])
    }

    pub fn edge_len(&self, j: usize) -> f64 {
        self.vertices[j + 1] - self.vertices[j]
    }

    pub fn edge_lengths(&self) -> Vec<f64> {
        self.vertices.windows(2).map(|w| w[1] - w[0]).collect()
    }

    /// Edges lying inside sensor `i`'s clipped reach window; empty when the
    /// sensor cannot reach the barrier.
    pub fn window(&self, i: usize) -> Range<usize> {
        self.windows[i].clone()
    }

    pub fn windows(&self) -> &[Range<usize>] {
        &self.windows
    }

    pub fn sensor_count(&self) -> usize {
        self.windows.len()
    }

    fn vertex_index(&self, x: f64) -> usize {
        // nearest vertex; every clipped endpoint is a vertex within eps
        let k = self.vertices.partition_point(|&v| v < x);
        if k == 0 {
            0
        } else if k == self.vertices.len() || (x - self.vertices[k - 1]) < (self.vertices[k] - x) {
            k - 1
        } else {
            k
        }
    }
}

/// Builds the breakpoint graph of `inst` at movement bound `d`.
pub fn transfer(inst: &Instance, d: f64) -> BarrierGraph {
    let m = inst.barrier_length();
    let tol = eps();
    let clipped: Vec<Option<(f64, f64)>> = inst
        .sensors()
        .iter()
        .map(|s| reach_range(s, d).and_then(|rr| rr.clipped(m)))
        .collect();

    let mut points: Vec<f64> = clipped
        .iter()
        .flatten()
        .flat_map(|&(a, b)| [a, b])
        .filter(|&p| p > tol && p < m - tol)
        .collect();
    points.sort_by(f64::total_cmp);

    let mut vertices = Vec::with_capacity(points.len() + 2);
    vertices.push(0.0);
    for p in points {
        if p - vertices.last().copied().unwrap_or(0.0) > tol {
            vertices.push(p);
        }
    }
    if m - vertices.last().copied().unwrap_or(0.0) > tol {
        vertices.push(m);
    } else {
        *vertices.last_mut().expect("non-empty") = m;
    }
    if vertices.len() == 1 {
        // m <= tol: keep a single degenerate edge so the graph still tiles [0, M]
        vertices = vec![0.0, m];
    }

    let mut graph = BarrierGraph {
        vertices,
        windows: Vec::with_capacity(inst.len()),
    };
    for window in &clipped {
        let range = match *window {
            Some((a, b)) if b - a > tol => graph.vertex_index(a)..graph.vertex_index(b),
            _ => 0..0,
        };
        graph.windows.push(range);
    }
    graph
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Sensor;

    fn assert_close_slice(got: &[f64], want: &[f64]) {
        assert_eq!(got.len(), want.len(), "{got:?} vs {want:?}");
        for (g, w) in got.iter().zip(want) {
            assert!((g - w).abs() < 1e-9, "{got:?} vs {want:?}");
        }
    }

    #[test]
    fn ori_breakpoints() {
        let inst = Instance::new(
            6.0,
            vec![
                Sensor::new(3.0, 0.0, 1.0),
                Sensor::new(3.0, -1.2, 1.0),
                Sensor::new(3.0, 2.0, 1.0),
            ],
        )
        .unwrap();
        let g = transfer(&inst, 2.0);
        assert_close_slice(g.vertices(), &[0.0, 0.4, 2.0, 4.0, 5.6, 6.0]);
        assert_close_slice(&g.edge_lengths(), &[0.4, 1.6, 2.0, 1.6, 0.4]);
        assert_eq!(g.window(0), 0..5);
        assert_eq!(g.window(1), 1..4);
        assert_eq!(g.window(2), 2..3);
    }

    #[test]
    fn single_sensor_single_edge() {
        let inst = Instance::new(2.0, vec![Sensor::on_line(1.0, 1.0)]).unwrap();
        let g = transfer(&inst, 0.0);
        assert_eq!(g.vertices(), &[0.0, 2.0]);
        assert_eq!(g.window(0), 0..1);
    }

    #[test]
    fn sensor_left_of_barrier_adds_nothing() {
        // reach [-5, -1]
        let inst = Instance::new(
            4.0,
            vec![Sensor::on_line(-3.0, 1.0), Sensor::on_line(2.0, 2.0)],
        )
        .unwrap();
        let g = transfer(&inst, 1.0);
        assert_eq!(g.vertices(), &[0.0, 4.0]);
        assert!(g.window(0).is_empty());
        assert_eq!(g.window(1), 0..1);
    }

    #[test]
    fn unreachable_sensor_has_empty_window() {
        let inst = Instance::new(4.0, vec![Sensor::new(2.0, 3.0, 2.0)]).unwrap();
        let g = transfer(&inst, 1.0);
        assert!(g.window(0).is_empty());
        assert_eq!(g.vertices(), &[0.0, 4.0]);
    }
}
