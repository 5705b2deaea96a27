//! Fractional cover relaxation of the discretized barrier and its rounding.
//!
//! The relaxation assigns each sensor `i` a length `x[i][j]` on every edge
//! `j` of its window, with at most `2 r_i` per sensor and at most `|e_j|` per
//! edge. A full-length optimum means the instance may be feasible at `D`;
//! rounding that optimum gives a cover within `D + r_max`. A shorter optimum
//! proves infeasibility at `D`.
//!
//! The constraint matrix is a network matrix, so the optimum is computed as
//! a maximum flow (`source -> sensor -> edge -> sink`). A dense simplex over
//! the same model is kept as an independent cross-check.

pub mod flow;
pub mod rounding;
pub mod simplex;

use crate::dmmsm::{transfer, BarrierGraph};
use crate::error::{Error, Result};
use crate::model::{DecisionOutcome, Instance, Solution};
use crate::tolerance::eps;

use flow::FlowNetwork;
pub use rounding::{
    exchange_phase, finalize_positions, mover, pre_aggregate, swap_phase, Block, BlockAssignment,
    MoveKind, SubEdge, SubEdgeList,
};

#[derive(Debug, Clone, PartialEq)]
pub struct LpModel {
    edge_lengths: Vec<f64>,
    capacities: Vec<f64>,
    vars: Vec<(usize, usize)>,
}

impl LpModel {
    /// `(sensor, edge)` for every variable, grouped by sensor.
    pub fn vars(&self) -> &[(usize, usize)] {
        &self.vars
    }

    pub fn edge_lengths(&self) -> &[f64] {
        &self.edge_lengths
    }

    /// Per-sensor coverage capacity `2 r_i`.
    pub fn capacities(&self) -> &[f64] {
        &self.capacities
    }

    pub fn sensor_count(&self) -> usize {
        self.capacities.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_lengths.len()
    }

    /// Dense `A x <= b` form: sensor rows, then edge rows, then one bound
    /// row per variable.
    pub fn dense_form(&self) -> (Vec<Vec<f64>>, Vec<f64>) {
        let nv = self.vars.len();
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for (i, &cap) in self.capacities.iter().enumerate() {
            rows.push(
                self.vars
                    .iter()
                    .map(|&(s, _)| f64::from(u8::from(s == i)))
                    .collect(),
            );
            rhs.push(cap);
        }
        for (j, &len) in self.edge_lengths.iter().enumerate() {
            rows.push(
                self.vars
                    .iter()
                    .map(|&(_, e)| f64::from(u8::from(e == j)))
                    .collect(),
            );
            rhs.push(len);
        }
        for (k, &(_, e)) in self.vars.iter().enumerate() {
            let mut row = vec![0.0; nv];
            row[k] = 1.0;
            rows.push(row);
            rhs.push(self.edge_lengths[e]);
        }
        (rows, rhs)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FractionalCover {
    /// Aligned with [`LpModel::vars`].
    pub values: Vec<f64>,
    pub objective: f64,
}

impl FractionalCover {
    /// Largest violation of any model constraint.
    pub fn max_violation(&self, model: &LpModel) -> f64 {
        let mut per_sensor = vec![0.0; model.sensor_count()];
        let mut per_edge = vec![0.0; model.edge_count()];
        let mut worst = 0.0_f64;
        for (&(s, e), &v) in model.vars.iter().zip(&self.values) {
            per_sensor[s] += v;
            per_edge[e] += v;
            worst = worst.max(-v).max(v - model.edge_lengths[e]);
        }
        for (used, cap) in per_sensor.iter().zip(&model.capacities) {
            worst = worst.max(used - cap);
        }
        for (used, len) in per_edge.iter().zip(&model.edge_lengths) {
            worst = worst.max(used - len);
        }
        worst
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LpBackend {
    #[default]
    MaxFlow,
    Simplex,
}

pub fn build_lp(graph: &BarrierGraph, inst: &Instance) -> LpModel {
    let vars = graph
        .windows()
        .iter()
        .enumerate()
        .flat_map(|(i, w)| w.clone().map(move |j| (i, j)))
        .collect();
    LpModel {
        edge_lengths: graph.edge_lengths(),
        capacities: inst.sensors().iter().map(|s| 2.0 * s.r).collect(),
        vars,
    }
}

pub fn solve_lp(model: &LpModel) -> FractionalCover {
    solve_lp_with(model, LpBackend::MaxFlow)
}

pub fn solve_lp_with(model: &LpModel, backend: LpBackend) -> FractionalCover {
    match backend {
        LpBackend::MaxFlow => solve_by_flow(model),
        LpBackend::Simplex => solve_by_simplex(model),
    }
}

fn solve_by_flow(model: &LpModel) -> FractionalCover {
    let n = model.sensor_count();
    let k = model.edge_count();
    let source = n + k;
    let sink = source + 1;
    let scale = model.edge_lengths.iter().sum::<f64>().max(1.0);
    let mut net = FlowNetwork::new(n + k + 2, 1e-13 * scale);
    for (i, &cap) in model.capacities.iter().enumerate() {
        net.add_arc(source, i, cap);
    }
    let arcs: Vec<_> = model
        .vars
        .iter()
        .map(|&(i, j)| net.add_arc(i, n + j, model.edge_lengths[j]))
        .collect();
    for (j, &len) in model.edge_lengths.iter().enumerate() {
        net.add_arc(n + j, sink, len);
    }
    let objective = net.max_flow(source, sink);
    FractionalCover {
        values: arcs.iter().map(|&a| net.flow(a)).collect(),
        objective,
    }
}

fn solve_by_simplex(model: &LpModel) -> FractionalCover {
    let (rows, rhs) = model.dense_form();
    let c = vec![1.0; model.vars.len()];
    match simplex::maximize(&c, &rows, &rhs, 1e-12) {
        simplex::SimplexStatus::Optimal { objective, x } => FractionalCover {
            values: x,
            objective,
        },
        // every variable is bounded by its edge row
        simplex::SimplexStatus::Unbounded => unreachable!("relaxation is bounded"),
    }
}

fn full_cover_threshold(m: f64) -> f64 {
    m - eps() * m.max(1.0)
}

/// `true` when the relaxation covers the whole barrier at movement bound `d`.
pub fn decide_lp(inst: &Instance, d: f64) -> Result<bool> {
    inst.require_sensors()?;
    let graph = transfer(inst, d);
    let cover = solve_lp(&build_lp(&graph, inst));
    Ok(cover.objective >= full_cover_threshold(inst.barrier_length()))
}

/// Every intermediate product of one rounding run.
#[derive(Debug, Clone, PartialEq)]
pub struct RoundingTrace {
    pub graph: BarrierGraph,
    pub model: LpModel,
    pub cover: FractionalCover,
    pub pre_aggregated: SubEdgeList,
    pub swapped: SubEdgeList,
    pub blocks: BlockAssignment,
    pub solution: Solution,
}

/// Runs the full pipeline and keeps every stage. `None` when the relaxation
/// does not cover the barrier.
pub fn round_traced(inst: &Instance, d: f64) -> Result<Option<RoundingTrace>> {
    inst.require_sensors()?;
    let graph = transfer(inst, d);
    let model = build_lp(&graph, inst);
    let cover = solve_lp(&model);
    if cover.objective < full_cover_threshold(inst.barrier_length()) {
        return Ok(None);
    }
    let pre_aggregated = pre_aggregate(&cover, &model, &graph)?;
    let (swapped, blocks, solution) = aggregate(inst, &pre_aggregated)?;
    Ok(Some(RoundingTrace {
        graph,
        model,
        cover,
        pre_aggregated,
        swapped,
        blocks,
        solution,
    }))
}

/// Swap, exchange and final placement over an owner-labelled tiling.
pub(crate) fn aggregate(
    inst: &Instance,
    pieces: &SubEdgeList,
) -> Result<(SubEdgeList, BlockAssignment, Solution)> {
    pieces.validate_tiling(inst.barrier_length())?;
    let swapped = swap_phase(pieces)?;
    if let Some(at) = swapped.find_interleaving() {
        return Err(Error::Precondition(format!(
            "interleaving {at:?} survived the swap phase"
        )));
    }
    let blocks = exchange_phase(&swapped)?;
    let solution = finalize_positions(inst, &blocks)?;
    Ok((swapped, blocks, solution))
}

/// Relaxation-and-rounding decision at movement bound `d`.
pub fn round_solution(inst: &Instance, d: f64) -> Result<DecisionOutcome> {
    Ok(match round_traced(inst, d)? {
        Some(trace) => DecisionOutcome::Feasible(trace.solution),
        None => DecisionOutcome::Infeasible,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{verify_solution, Sensor};

    fn ori() -> Instance {
        Instance::new(
            6.0,
            vec![
                Sensor::new(3.0, 0.0, 1.0),
                Sensor::new(3.0, -1.2, 1.0),
                Sensor::new(3.0, 2.0, 1.0),
            ],
        )
        .unwrap()
    }

    fn gap() -> Instance {
        Instance::new(
            10.0,
            vec![Sensor::on_line(5.0, 1.0), Sensor::on_line(5.0, 4.0)],
        )
        .unwrap()
    }

    #[test]
    fn ori_model_shape() {
        let inst = ori();
        let model = build_lp(&transfer(&inst, 2.0), &inst);
        assert_eq!(model.edge_count(), 5);
        assert_eq!(model.sensor_count(), 3);
        let per_sensor: Vec<Vec<usize>> = (0..3)
            .map(|i| {
                model
                    .vars()
                    .iter()
                    .filter(|v| v.0 == i)
                    .map(|v| v.1)
                    .collect()
            })
            .collect();
        assert_eq!(
            per_sensor,
            vec![vec![0, 1, 2, 3, 4], vec![1, 2, 3], vec![2]]
        );
    }

    #[test]
    fn single_edge_model() {
        let inst = Instance::new(2.0, vec![Sensor::on_line(1.0, 1.0)]).unwrap();
        let model = build_lp(&transfer(&inst, 0.0), &inst);
        assert_eq!(model.vars(), &[(0, 0)]);
        let (rows, _) = model.dense_form();
        assert_eq!(rows.len(), 3);
    }

    #[test]
    fn empty_window_contributes_no_variables() {
        let inst = Instance::new(
            4.0,
            vec![Sensor::new(2.0, 9.0, 1.0), Sensor::on_line(2.0, 2.0)],
        )
        .unwrap();
        let model = build_lp(&transfer(&inst, 1.0), &inst);
        assert!(model.vars().iter().all(|v| v.0 == 1));
    }

    #[test]
    fn gap_instance_objectives() {
        let inst = gap();
        let full = solve_lp(&build_lp(&transfer(&inst, 1.0), &inst));
        assert!((full.objective - 10.0).abs() < 1e-9);
        let short = solve_lp(&build_lp(&transfer(&inst, 0.5), &inst));
        assert!(short.objective < 10.0 - 1e-6);
        assert!(decide_lp(&inst, 1.0).unwrap());
        assert!(!decide_lp(&inst, 0.5).unwrap());
    }

    #[test]
    fn empty_model_has_zero_objective() {
        let model = LpModel {
            edge_lengths: vec![1.0],
            capacities: vec![2.0],
            vars: vec![],
        };
        assert_eq!(solve_lp(&model).objective, 0.0);
        assert_eq!(solve_lp_with(&model, LpBackend::Simplex).objective, 0.0);
    }

    #[test]
    fn capacity_deficit_is_infeasible_at_any_bound() {
        let inst = Instance::new(
            6.0,
            vec![Sensor::on_line(0.0, 1.0), Sensor::on_line(6.0, 1.0)],
        )
        .unwrap();
        for d in [0.0, 1.0, 10.0, 100.0] {
            assert!(!decide_lp(&inst, d).unwrap());
        }
    }

    #[test]
    fn backends_agree_on_ori() {
        let inst = ori();
        let model = build_lp(&transfer(&inst, 2.0), &inst);
        let a = solve_lp_with(&model, LpBackend::MaxFlow);
        let b = solve_lp_with(&model, LpBackend::Simplex);
        assert!((a.objective - b.objective).abs() < 1e-9);
        assert!(a.max_violation(&model) < 1e-9 && b.max_violation(&model) < 1e-9);
    }

    #[test]
    fn ori_rounds_within_bound() {
        let inst = ori();
        let trace = round_traced(&inst, 2.0).unwrap().expect("feasible");
        let v = verify_solution(&inst, &trace.solution);
        assert!(v.covered);
        assert!(v.max_move <= 3.0 + 1e-9);
        let (lo, hi) = trace.blocks.offset_bounds;
        assert!(lo >= -1.0 - 1e-9 && hi <= 1.0 + 1e-9);
        assert!((trace.pre_aggregated.total_length() - 6.0).abs() < 1e-9);
    }

    #[test]
    fn pre_aggregate_rejects_partial_cover() {
        let inst = gap();
        let graph = transfer(&inst, 0.5);
        let model = build_lp(&graph, &inst);
        let cover = solve_lp(&model);
        assert!(matches!(
            pre_aggregate(&cover, &model, &graph),
            Err(Error::NotFullCover { .. })
        ));
    }

    #[test]
    fn gap_instance_rounding() {
        let inst = gap();
        let sol = round_solution(&inst, 4.0).unwrap().into_solution().unwrap();
        assert!(verify_solution(&inst, &sol).covered);
        assert!(sol.max_move() <= 8.0 + 1e-9);
        assert_eq!(
            round_solution(&inst, 0.5).unwrap(),
            DecisionOutcome::Infeasible
        );
    }
}
