//! Bisection over the movement bound with a pluggable decision procedure.

use crate::error::{Error, Result};
use crate::factor2::{factor2_solve, MAX_1D_SENSORS};
use crate::greedy::decide_greedy;
use crate::lp_round::round_solution;
use crate::matching::decide_matching;
use crate::model::{max_barrier_distance, verify_solution, DecisionOutcome, Instance, Solution};
use crate::par::{self, Execution};

/// Fixed-bound decision procedure driven by the search.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DecisionKind {
    Greedy,
    Lp,
    Matching,
}

impl DecisionKind {
    pub const ALL: [DecisionKind; 3] = [
        DecisionKind::Greedy,
        DecisionKind::Lp,
        DecisionKind::Matching,
    ];

    /// Extra movement the procedure may need beyond the bound it accepts.
    pub fn slack(self, inst: &Instance) -> f64 {
        match self {
            DecisionKind::Greedy => 2.0 * inst.r_max(),
            DecisionKind::Lp | DecisionKind::Matching => inst.r_max(),
        }
    }

    pub fn decide(self, inst: &Instance, d: f64) -> Result<DecisionOutcome> {
        match self {
            DecisionKind::Greedy => decide_greedy(inst, d),
            DecisionKind::Lp => round_solution(inst, d),
            DecisionKind::Matching => decide_matching(inst, d),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            DecisionKind::Greedy => "greedy",
            DecisionKind::Lp => "lp",
            DecisionKind::Matching => "matching",
        }
    }
}

/// Which algorithm produced a [`SearchResult`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Decision(DecisionKind),
    Factor2,
}

impl Algorithm {
    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Decision(kind) => kind.name(),
            Algorithm::Factor2 => "factor2",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SearchResult {
    /// Smallest bound the decision procedure accepted.
    pub base_d: f64,
    /// Largest bound it rejected (`None` when it accepted zero).
    pub rejected_d: Option<f64>,
    pub slack: f64,
    /// `base_d + slack`, the guaranteed movement bound.
    pub reported_d: f64,
    pub solution: Solution,
    pub algorithm: Algorithm,
    /// Every `(bound, accepted)` probe in the order it was made.
    pub probes: Vec<(f64, bool)>,
}

impl SearchResult {
    pub fn realized(&self) -> f64 {
        self.solution.max_move()
    }

    /// Whether the probes contradict monotone feasibility in the bound.
    pub fn non_monotone(&self) -> bool {
        self.probes
            .iter()
            .any(|&(a, ok_a)| self.probes.iter().any(|&(b, ok_b)| a < b && ok_a && !ok_b))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfeasibleReason {
    /// `sum 2 r_i < M`.
    Capacity,
    /// The decision procedure rejected even the bound that lets every sensor
    /// reach every barrier point.
    RejectedAtUpperBound,
}

#[derive(Debug, Clone, PartialEq)]
pub enum SearchOutcome {
    Solved(SearchResult),
    Infeasible(InfeasibleReason),
}

impl SearchOutcome {
    pub fn result(&self) -> Option<&SearchResult> {
        match self {
            SearchOutcome::Solved(r) => Some(r),
            SearchOutcome::Infeasible(_) => None,
        }
    }

    pub fn into_result(self) -> Option<SearchResult> {
        match self {
            SearchOutcome::Solved(r) => Some(r),
            SearchOutcome::Infeasible(_) => None,
        }
    }
}

/// Bisects `[0, d_max]` until the bracket is at most `resolution` wide and
/// returns the decision's placement at the smallest accepted bound.
pub fn solve(inst: &Instance, kind: DecisionKind, resolution: f64) -> Result<SearchOutcome> {
    if !(resolution.is_finite() && resolution > 0.0) {
        return Err(Error::Precondition(format!(
            "resolution {resolution} must be > 0"
        )));
    }
    inst.require_sensors()?;
    if !inst.has_capacity() {
        return Ok(SearchOutcome::Infeasible(InfeasibleReason::Capacity));
    }
    let mut probes = Vec::new();
    let mut probe = |d: f64| -> Result<Option<Solution>> {
        let out = kind.decide(inst, d)?;
        probes.push((d, out.is_feasible()));
        Ok(out.into_solution())
    };

    let upper_bound = max_barrier_distance(inst)?;
    let Some(mut best) = probe(upper_bound)? else {
        return Ok(SearchOutcome::Infeasible(
            InfeasibleReason::RejectedAtUpperBound,
        ));
    };
    let (mut lower, mut upper) = (0.0, upper_bound);
    let mut rejected = None;
    if let Some(sol) = probe(0.0)? {
        best = sol;
        upper = 0.0;
    } else {
        rejected = Some(0.0);
        while upper - lower > resolution {
            let mid = 0.5 * (lower + upper);
            match probe(mid)? {
                Some(sol) => {
                    best = sol;
                    upper = mid;
                }
                None => {
                    lower = mid;
                    rejected = Some(mid);
                }
            }
        }
    }

    let slack = kind.slack(inst);
    Ok(SearchOutcome::Solved(SearchResult {
        base_d: upper,
        rejected_d: rejected,
        slack,
        reported_d: upper + slack,
        solution: best,
        algorithm: Algorithm::Decision(kind),
        probes,
    }))
}

/// Factor-2 approximation wrapped as a search result.
pub fn solve_factor2(inst: &Instance, precision: f64) -> Result<SearchOutcome> {
    Ok(match factor2_solve(inst, precision)? {
        Some(res) => SearchOutcome::Solved(SearchResult {
            base_d: res.value,
            rejected_d: None,
            slack: 0.0,
            reported_d: res.value,
            solution: res.solution,
            algorithm: Algorithm::Factor2,
            probes: Vec::new(),
        }),
        None => SearchOutcome::Infeasible(InfeasibleReason::Capacity),
    })
}

/// Runs the relaxation-based search and the factor-2 algorithm and keeps
/// whichever verified placement moves less. Factor-2 is skipped above its
/// size limit.
pub fn solve_best(inst: &Instance, resolution: f64) -> Result<SearchOutcome> {
    solve_best_with(inst, resolution, Execution::default())
}

pub fn solve_best_with(inst: &Instance, resolution: f64, exec: Execution) -> Result<SearchOutcome> {
    let (lp, f2) = par::join(
        exec,
        || solve(inst, DecisionKind::Lp, resolution),
        || {
            if inst.len() > MAX_1D_SENSORS {
                Ok(SearchOutcome::Infeasible(InfeasibleReason::Capacity))
            } else {
                solve_factor2(inst, resolution)
            }
        },
    );
    let lp = match lp {
        Ok(out) => out,
        // the greedy path needs no rounding and serves as fallback
        Err(_) => solve(inst, DecisionKind::Greedy, resolution)?,
    };
    let candidates: Vec<SearchResult> = [lp.into_result(), f2?.into_result()]
        .into_iter()
        .flatten()
        .filter(|r| verify_solution(inst, &r.solution).covered)
        .collect();
    Ok(candidates
        .into_iter()
        .min_by(|a, b| a.realized().total_cmp(&b.realized()))
        .map_or(
            SearchOutcome::Infeasible(InfeasibleReason::Capacity),
            SearchOutcome::Solved,
        ))
}

/// Solves many instances with one decision procedure.
pub fn solve_batch(
    instances: &[Instance],
    kind: DecisionKind,
    resolution: f64,
    exec: Execution,
) -> Vec<Result<SearchOutcome>> {
    par::map(exec, instances, |inst| solve(inst, kind, resolution))
}
