//! Brute-force exact solvers used as ground truth.
//!
//! Some optimal cover lists its sensors left to right, and for a fixed
//! sequence pushing every sensor as far right as the current frontier allows
//! is optimal. The exact optimum is therefore the smallest bound at which
//! some ordered subset of sensors passes [`feasible_fixed_order`].

use crate::error::{Error, Result};
use crate::model::{max_barrier_distance, reach_range, Instance, Sensor};
use crate::par::{self, Execution};
use crate::tolerance::eps;

/// Largest instance the enumeration accepts.
pub const MAX_ORACLE_SENSORS: usize = 8;

const BISECTION_BUDGET: usize = 60;

/// Frontier reached by placing `order` left to right at bound `d`, or `None`
/// when some sensor in the sequence cannot attach to the frontier.
fn run_order(inst: &Instance, order: &[usize], d: f64) -> Option<f64> {
    let tol = eps();
    let mut frontier = 0.0_f64;
    for &k in order {
        let s = &inst.sensors()[k];
        let Some(rr) = reach_range(s, d) else {
            continue;
        };
        if rr.c_min - s.r > frontier + tol {
            return None;
        }
        let center = rr.c_max.min(frontier + s.r);
        frontier = frontier.max(center + s.r);
    }
    Some(frontier)
}

/// Whether placing the sensors of `order` left to right covers the barrier
/// within movement `d`.
pub fn feasible_fixed_order(inst: &Instance, order: &[usize], d: f64) -> bool {
    run_order(inst, order, d).is_some_and(|p| p >= inst.barrier_length() - eps())
}

/// Smallest bound in `[0, upper]` on a fixed bisection trajectory at which
/// `order` is feasible; the trajectory does not depend on search state, so
/// the value is reproducible.
fn order_optimum(inst: &Instance, order: &[usize], upper: f64, precision: f64) -> f64 {
    if feasible_fixed_order(inst, order, 0.0) {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0, upper);
    for _ in 0..BISECTION_BUDGET {
        if hi - lo <= precision {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if feasible_fixed_order(inst, order, mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

struct Search<'a> {
    inst: &'a Instance,
    upper: f64,
    precision: f64,
    best: f64,
    used: Vec<bool>,
    order: Vec<usize>,
}

impl Search<'_> {
    fn visit(&mut self) {
        // every extension must also attach at `best`
        let Some(frontier) = run_order(self.inst, &self.order, self.best) else {
            return;
        };
        if frontier >= self.inst.barrier_length() - eps() {
            let value = order_optimum(self.inst, &self.order, self.upper, self.precision);
            self.best = self.best.min(value);
        }
        for k in 0..self.used.len() {
            if self.used[k] {
                continue;
            }
            self.used[k] = true;
            self.order.push(k);
            self.visit();
            self.order.pop();
            self.used[k] = false;
        }
    }
}

/// Exact optimum (within `precision`) by enumerating ordered subsets.
/// `Ok(None)` when total capacity is below the barrier length.
pub fn exact_2d(inst: &Instance, precision: f64) -> Result<Option<f64>> {
    exact_2d_with(inst, precision, Execution::default())
}

pub fn exact_2d_with(inst: &Instance, precision: f64, exec: Execution) -> Result<Option<f64>> {
    inst.require_sensors()?;
    if inst.len() > MAX_ORACLE_SENSORS {
        return Err(Error::TooLarge {
            n: inst.len(),
            max: MAX_ORACLE_SENSORS,
        });
    }
    if !inst.has_capacity() {
        return Ok(None);
    }
    let upper = max_barrier_distance(inst)?;
    let n = inst.len();
    let branch_best = par::map_range(exec, n, |first| {
        let mut search = Search {
            inst,
            upper,
            precision,
            best: upper,
            used: vec![false; n],
            order: vec![first],
        };
        search.used[first] = true;
        search.visit();
        search.best
    });
    Ok(Some(branch_best.into_iter().fold(upper, f64::min)))
}

/// Whether some ordered subset covers the barrier within movement `d`.
pub fn feasible_2d(inst: &Instance, d: f64) -> Result<bool> {
    inst.require_sensors()?;
    if inst.len() > MAX_ORACLE_SENSORS {
        return Err(Error::TooLarge {
            n: inst.len(),
            max: MAX_ORACLE_SENSORS,
        });
    }
    fn dfs(inst: &Instance, d: f64, used: &mut [bool], order: &mut Vec<usize>) -> bool {
        match run_order(inst, order, d) {
            None => return false,
            Some(p) if p >= inst.barrier_length() - eps() => return true,
            Some(_) => {}
        }
        for k in 0..used.len() {
            if used[k] {
                continue;
            }
            used[k] = true;
            order.push(k);
            let found = dfs(inst, d, used, order);
            order.pop();
            used[k] = false;
            if found {
                return true;
            }
        }
        false
    }
    Ok(inst.has_capacity() && dfs(inst, d, &mut vec![false; inst.len()], &mut Vec::new()))
}

/// Exact optimum for sensors lying on the barrier line.
pub fn exact_1d(sensors: &[Sensor], barrier_length: f64, precision: f64) -> Result<Option<f64>> {
    if let Some(k) = sensors.iter().position(|s| s.y != 0.0) {
        return Err(Error::Precondition(format!("sensor {k} is off the line")));
    }
    exact_2d(&Instance::new(barrier_length, sensors.to_vec())?, precision)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tight() -> Instance {
        Instance::new(
            10.0,
            vec![Sensor::on_line(9.0, 1.0), Sensor::on_line(6.0, 4.0)],
        )
        .unwrap()
    }

    #[test]
    fn fixed_order_examples() {
        let one = Instance::new(2.0, vec![Sensor::on_line(1.0, 1.0)]).unwrap();
        assert!(feasible_fixed_order(&one, &[0], 0.0));
        assert!(feasible_fixed_order(&tight(), &[1, 0], 2.0));
        assert!(!feasible_fixed_order(&tight(), &[1, 0], 1.9));
        assert!(!feasible_fixed_order(&tight(), &[0, 1], 2.0));
    }

    #[test]
    fn exact_2d_examples() {
        let d = exact_2d(&tight(), 1e-9).unwrap().unwrap();
        assert!((d - 2.0).abs() < 1e-6, "{d}");
        let gap = Instance::new(
            10.0,
            vec![Sensor::on_line(5.0, 1.0), Sensor::on_line(5.0, 4.0)],
        )
        .unwrap();
        let d = exact_2d(&gap, 1e-9).unwrap().unwrap();
        assert!((d - 4.0).abs() < 1e-6, "{d}");
        let one = Instance::new(2.0, vec![Sensor::on_line(1.0, 1.0)]).unwrap();
        assert_eq!(exact_2d(&one, 1e-9).unwrap(), Some(0.0));
    }

    #[test]
    fn exact_1d_examples() {
        let twins = [Sensor::on_line(0.0, 1.0), Sensor::on_line(0.0, 1.0)];
        let d = exact_1d(&twins, 4.0, 1e-9).unwrap().unwrap();
        assert!((d - 3.0).abs() < 1e-6);
        let apart = [Sensor::on_line(1.0, 1.0), Sensor::on_line(3.0, 1.0)];
        assert_eq!(exact_1d(&apart, 4.0, 1e-9).unwrap(), Some(0.0));
        let mixed = [Sensor::on_line(6.0, 2.0), Sensor::on_line(0.0, 1.0)];
        let d = exact_1d(&mixed, 6.0, 1e-9).unwrap().unwrap();
        assert!((d - 2.0).abs() < 1e-6);
        assert!(exact_1d(&[Sensor::new(0.0, 1.0, 1.0)], 1.0, 1e-6).is_err());
    }

    #[test]
    fn fixed_bound_feasibility() {
        assert!(feasible_2d(&tight(), 2.0).unwrap());
        assert!(!feasible_2d(&tight(), 1.9).unwrap());
    }

    #[test]
    fn capacity_deficit_and_size_guard() {
        let short = Instance::new(
            6.0,
            vec![Sensor::on_line(0.0, 1.0), Sensor::on_line(6.0, 1.0)],
        )
        .unwrap();
        assert_eq!(exact_2d(&short, 1e-6).unwrap(), None);
        let big = Instance::new(1.0, vec![Sensor::on_line(0.0, 1.0); 9]).unwrap();
        assert!(matches!(exact_2d(&big, 1e-6), Err(Error::TooLarge { .. })));
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let inst = Instance::new(
            12.0,
            vec![
                Sensor::new(2.0, 3.0, 1.0),
                Sensor::new(9.0, -1.0, 2.0),
                Sensor::new(4.0, 0.5, 1.5),
                Sensor::new(11.0, 2.0, 1.0),
            ],
        )
        .unwrap();
        let a = exact_2d_with(&inst, 1e-7, Execution::Sequential).unwrap();
        let b = exact_2d_with(&inst, 1e-7, Execution::Parallel).unwrap();
        assert_eq!(a, b);
    }
}
