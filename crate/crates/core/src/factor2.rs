//! Factor-2 approximation through one-dimensional prefixes.
//!
//! Sensors are sorted by their perpendicular distance `d_p = |y|`. For a
//! prefix of that order the sensors drop straight onto the line and the
//! resulting one-dimensional instance is solved exactly, giving the
//! horizontal optimum `D_h`. Because `D_h` never increases along the order
//! while `d_p` never decreases, a bisection finds the crossover where
//! `D_h < d_p` first holds; the better of the two prefixes around it moves
//! every sensor at most `d_p + D_h <= 2 D*`.

use crate::error::{Error, Result};
use crate::model::{Instance, Sensor, Solution};
use crate::tolerance::eps;

/// Largest sensor count handled by the exact one-dimensional search.
pub const MAX_1D_SENSORS: usize = 20;

const BISECTION_BUDGET: usize = 200;

/// Reach of a sensor on the line: centers within `[x - d, x + d]`.
#[derive(Debug, Clone, Copy)]
struct LineReach {
    c_min: f64,
    c_max: f64,
    r: f64,
}

fn require_on_line(sensors: &[Sensor]) -> Result<()> {
    match sensors.iter().position(|s| s.y != 0.0) {
        Some(k) => Err(Error::Precondition(format!("sensor {k} is off the line"))),
        None if sensors.len() > MAX_1D_SENSORS => Err(Error::TooLarge {
            n: sensors.len(),
            max: MAX_1D_SENSORS,
        }),
        None => Ok(()),
    }
}

/// Exact feasibility of on-line sensors covering `[0, m]` within movement
/// `d`, with a witness placement.
///
/// Dynamic program over used-sensor sets: for each set keep only the
/// furthest frontier reachable by placing exactly those sensors left to
/// right, since a further frontier dominates a nearer one.
fn place_1d(sensors: &[Sensor], m: f64, d: f64) -> Option<Vec<Option<f64>>> {
    let tol = eps();
    let n = sensors.len();
    if m <= tol {
        return Some(vec![None; n]);
    }
    let reach: Vec<LineReach> = sensors
        .iter()
        .map(|s| LineReach {
            c_min: s.x - d,
            c_max: s.x + d,
            r: s.r,
        })
        .collect();
    let states = 1usize << n;
    let mut best = vec![f64::NEG_INFINITY; states];
    // (previous set, sensor, center) leading to each state
    let mut parent: Vec<Option<(usize, usize, f64)>> = vec![None; states];
    best[0] = 0.0;
    for set in 0..states {
        let frontier = best[set];
        if frontier == f64::NEG_INFINITY {
            continue;
        }
        for (k, rr) in reach.iter().enumerate() {
            if set & (1 << k) != 0 || rr.c_min - rr.r > frontier + tol {
                continue;
            }
            let center = rr.c_max.min(frontier + rr.r);
            let reached = center + rr.r;
            if reached <= frontier + tol {
                continue;
            }
            let next = set | (1 << k);
            if reached > best[next] {
                best[next] = reached;
                parent[next] = Some((set, k, center));
                if reached >= m - tol {
                    let mut positions = vec![None; n];
                    let mut cur = next;
                    while let Some((prev, sensor, c)) = parent[cur] {
                        positions[sensor] = Some(c);
                        cur = prev;
                    }
                    return Some(positions);
                }
            }
        }
    }
    None
}

/// Whether on-line sensors can cover `[0, m]` moving at most `d` each.
pub fn decide_1d(sensors: &[Sensor], m: f64, d: f64) -> Result<bool> {
    require_on_line(sensors)?;
    Ok(place_1d(sensors, m, d).is_some())
}

fn line_upper_bound(sensors: &[Sensor], m: f64) -> f64 {
    sensors
        .iter()
        .map(|s| s.x.abs().max((s.x - m).abs()))
        .fold(0.0, f64::max)
}

/// Bisection on the fixed interval `[0, upper]`; `INFINITY` when even
/// `upper` is infeasible. Subsets of sensors always bisect to a value at
/// least as large, because the trajectory only depends on the answers.
fn bisect_1d(sensors: &[Sensor], m: f64, upper: f64, precision: f64) -> f64 {
    let cap: f64 = sensors.iter().map(|s| 2.0 * s.r).sum();
    if cap < m - eps() || place_1d(sensors, m, upper).is_none() {
        return f64::INFINITY;
    }
    if place_1d(sensors, m, 0.0).is_some() {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0, upper);
    for _ in 0..BISECTION_BUDGET {
        if hi - lo <= precision {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if place_1d(sensors, m, mid).is_some() {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// Minimum max movement for on-line sensors within `precision`, never below
/// the true optimum; `INFINITY` when capacity is insufficient.
pub fn solve_1d(sensors: &[Sensor], m: f64, precision: f64) -> Result<f64> {
    require_on_line(sensors)?;
    Ok(bisect_1d(
        sensors,
        m,
        line_upper_bound(sensors, m),
        precision,
    ))
}

/// One evaluated prefix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PrefixEval {
    /// Prefix length in the `|y|` order (1-based).
    pub len: usize,
    pub d_p: f64,
    pub d_h: f64,
}

/// Sorted order and every prefix evaluated during a run.
#[derive(Debug, Clone, PartialEq)]
pub struct PrefixState {
    /// Sensor indices sorted by `|y|`, ties by index.
    pub order: Vec<usize>,
    /// Evaluations in ascending prefix length.
    pub evaluations: Vec<PrefixEval>,
    pub i_alt: usize,
}

impl PrefixState {
    /// `D_h` must not increase with the prefix length.
    pub fn is_monotone(&self) -> bool {
        self.evaluations
            .windows(2)
            .all(|w| w[1].d_h <= w[0].d_h || (w[0].d_h.is_infinite() && w[1].d_h.is_infinite()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Factor2Result {
    /// `d_p + D_h` of the chosen prefix; bounds the realized movement.
    pub value: f64,
    pub solution: Solution,
    pub prefix: PrefixState,
}

struct Prefixes<'a> {
    inst: &'a Instance,
    order: Vec<usize>,
    upper: f64,
    precision: f64,
    memo: Vec<Option<f64>>,
}

impl<'a> Prefixes<'a> {
    fn new(inst: &'a Instance, precision: f64) -> Self {
        let mut order: Vec<usize> = (0..inst.len()).collect();
        order.sort_by(|&a, &b| {
            let (ya, yb) = (inst.sensors()[a].y.abs(), inst.sensors()[b].y.abs());
            ya.total_cmp(&yb).then(a.cmp(&b))
        });
        // one shared bisection interval keeps D_h monotone across prefixes
        let upper = line_upper_bound(inst.sensors(), inst.barrier_length());
        Prefixes {
            inst,
            order,
            upper,
            precision,
            memo: vec![None; inst.len() + 1],
        }
    }

    fn d_p(&self, len: usize) -> f64 {
        if len == 0 {
            0.0
        } else {
            self.inst.sensors()[self.order[len - 1]].y.abs()
        }
    }

    fn projected(&self, len: usize) -> Vec<Sensor> {
        self.order[..len]
            .iter()
            .map(|&i| Sensor::on_line(self.inst.sensors()[i].x, self.inst.sensors()[i].r))
            .collect()
    }

    fn d_h(&mut self, len: usize) -> f64 {
        if len == 0 {
            // the virtual radius-0 sensor covers nothing
            return f64::INFINITY;
        }
        if let Some(v) = self.memo[len] {
            return v;
        }
        let m = self.inst.barrier_length();
        let v = bisect_1d(&self.projected(len), m, self.upper, self.precision);
        self.memo[len] = Some(v);
        v
    }

    /// Still on the small side of the crossover.
    fn too_small(&mut self, len: usize) -> bool {
        self.d_h(len) >= self.d_p(len)
    }
}

/// Factor-2 approximation. The returned value is within
/// `[D*, 2 D* + O(precision)]`.
pub fn factor2_solve(inst: &Instance, precision: f64) -> Result<Option<Factor2Result>> {
    inst.require_sensors()?;
    if inst.len() > MAX_1D_SENSORS {
        return Err(Error::TooLarge {
            n: inst.len(),
            max: MAX_1D_SENSORS,
        });
    }
    if !inst.has_capacity() {
        return Ok(None);
    }
    let n = inst.len();
    let mut pre = Prefixes::new(inst, precision);

    // prefix 0 is always too small; find the first prefix past the crossover
    let i_alt = if pre.too_small(n) {
        n
    } else {
        let (mut lwr, mut upp) = (0usize, n);
        while upp - lwr > 1 {
            let j = (lwr + upp) / 2;
            if pre.too_small(j) {
                lwr = j;
            } else {
                upp = j;
            }
        }
        upp
    };

    let mut best: Option<(f64, usize)> = None;
    for len in [i_alt.saturating_sub(1), i_alt] {
        if len == 0 {
            continue;
        }
        let value = pre.d_p(len) + pre.d_h(len);
        if value.is_finite() && best.is_none_or(|(v, _)| value < v) {
            best = Some((value, len));
        }
    }
    let Some((value, len)) = best else {
        return Ok(None);
    };

    let d_h = pre.d_h(len);
    let placed = place_1d(&pre.projected(len), inst.barrier_length(), d_h)
        .ok_or_else(|| Error::Precondition("prefix lost feasibility at its own optimum".into()))?;
    let mut positions = vec![None; n];
    for (slot, &i) in pre.order[..len].iter().enumerate() {
        positions[i] = placed[slot];
    }
    let solution = Solution::new(inst, positions)?;

    let evaluations = (1..=n)
        .filter_map(|k| {
            pre.memo[k].map(|d_h| PrefixEval {
                len: k,
                d_p: pre.d_p(k),
                d_h,
            })
        })
        .collect();
    Ok(Some(Factor2Result {
        value,
        solution,
        prefix: PrefixState {
            order: pre.order,
            evaluations,
            i_alt,
        },
    }))
}

/// Every prefix evaluated eagerly, for checking the monotone behaviour of
/// `D_h` across the whole order.
pub fn all_prefixes(inst: &Instance, precision: f64) -> Result<Vec<PrefixEval>> {
    inst.require_sensors()?;
    if inst.len() > MAX_1D_SENSORS {
        return Err(Error::TooLarge {
            n: inst.len(),
            max: MAX_1D_SENSORS,
        });
    }
    let n = inst.len();
    let mut pre = Prefixes::new(inst, precision);
    Ok((1..=n)
        .map(|len| PrefixEval {
            len,
            d_p: pre.d_p(len),
            d_h: pre.d_h(len),
        })
        .collect())
}
