//! Instance and solution files.

use std::fs;
use std::path::Path;

use barrier_core::{Instance, Sensor, Solution};
use serde::{Deserialize, Serialize};

use crate::Failure;

/// Rounds to 12 significant digits so written values survive a re-read.
pub fn round12(v: f64) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    format!("{v:.11e}").parse().expect("formatted float parses")
}

#[derive(Debug, Serialize, Deserialize)]
pub struct SolutionFile {
    #[serde(rename = "base_D")]
    pub base_d: f64,
    #[serde(rename = "reported_D")]
    pub reported_d: f64,
    pub positions: Vec<Option<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_move: Option<f64>,
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn write(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

pub fn read_instance(path: &Path) -> Result<Instance, Failure> {
    serde_json::from_str(&read(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub fn write_instance(path: Option<&Path>, inst: &Instance) -> Result<(), Failure> {
    let rounded = Instance::new(
        round12(inst.barrier_length()),
        inst.sensors()
            .iter()
            .map(|s| Sensor::new(round12(s.x), round12(s.y), round12(s.r)))
            .collect(),
    )
    .map_err(|e| Failure::Input(e.to_string()))?;
    let text = serde_json::to_string_pretty(&rounded).expect("instance serializes");
    write(path, &(text + "\n"))
}

pub fn read_solution(path: &Path, inst: &Instance) -> Result<Solution, Failure> {
    let file: SolutionFile = serde_json::from_str(&read(path)?)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    Solution::new(inst, file.positions).map_err(|e| Failure::Input(e.to_string()))
}

/// Writes positions rounded to 12 significant digits, with `max_move`
/// recomputed from the rounded positions.
pub fn write_solution(
    path: &Path,
    inst: &Instance,
    sol: &Solution,
    base_d: f64,
    reported_d: f64,
) -> Result<(), Failure> {
    let positions: Vec<Option<f64>> = sol.positions().iter().map(|p| p.map(round12)).collect();
    let rounded =
        Solution::new(inst, positions.clone()).map_err(|e| Failure::Input(e.to_string()))?;
    let file = SolutionFile {
        base_d: round12(base_d),
        reported_d: round12(reported_d),
        positions,
        max_move: Some(round12(rounded.max_move())),
    };
    let text = serde_json::to_string_pretty(&file).expect("solution serializes");
    write(Some(path), &(text + "\n"))
}
