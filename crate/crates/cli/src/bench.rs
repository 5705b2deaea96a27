//! Suite comparison table.

use std::fmt::Write;
use std::path::{Path, PathBuf};

use barrier_core::oracle::{exact_2d, MAX_ORACLE_SENSORS};
use barrier_core::par::{self, Execution};
use barrier_core::search::{solve, solve_best, solve_factor2, DecisionKind, SearchOutcome};
use barrier_core::{Error, Instance};

use crate::io::read_instance;
use crate::Failure;

const ALGORITHMS: [&str; 5] = ["greedy", "lp", "matching", "factor2", "best"];

fn run(inst: &Instance, algo: &str, resolution: f64) -> Result<SearchOutcome, Error> {
    match algo {
        "greedy" => solve(inst, DecisionKind::Greedy, resolution),
        "lp" => solve(inst, DecisionKind::Lp, resolution),
        "matching" => solve(inst, DecisionKind::Matching, resolution),
        "factor2" => solve_factor2(inst, resolution),
        _ => solve_best(inst, resolution),
    }
}

fn suite_files(dir: &Path) -> Result<Vec<PathBuf>, Failure> {
    let entries =
        std::fs::read_dir(dir).map_err(|e| Failure::Input(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

/// One row per instance and algorithm; instances are solved concurrently.
pub fn table(dir: &Path, resolution: f64, precision: f64) -> Result<String, Failure> {
    let files = suite_files(dir)?;
    let instances = files
        .iter()
        .map(|p| read_instance(p))
        .collect::<Result<Vec<_>, _>>()?;
    let rows = par::map(Execution::default(), &instances, |inst| {
        let oracle = if inst.len() <= MAX_ORACLE_SENSORS {
            exact_2d(inst, precision).ok().flatten()
        } else {
            None
        };
        let realized: Vec<Option<f64>> = ALGORITHMS
            .iter()
            .map(|algo| match run(inst, algo, resolution) {
                Ok(out) => out.result().map(|r| r.realized()),
                Err(_) => None,
            })
            .collect();
        (oracle, realized)
    });

    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<24} {:>3} {:<9} {:>12} {:>12} {:>8}",
        "instance", "n", "algorithm", "max_move", "oracle", "ratio"
    );
    for ((path, inst), (oracle, realized)) in files.iter().zip(&instances).zip(rows) {
        let name = path
            .file_name()
            .map_or_else(String::new, |f| f.to_string_lossy().into_owned());
        for (algo, value) in ALGORITHMS.iter().zip(realized) {
            let cell = |v: Option<f64>| v.map_or_else(|| "-".to_string(), |v| format!("{v:.6}"));
            let ratio = match (value, oracle) {
                (Some(v), Some(o)) if o > 0.0 => format!("{:.4}", v / o),
                (Some(0.0), Some(_)) => "1.0000".to_string(),
                _ => "-".to_string(),
            };
            let _ = writeln!(
                out,
                "{:<24} {:>3} {:<9} {:>12} {:>12} {:>8}",
                name,
                inst.len(),
                algo,
                cell(value),
                cell(oracle),
                ratio
            );
        }
    }
    Ok(out)
}
