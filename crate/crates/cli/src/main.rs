mod bench;
mod io;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use barrier_core::model::verify_solution;
use barrier_core::oracle::exact_2d;
use barrier_core::search::{solve, solve_best, solve_factor2, DecisionKind, SearchOutcome};
use barrier_core::tolerance::set_eps;
use barrier_core::{Instance, Sensor};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Outcomes that end the process with a non-zero status.
#[derive(Debug)]
pub enum Failure {
    /// Exit 1: infeasible decision or search, or a gap found by `verify`.
    Infeasible,
    /// Exit 2: malformed input or arguments.
    Input(String),
}

impl From<barrier_core::Error> for Failure {
    fn from(e: barrier_core::Error) -> Self {
        Failure::Input(e.to_string())
    }
}

#[derive(Parser)]
#[command(
    name = "barrier-cover",
    version,
    about = "Cover a line barrier with mobile sensors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum DecideAlgo {
    Greedy,
    Lp,
    Matching,
}

impl From<DecideAlgo> for DecisionKind {
    fn from(a: DecideAlgo) -> Self {
        match a {
            DecideAlgo::Greedy => DecisionKind::Greedy,
            DecideAlgo::Lp => DecisionKind::Lp,
            DecideAlgo::Matching => DecisionKind::Matching,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SolveAlgo {
    Greedy,
    Lp,
    Matching,
    Factor2,
    Best,
}

#[derive(Subcommand)]
enum Command {
    /// Decide feasibility at a fixed movement bound.
    Decide {
        #[arg(long, value_enum)]
        algo: DecideAlgo,
        #[arg(long)]
        d: f64,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Search for the smallest movement bound.
    Solve {
        #[arg(long, value_enum)]
        algo: SolveAlgo,
        #[arg(long, default_value_t = 1e-6)]
        resolution: f64,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Generate a seeded random instance.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        barrier: f64,
        #[arg(long, default_value_t = 1.0)]
        radius_min: f64,
        #[arg(long, default_value_t = 1.0)]
        radius_max: f64,
        #[arg(long, default_value_t = 0.0)]
        spread: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that a solution covers the barrier.
    Verify {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        solution: PathBuf,
    },
    /// Exact optimum by enumeration (small instances only).
    Oracle {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(long, default_value_t = 1e-9)]
        precision: f64,
    },
    /// Compare every algorithm on a directory of instances.
    Bench {
        #[arg(long)]
        suite: PathBuf,
        #[arg(long, default_value_t = 1e-4)]
        resolution: f64,
        #[arg(long, default_value_t = 1e-6)]
        precision: f64,
    },
    /// Draw an instance and optional relocation as SVG.
    Render {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        solution: Option<PathBuf>,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn generate(
    n: usize,
    barrier: f64,
    radius: (f64, f64),
    spread: f64,
    seed: u64,
) -> Result<Instance, Failure> {
    if !(radius.0 > 0.0 && radius.0 <= radius.1) || spread < 0.0 {
        return Err(Failure::Input(
            "need 0 < radius-min <= radius-max and spread >= 0".into(),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sensors = (0..n)
        .map(|_| {
            let x = rng.gen_range(-spread..=barrier + spread);
            let y = rng.gen_range(-spread..=spread);
            let r = rng.gen_range(radius.0..=radius.1);
            Sensor::new(x, y, r)
        })
        .collect();
    Ok(Instance::new(barrier, sensors)?)
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Decide {
            algo,
            d,
            input,
            output,
        } => {
            let inst = io::read_instance(&input)?;
            let kind = DecisionKind::from(algo);
            match kind.decide(&inst, d)?.into_solution() {
                Some(sol) => {
                    println!("feasible");
                    println!("max_move {}", io::round12(sol.max_move()));
                    if let Some(path) = output {
                        io::write_solution(&path, &inst, &sol, d, d + kind.slack(&inst))?;
                    }
                    Ok(())
                }
                None => {
                    println!("infeasible");
                    Err(Failure::Infeasible)
                }
            }
        }
        Command::Solve {
            algo,
            resolution,
            input,
            output,
        } => {
            let inst = io::read_instance(&input)?;
            let outcome = match algo {
                SolveAlgo::Greedy => solve(&inst, DecisionKind::Greedy, resolution)?,
                SolveAlgo::Lp => solve(&inst, DecisionKind::Lp, resolution)?,
                SolveAlgo::Matching => solve(&inst, DecisionKind::Matching, resolution)?,
                SolveAlgo::Factor2 => solve_factor2(&inst, resolution)?,
                SolveAlgo::Best => solve_best(&inst, resolution)?,
            };
            match outcome {
                SearchOutcome::Solved(res) => {
                    println!("algorithm {}", res.algorithm.name());
                    println!("base_D {}", io::round12(res.base_d));
                    println!("reported_D {}", io::round12(res.reported_d));
                    println!("max_move {}", io::round12(res.realized()));
                    if let Some(path) = output {
                        io::write_solution(
                            &path,
                            &inst,
                            &res.solution,
                            res.base_d,
                            res.reported_d,
                        )?;
                    }
                    Ok(())
                }
                SearchOutcome::Infeasible(reason) => {
                    println!("infeasible ({reason:?})");
                    Err(Failure::Infeasible)
                }
            }
        }
        Command::Gen {
            n,
            barrier,
            radius_min,
            radius_max,
            spread,
            seed,
            output,
        } => {
            let inst = generate(n, barrier, (radius_min, radius_max), spread, seed)?;
            io::write_instance(output.as_deref(), &inst)
        }
        Command::Verify { input, solution } => {
            let inst = io::read_instance(&input)?;
            let sol = io::read_solution(&solution, &inst)?;
            let v = verify_solution(&inst, &sol);
            println!("covered {}", v.covered);
            println!("max_move {}", io::round12(v.max_move));
            for (a, b) in v.gaps.segments() {
                println!("gap {} {}", io::round12(*a), io::round12(*b));
            }
            if v.covered {
                Ok(())
            } else {
                Err(Failure::Infeasible)
            }
        }
        Command::Oracle { input, precision } => {
            let inst = io::read_instance(&input)?;
            match exact_2d(&inst, precision)? {
                Some(d) => {
                    println!("D* {}", io::round12(d));
                    Ok(())
                }
                None => {
                    println!("infeasible");
                    Err(Failure::Infeasible)
                }
            }
        }
        Command::Bench {
            suite,
            resolution,
            precision,
        } => {
            print!("{}", bench::table(&suite, resolution, precision)?);
            Ok(())
        }
        Command::Render {
            input,
            solution,
            output,
        } => {
            let inst = io::read_instance(&input)?;
            let sol = solution.map(|p| io::read_solution(&p, &inst)).transpose()?;
            std::fs::write(&output, render::svg(&inst, sol.as_ref()))
                .map_err(|e| Failure::Input(format!("{}: {e}", output.display())))
        }
    }
}

fn main() -> ExitCode {
    if let Ok(raw) = std::env::var("BARRIER_COVER_EPS") {
        if !raw.parse::<f64>().is_ok_and(set_eps) {
            eprintln!("error: BARRIER_COVER_EPS={raw} is not a positive number");
            return ExitCode::from(2);
        }
    }
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Infeasible) => ExitCode::from(1),
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
