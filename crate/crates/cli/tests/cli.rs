use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

const TIGHT: &str = r#"{"barrier_length":10,"sensors":[{"x":9,"y":0,"r":1},{"x":6,"y":0,"r":4}]}"#;
const GAP: &str = r#"{"barrier_length":10,"sensors":[{"x":5,"y":0,"r":1},{"x":5,"y":0,"r":4}]}"#;

fn cli(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_barrier-cover"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

fn file(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn field(text: &str, key: &str) -> f64 {
    text.lines()
        .find_map(|l| l.strip_prefix(key).map(|v| v.trim().parse().unwrap()))
        .unwrap_or_else(|| panic!("no {key} in {text}"))
}

#[test]
fn decide_lp_on_gap_instance() {
    let dir = TempDir::new().unwrap();
    let inst = file(dir.path(), "gap.json", GAP);
    let sol = dir.path().join("sol.json");
    let out = cli(&[
        "decide",
        "--algo",
        "lp",
        "--d",
        "1",
        "-i",
        s(&inst),
        "-o",
        s(&sol),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("feasible"));
    let written: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&sol).unwrap()).unwrap();
    assert_eq!(written["positions"].as_array().unwrap().len(), 2);
    assert!(written["max_move"].as_f64().is_some());
}

#[test]
fn decide_infeasible_exits_one() {
    let dir = TempDir::new().unwrap();
    let inst = file(dir.path(), "tight.json", TIGHT);
    let out = cli(&["decide", "--algo", "matching", "--d", "0.5", "-i", s(&inst)]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).starts_with("infeasible"));
}

#[test]
fn greedy_solve_on_tight_instance_moves_eight() {
    let dir = TempDir::new().unwrap();
    let inst = file(dir.path(), "tight.json", TIGHT);
    let out = cli(&[
        "solve",
        "--algo",
        "greedy",
        "--resolution",
        "1",
        "-i",
        s(&inst),
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert_eq!(field(&text, "max_move"), 8.0);
    assert!(field(&text, "reported_D") >= 8.0);
}

#[test]
fn verify_reports_gaps() {
    let dir = TempDir::new().unwrap();
    let inst = file(dir.path(), "tight.json", TIGHT);
    let sol = file(
        dir.path(),
        "sol.json",
        r#"{"base_D":0,"reported_D":0,"positions":[9,null]}"#,
    );
    let out = cli(&["verify", "-i", s(&inst), "-s", s(&sol)]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("covered false"));
    assert!(text.contains("gap 0 8"));
}

#[test]
fn malformed_input_exits_two() {
    let dir = TempDir::new().unwrap();
    let bad = file(
        dir.path(),
        "bad.json",
        r#"{"barrier_length":-1,"sensors":[]}"#,
    );
    assert_eq!(
        cli(&["solve", "--algo", "lp", "-i", s(&bad)]).status.code(),
        Some(2)
    );
    let junk = file(dir.path(), "junk.json", "not json");
    assert_eq!(cli(&["oracle", "-i", s(&junk)]).status.code(), Some(2));
    assert_eq!(cli(&["solve", "--algo", "nope"]).status.code(), Some(2));
}

#[test]
fn eps_override_is_validated() {
    let dir = TempDir::new().unwrap();
    let inst = file(dir.path(), "tight.json", TIGHT);
    let run = |eps: &str| {
        Command::new(env!("CARGO_BIN_EXE_barrier-cover"))
            .args(["oracle", "-i", s(&inst)])
            .env("BARRIER_COVER_EPS", eps)
            .output()
            .unwrap()
    };
    assert_eq!(run("1e-7").status.code(), Some(0));
    assert_eq!(run("-3").status.code(), Some(2));
}

#[test]
fn gen_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let args = |o: &Path| {
        cli(&[
            "gen",
            "--n",
            "7",
            "--barrier",
            "15",
            "--radius-min",
            "0.5",
            "--radius-max",
            "2",
            "--spread",
            "4",
            "--seed",
            "99",
            "-o",
            s(o),
        ])
    };
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    assert!(args(&a).status.success());
    assert!(args(&b).status.success());
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
}

#[test]
fn written_solutions_reverify_identically() {
    let dir = TempDir::new().unwrap();
    let inst = dir.path().join("inst.json");
    assert!(cli(&[
        "gen",
        "--n",
        "6",
        "--barrier",
        "12",
        "--radius-min",
        "0.7",
        "--radius-max",
        "2.5",
        "--spread",
        "3",
        "--seed",
        "5",
        "-o",
        s(&inst),
    ])
    .status
    .success());
    for algo in ["greedy", "lp", "factor2", "best"] {
        let sol = dir.path().join(format!("{algo}.json"));
        let solved = cli(&["solve", "--algo", algo, "-i", s(&inst), "-o", s(&sol)]);
        assert!(solved.status.success(), "{algo}");
        let written: serde_json::Value =
            serde_json::from_str(&fs::read_to_string(&sol).unwrap()).unwrap();
        let verified = cli(&["verify", "-i", s(&inst), "-s", s(&sol)]);
        assert_eq!(verified.status.code(), Some(0), "{algo}");
        assert_eq!(
            field(&stdout(&verified), "max_move"),
            written["max_move"].as_f64().unwrap(),
            "{algo}"
        );
    }
}

#[test]
fn oracle_bench_and_render() {
    let dir = TempDir::new().unwrap();
    let suite = dir.path().join("suite");
    fs::create_dir(&suite).unwrap();
    let tight = file(&suite, "tight.json", TIGHT);
    file(&suite, "gap.json", GAP);

    let out = cli(&["oracle", "-i", s(&tight)]);
    assert!((field(&stdout(&out), "D*") - 2.0).abs() < 1e-6);

    let out = cli(&["bench", "--suite", s(&suite)]);
    assert!(out.status.success());
    let table = stdout(&out);
    assert_eq!(table.lines().count(), 1 + 2 * 5);
    assert!(table
        .lines()
        .any(|l| l.starts_with("tight.json") && l.contains("greedy") && l.contains("4.0000")));

    let sol = dir.path().join("sol.json");
    assert!(
        cli(&["solve", "--algo", "lp", "-i", s(&tight), "-o", s(&sol)])
            .status
            .success()
    );
    let svg = dir.path().join("fig.svg");
    assert!(
        cli(&["render", "-i", s(&tight), "-s", s(&sol), "-o", s(&svg)])
            .status
            .success()
    );
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg") && text.trim_end().ends_with("</svg>"));
    assert_eq!(text.matches("<circle").count(), 4);
}
