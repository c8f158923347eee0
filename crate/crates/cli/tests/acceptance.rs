//! Acceptance run: one line per criterion, nonzero exit if any fails.
//! Uses its own `main` so the lines are printed even when everything passes.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use steiner_degree::harness::{run_suite, Suite, SuiteConfig, SuiteReport};

const SEED: u64 = 20240601;
const BIN: &str = env!("CARGO_BIN_EXE_steiner-degree");

struct Outcome {
    ok: bool,
    detail: String,
}

type Criterion = (&'static str, Box<dyn Fn() -> Outcome>);

fn checks_line(r: &SuiteReport) -> String {
    r.checks
        .iter()
        .map(|c| format!("{} {}/{} (need {})", c.name, c.passed, c.total, c.required))
        .collect::<Vec<_>>()
        .join(", ")
}

fn suite(s: Suite, limit: Option<Duration>) -> Outcome {
    let start = Instant::now();
    let report = match run_suite(s, &SuiteConfig::new(SEED)) {
        Ok(r) => r,
        Err(e) => return Outcome { ok: false, detail: format!("error: {e}") },
    };
    let elapsed = start.elapsed();
    let in_time = limit.is_none_or(|l| elapsed <= l);
    let mut detail = checks_line(&report);
    if !report.summary.is_empty() {
        let summary: Vec<String> = report.summary.iter().map(|(k, v)| format!("{k}={v:.4}")).collect();
        detail += &format!("; {}", summary.join(", "));
    }
    if let Some(l) = limit {
        detail += &format!("; {:.2}s of {}s allowed", elapsed.as_secs_f64(), l.as_secs());
    }
    Outcome { ok: report.passed && in_time, detail }
}

fn cli(args: &[&str], threads: Option<&str>) -> Result<Vec<u8>, String> {
    let mut cmd = Command::new(BIN);
    cmd.args(args);
    if let Some(t) = threads {
        cmd.env("STEINER_DEGREE_THREADS", t);
    }
    let out = cmd.output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {}: {}", out.status, String::from_utf8_lossy(&out.stderr)));
    }
    Ok(out.stdout)
}

fn determinism() -> Outcome {
    let seed = SEED.to_string();
    let mut compared = 0;
    for s in Suite::ALL {
        let args = ["bench", "--suite", s.name(), "--seed", seed.as_str()];
        let first = match cli(&args, None) {
            Ok(b) => b,
            Err(e) => return Outcome { ok: false, detail: e },
        };
        for threads in [None, Some("1"), Some("3")] {
            match cli(&args, threads) {
                Ok(b) if b == first => compared += 1,
                Ok(_) => return Outcome { ok: false, detail: format!("{} differs between runs", s.name()) },
                Err(e) => return Outcome { ok: false, detail: e },
            }
        }
    }
    let dir = std::env::temp_dir().join(format!("steiner-degree-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("tree.json");
    let file = file.to_str().unwrap();
    let gen = ["gen", "random-tree", "--n", "40", "--groups", "4", "--group-size", "3", "--bounds", "--seed", "42", "--out", file];
    if let Err(e) = cli(&gen, None) {
        return Outcome { ok: false, detail: e };
    }
    let solve = ["solve-tree", file, "--seed", "42"];
    let runs: Vec<_> = (0..3).map(|_| cli(&solve, None)).collect();
    let _ = std::fs::remove_dir_all(&dir);
    let same = match &runs[..] {
        [Ok(a), Ok(b), Ok(c)] => a == b && b == c,
        _ => false,
    };
    Outcome {
        ok: same,
        detail: format!("{compared} repeat bench reports identical over {} suites; solve-tree x3 identical: {same}", Suite::ALL.len()),
    }
}

fn main() -> ExitCode {
    if std::env::args().any(|a| a == "--list") {
        return ExitCode::SUCCESS;
    }
    let criteria: Vec<Criterion> = vec![
        ("1 LP relaxation soundness", Box::new(|| suite(Suite::LpRelaxation, Some(Duration::from_secs(120))))),
        ("2 cut/flow equivalence", Box::new(|| suite(Suite::CutFlow, None))),
        ("3 rounding marginals", Box::new(|| suite(Suite::Marginals, None))),
        ("4 group connection probability", Box::new(|| suite(Suite::Connection, None))),
        ("5 tree rounding degree and cost", Box::new(|| suite(Suite::DegreeBound, None))),
        ("6 two-point sampling bounds", Box::new(|| suite(Suite::TwoPoint, None))),
        ("7 k-tree reduction", Box::new(|| suite(Suite::KTree, Some(Duration::from_secs(300))))),
        ("8 separator structure", Box::new(|| suite(Suite::Separators, None))),
        ("9 bounded treewidth pipeline", Box::new(|| suite(Suite::Btw, None))),
        ("10 backward edge rewiring", Box::new(|| suite(Suite::Rewiring, None))),
        ("11 determinism", Box::new(determinism)),
    ];
    let mut failed = 0;
    for (name, run) in &criteria {
        let o = run();
        println!("[{}] {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        failed += usize::from(!o.ok);
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
