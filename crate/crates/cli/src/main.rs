use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use serde::Serialize;
use serde_json::{json, Value};

use steiner_degree::harness::gen::{generate, GenKind, GenParams};
use steiner_degree::harness::{run_suite, Suite, SuiteConfig};
use steiner_degree::io::InstanceFile;
use steiner_degree::ktree::{solve_md_ktree, BtwSolver, GstSolver, OracleSolver, ReductionMode, TreeSolver};
use steiner_degree::lp::{build_lp, monotonize_checked, solve_lp, verify_fractional};
use steiner_degree::oracle::{brute_md_gst, brute_md_ktree, brute_min_cost_bd_gst};
use steiner_degree::rng::substream;
use steiner_degree::rounding::{
    degree_concentration_report, estimate_connect_prob, solve_bd_gst_tree, solve_md_gst_tree, DEGREE_FACTOR,
    ITERATION_CAP_FACTOR, TAU_CASE_CONSTANT,
};
use steiner_degree::treewidth::{decompose, decompose_auto, solve_md_gst_btw};
use steiner_degree::{Error, GstInstance, SubTree};

const THREADS_VAR: &str = "STEINER_DEGREE_THREADS";

#[derive(Parser)]
#[command(name = "steiner-degree", version, about = "Degree-bounded group Steiner tree solvers and experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, ValueEnum)]
enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Randomized,
    Derandomized,
}

impl From<Mode> for ReductionMode {
    fn from(m: Mode) -> Self {
        match m {
            Mode::Randomized => ReductionMode::Randomized,
            Mode::Derandomized => ReductionMode::Derandomized,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SolverKind {
    Oracle,
    Tree,
    Btw,
}

#[derive(Args)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct InstanceArgs {
    /// Instance JSON file.
    instance: PathBuf,
    #[arg(long)]
    root: Option<usize>,
    #[arg(long)]
    cover_threshold: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Generate a seeded instance file.
    Gen {
        #[arg(value_parser = parse_kind)]
        kind: GenKind,
        #[arg(long, default_value_t = 12)]
        n: usize,
        #[arg(long, default_value_t = 2)]
        w: usize,
        #[arg(long, default_value_t = 3)]
        groups: usize,
        #[arg(long, default_value_t = 2)]
        group_size: usize,
        #[arg(long, default_value_t = 4)]
        leaves: usize,
        #[arg(long, default_value_t = 3)]
        rows: usize,
        #[arg(long, default_value_t = 4)]
        cols: usize,
        /// Set family as JSON, e.g. `[[1,2],[2,3]]`.
        #[arg(long)]
        sets: Option<String>,
        #[arg(long, default_value_t = 1)]
        max_cost: i64,
        #[arg(long, default_value_t = 0.3)]
        delete_prob: f64,
        /// Attach degree bounds taken from a planted feasible tree.
        #[arg(long)]
        bounds: bool,
        #[arg(long, default_value_t = 0)]
        terminals: usize,
        #[arg(long, default_value_t = 0)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// LP rounding on a tree: bicriteria with bounds, min-degree without.
    SolveTree {
        #[command(flatten)]
        input: InstanceArgs,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        iter_cap: Option<usize>,
        #[arg(long)]
        dump_lp: Option<PathBuf>,
    },
    /// Separator-tree pipeline on a bounded treewidth graph.
    Btw {
        #[command(flatten)]
        input: InstanceArgs,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        w: Option<usize>,
        /// Writes the separator tree and the contracted tree as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Min-degree Steiner k-tree through the group reductions.
    Ktree {
        /// Instance JSON file with `terminals` and `k`.
        instance: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long, value_enum, default_value_t = Mode::Derandomized)]
        mode: Mode,
        #[arg(long, value_enum, default_value_t = SolverKind::Oracle)]
        solver: SolverKind,
        #[arg(long)]
        w: Option<usize>,
        /// Seeded shuffle of the terminal order before hashing.
        #[arg(long)]
        shuffle_terminals: bool,
    },
    /// Exact optimum by exhaustive search (small instances only).
    Oracle {
        #[command(flatten)]
        input: InstanceArgs,
        #[command(flatten)]
        common: Common,
        /// Minimize cost under the bounds instead of the max degree.
        #[arg(long)]
        cost: bool,
    },
    /// LP, per-group connection estimates and degree concentration.
    Stats {
        #[command(flatten)]
        input: InstanceArgs,
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 10_000)]
        trials: usize,
        #[arg(long)]
        iter_cap: Option<usize>,
    },
    /// Seeded experiment suites.
    Bench {
        /// Suite name, or `all`.
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        runs: Option<usize>,
        #[arg(long)]
        trials: Option<usize>,
        #[arg(long, value_enum)]
        mode: Option<Mode>,
        /// Adds wall time to the report (breaks byte-for-byte repeatability).
        #[arg(long)]
        timing: bool,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_kind(s: &str) -> Result<GenKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

struct Table {
    header: Vec<String>,
    rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Table { header: header.iter().map(|h| h.to_string()).collect(), rows: Vec::new() }
    }

    fn push(&mut self, row: Vec<String>) {
        self.rows.push(row);
    }

    fn to_csv(&self) -> Result<String, Error> {
        let mut w = csv::Writer::from_writer(Vec::new());
        let io = |e: csv::Error| Error::InvalidParameter(format!("csv: {e}"));
        w.write_record(&self.header).map_err(io)?;
        for r in &self.rows {
            w.write_record(r).map_err(io)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::InvalidParameter(format!("csv: {e}")))?;
        Ok(String::from_utf8(bytes).expect("csv is utf-8"))
    }
}

struct Output {
    json: Value,
    table: Table,
}

fn emit(common: &Common, out: Output) -> Result<(), Error> {
    let text = match common.format {
        Format::Json => serde_json::to_string_pretty(&out.json)? + "\n",
        Format::Csv => out.table.to_csv()?,
    };
    write_out(common.out.as_ref(), &text)
}

fn write_out(path: Option<&PathBuf>, text: &str) -> Result<(), Error> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Error::InvalidParameter(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_file(path: &PathBuf) -> Result<InstanceFile, Error> {
    let text = fs::read_to_string(path).map_err(|e| Error::InvalidParameter(format!("{}: {e}", path.display())))?;
    InstanceFile::parse(&text)
}

fn load_gst(input: &InstanceArgs) -> Result<GstInstance, Error> {
    let mut file = read_file(&input.instance)?;
    if input.root.is_some() {
        file.root = input.root;
    }
    if input.cover_threshold.is_some() {
        file.cover_threshold = input.cover_threshold;
    }
    file.to_gst()
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report serializes")
}

fn degree_table(tree: &SubTree, inst: &GstInstance) -> Table {
    let mut t = Table::new(&["node", "degree", "bound", "ratio"]);
    for v in tree.nodes() {
        let d = tree.degree(*v);
        let b = inst.bound(*v);
        let ratio = b.map_or(String::new(), |b| format!("{}", d as f64 / b as f64));
        t.push(vec![v.to_string(), d.to_string(), b.map_or(String::new(), |b| b.to_string()), ratio]);
    }
    t
}

fn config(seed: u64, input: &InstanceArgs, extra: Value) -> Value {
    let mut c = json!({
        "seed": seed,
        "instance": input.instance.display().to_string(),
        "root": input.root,
        "cover_threshold": input.cover_threshold,
    });
    if let (Value::Object(c), Value::Object(extra)) = (&mut c, extra) {
        c.extend(extra);
    }
    c
}

fn rounding_constants() -> Value {
    json!({
        "iteration_cap_factor": ITERATION_CAP_FACTOR,
        "degree_factor": DEGREE_FACTOR,
        "tau_case_constant": TAU_CASE_CONSTANT,
    })
}

fn solve_tree(input: &InstanceArgs, common: &Common, iter_cap: Option<usize>, dump_lp: Option<&PathBuf>) -> Result<Output, Error> {
    let inst = load_gst(input)?;
    if let Some(path) = dump_lp {
        if inst.root.is_none() {
            return Err(Error::InvalidParameter("--dump-lp needs a root".into()));
        }
        let model = build_lp(&inst, inst.bounds.is_some())?;
        write_out(Some(path), &model.to_lp_format())?;
    }
    let cfg = config(common.seed, input, json!({ "iter_cap": iter_cap }));
    if inst.bounds.is_some() {
        let out = solve_bd_gst_tree(&inst, common.seed, iter_cap)?;
        let table = degree_table(&out.result.tree, &inst);
        let report = degree_concentration_report(&out.trace, &inst);
        let json = json!({
            "command": "solve-tree",
            "algorithm": "bicriteria-rounding",
            "config": cfg,
            "constants": rounding_constants(),
            "result": to_value(&out.result),
            "trace": to_value(&out.trace),
            "concentration": to_value(&report),
        });
        Ok(Output { json, table })
    } else {
        let out = solve_md_gst_tree(&inst, common.seed)?;
        let table = degree_table(&out.tree, &inst);
        let json = json!({
            "command": "solve-tree",
            "algorithm": "min-degree-rounding",
            "config": cfg,
            "constants": rounding_constants(),
            "result": to_value(&out),
        });
        Ok(Output { json, table })
    }
}

fn btw(input: &InstanceArgs, common: &Common, w: Option<usize>, dot: Option<&PathBuf>) -> Result<Output, Error> {
    let inst = load_gst(input)?;
    let out = solve_md_gst_btw(&inst, w, common.seed)?;
    if let Some(path) = dot {
        let d = match w {
            Some(w) => decompose(&inst.graph, &inst.groups, w)?,
            None => decompose_auto(&inst.graph, &inst.groups)?.1,
        };
        let text = d.separators.to_dot() + &d.contracted.t_prime_dot();
        write_out(Some(path), &text)?;
    }
    let json = json!({
        "command": "btw",
        "algorithm": "separator-tree",
        "config": config(common.seed, input, json!({ "w": w })),
        "constants": rounding_constants(),
        "result": to_value(&out),
    });
    Ok(Output { table: degree_table(&out.tree, &inst), json })
}

fn ktree(path: &PathBuf, common: &Common, mode: Mode, solver: SolverKind, w: Option<usize>, shuffle: bool) -> Result<Output, Error> {
    let mut inst = read_file(path)?.to_ktree()?;
    if shuffle {
        inst.terminals.shuffle(&mut substream(common.seed, u64::MAX));
    }
    let btw_solver = BtwSolver { w };
    let s: &dyn GstSolver = match solver {
        SolverKind::Oracle => &OracleSolver,
        SolverKind::Tree => &TreeSolver,
        SolverKind::Btw => &btw_solver,
    };
    let out = solve_md_ktree(&inst, s, mode.into(), common.seed)?;
    let mut table = Table::new(&["round", "a", "b", "full_bins", "degree", "terminals"]);
    for p in &out.pairs {
        table.push(vec![
            p.round.to_string(),
            p.a.to_string(),
            p.b.to_string(),
            p.full_bins.to_string(),
            p.degree.to_string(),
            p.terminals.to_string(),
        ]);
    }
    let json = json!({
        "command": "ktree",
        "config": {
            "seed": common.seed,
            "instance": path.display().to_string(),
            "shuffle_terminals": shuffle,
            "w": w,
        },
        "result": to_value(&out),
    });
    Ok(Output { json, table })
}

fn oracle(input: &InstanceArgs, common: &Common, cost: bool) -> Result<Output, Error> {
    let file = read_file(&input.instance)?;
    let (result, graph_edges) = if file.k.is_some() && file.groups.is_empty() {
        let inst = file.to_ktree()?;
        (brute_md_ktree(&inst)?, inst.graph)
    } else {
        let inst = load_gst(input)?;
        let r = if cost { brute_min_cost_bd_gst(&inst)? } else { brute_md_gst(&inst)? };
        (r, inst.graph)
    };
    let mut table = Table::new(&["u", "v"]);
    for &(u, v) in result.best_tree.edges() {
        table.push(vec![u.to_string(), v.to_string()]);
    }
    let objective = match &result.objective {
        steiner_degree::oracle::Objective::Degree(d) => json!(d),
        steiner_degree::oracle::Objective::Cost(c) => json!(format!("{}/{}", c.numer(), c.denom())),
    };
    let json = json!({
        "command": "oracle",
        "config": config(common.seed, input, json!({ "cost": cost })),
        "objective": objective,
        "tree": to_value(&result.best_tree),
        "tree_cost": format!("{}", result.best_tree.cost(&graph_edges)),
        "optimum_terminals": result.optimum_terminals,
    });
    Ok(Output { json, table })
}

fn stats(input: &InstanceArgs, common: &Common, trials: usize, iter_cap: Option<usize>) -> Result<Output, Error> {
    let inst = load_gst(input)?;
    if inst.root.is_none() {
        return Err(Error::InvalidParameter("stats needs a root".into()));
    }
    let sol = monotonize_checked(&solve_lp(&build_lp(&inst, inst.bounds.is_some())?)?, &inst)?;
    let fractional = verify_fractional(&sol, &inst);
    let probs: Vec<f64> = inst
        .groups
        .iter()
        .enumerate()
        .map(|(g, members)| estimate_connect_prob(&sol, members, trials, common.seed ^ g as u64))
        .collect();
    let out = solve_bd_gst_tree(&inst, common.seed, iter_cap)?;
    let report = degree_concentration_report(&out.trace, &inst);
    let mut table = Table::new(&["node", "tau", "case", "realized_degree", "independent_sum_bound", "bound", "threshold", "holds"]);
    for r in &report.rows {
        table.push(vec![
            r.node.to_string(),
            r.tau.to_string(),
            format!("{:?}", r.case),
            r.realized_degree.to_string(),
            r.independent_sum_bound.to_string(),
            r.bound.to_string(),
            r.threshold.to_string(),
            r.holds.to_string(),
        ]);
    }
    let json = json!({
        "command": "stats",
        "config": config(common.seed, input, json!({ "trials": trials, "iter_cap": iter_cap })),
        "constants": rounding_constants(),
        "lp_objective": sol.objective,
        "x": sol.x,
        "group_flows": fractional.group_flows,
        "connection_probability": probs,
        "iterations": out.result.iterations,
        "concentration": to_value(&report),
    });
    Ok(Output { json, table })
}

fn bench(suite: &str, runs: Option<usize>, trials: Option<usize>, mode: Option<Mode>, timing: bool, common: &Common) -> Result<Output, Error> {
    let suites: Vec<Suite> = if suite == "all" { Suite::ALL.to_vec() } else { vec![suite.parse()?] };
    let cfg = SuiteConfig { seed: common.seed, runs, trials, mode: mode.map(Into::into) };
    let mut reports = Vec::new();
    let mut table = Table::new(&["suite"]);
    for s in suites {
        let start = Instant::now();
        let mut r = run_suite(s, &cfg)?;
        if timing {
            r.wall_time_ms = Some(start.elapsed().as_millis());
        }
        let (header, rows) = r.table();
        if table.header.len() == 1 {
            table.header.extend(header);
        }
        for row in rows {
            let mut cells = vec![s.name().to_string()];
            cells.extend(row);
            table.push(cells);
        }
        reports.push(r);
    }
    if reports.len() > 1 {
        // Columns differ per suite; CSV carries only the shared leading ones.
        table.header.truncate(3);
        for row in &mut table.rows {
            row.truncate(3);
        }
    }
    let passed = reports.iter().all(|r| r.passed);
    let json = json!({ "command": "bench", "passed": passed, "reports": to_value(&reports) });
    Ok(Output { json, table })
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Gen {
            kind,
            n,
            w,
            groups,
            group_size,
            leaves,
            rows,
            cols,
            sets,
            max_cost,
            delete_prob,
            bounds,
            terminals,
            k,
            seed,
            out,
        } => {
            let sets: Vec<Vec<usize>> = match sets {
                Some(s) => serde_json::from_str(&s)?,
                None => Vec::new(),
            };
            let params = GenParams {
                n,
                w,
                groups,
                group_size,
                leaves,
                rows,
                cols,
                sets,
                max_cost,
                delete_prob,
                bounds,
                terminals,
                k,
            };
            let file = generate(kind, &params, seed)?;
            write_out(out.as_ref(), &(file.to_json() + "\n"))
        }
        Command::SolveTree { input, common, iter_cap, dump_lp } => {
            emit(&common, solve_tree(&input, &common, iter_cap, dump_lp.as_ref())?)
        }
        Command::Btw { input, common, w, dot } => emit(&common, btw(&input, &common, w, dot.as_ref())?),
        Command::Ktree { instance, common, mode, solver, w, shuffle_terminals } => {
            emit(&common, ktree(&instance, &common, mode, solver, w, shuffle_terminals)?)
        }
        Command::Oracle { input, common, cost } => emit(&common, oracle(&input, &common, cost)?),
        Command::Stats { input, common, trials, iter_cap } => emit(&common, stats(&input, &common, trials, iter_cap)?),
        Command::Bench { suite, runs, trials, mode, timing, common } => {
            let out = bench(&suite, runs, trials, mode, timing, &common)?;
            let passed = out.json["passed"].as_bool().unwrap_or(false);
            emit(&common, out)?;
            if !passed {
                eprintln!("some checks failed");
            }
            Ok(())
        }
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Infeasible(_) => 2,
        Error::IterationCapExceeded { .. } | Error::RoundCapExceeded { .. } => 3,
        _ => 1,
    }
}

fn main() -> ExitCode {
    if let Some(n) = std::env::var(THREADS_VAR).ok().and_then(|v| v.parse::<usize>().ok()) {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
