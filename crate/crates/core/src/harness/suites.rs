use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use rand::seq::index;
use rand::Rng;

use super::gen::{bounded_tw, planted_bounds, random_connected, random_groups, random_tree};
use super::{run_trials, trial_seed, Check, Suite, TrialRow};
use crate::error::{Error, Result};
use crate::instance::{Cost, Graph, GstInstance, KTreeInstance, NodeId};
use crate::ktree::{
    find_prime, full_bins_exists, pair_probability, residue_counts, solve_md_ktree, OracleSolver, ReductionMode,
};
use crate::lp::maxflow::max_flow_to_set;
use crate::lp::{build_lp, min_cut_by_enumeration, monotonize_checked, solve_lp, FractionalSolution, VERIFY_EPS};
use crate::oracle::{brute_md_gst, brute_md_ktree, brute_min_cost_bd_gst};
use crate::rng::substream;
use crate::rounding::{
    ceil_log2, degree_threshold, estimate_connect_prob, estimate_edge_marginals, solve_bd_gst_tree, DEGREE_FACTOR,
    ITERATION_CAP_FACTOR,
};
use crate::treewidth::{balance_limit, decompose, height_bound, rewire_back_edges, solve_md_gst_btw};

pub(super) struct SuiteBody {
    pub constants: BTreeMap<String, f64>,
    pub checks: Vec<Check>,
    pub summary: BTreeMap<String, f64>,
    pub rows: Vec<TrialRow>,
}

fn constants(pairs: &[(&str, f64)]) -> BTreeMap<String, f64> {
    pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn cost_f64(c: Cost) -> f64 {
    *c.numer() as f64 / *c.denom() as f64
}

fn describe(g: &Graph, groups: &[Vec<NodeId>]) -> String {
    format!("n={} m={} groups={:?}", g.node_count(), g.edge_count(), groups)
}

pub(super) fn lp_relaxation(seed: u64, runs: usize) -> Result<SuiteBody> {
    let rows = run_trials(runs, |i| {
        let mut rng = substream(trial_seed(seed, Suite::LpRelaxation, i), 0);
        let n = rng.random_range(3..=12);
        let g = random_tree(n, 10, &mut rng)?;
        let count = rng.random_range(1..=4);
        let size = rng.random_range(1..=3);
        let groups = random_groups(n, count, size, None, &mut rng);
        let inst = GstInstance::new(g, groups).with_root(0);
        let lp = solve_lp(&build_lp(&inst, false)?)?.objective;
        let opt = cost_f64(brute_min_cost_bd_gst(&inst)?.best_tree.cost(&inst.graph));
        let bounded = inst.clone().with_bounds(planted_bounds(&inst.graph, 0, &inst.groups));
        let lp_b = solve_lp(&build_lp(&bounded, true)?)?.objective;
        let opt_b = cost_f64(brute_min_cost_bd_gst(&bounded)?.best_tree.cost(&inst.graph));
        Ok(TrialRow::new(i, describe(&inst.graph, &inst.groups))
            .value("lp", lp)
            .value("opt", opt)
            .value("lp_bounded", lp_b)
            .value("opt_bounded", opt_b)
            .flag("lp_le_opt", lp <= opt + VERIFY_EPS)
            .flag("bounded_lp_le_opt", lp_b <= opt_b + VERIFY_EPS))
    })?;
    let checks = vec![
        Check::from_rows("lp_le_opt", &rows, |t| t),
        Check::from_rows("bounded_lp_le_opt", &rows, |t| t),
    ];
    let gap: f64 = rows.iter().map(|r| r.values["opt"] - r.values["lp"]).fold(f64::INFINITY, f64::min);
    Ok(SuiteBody {
        constants: constants(&[("tolerance", VERIFY_EPS)]),
        checks,
        summary: constants(&[("min_opt_minus_lp", gap)]),
        rows,
    })
}

pub(super) fn cut_flow(seed: u64, runs: usize) -> Result<SuiteBody> {
    let rows = run_trials(runs, |i| {
        let mut rng = substream(trial_seed(seed, Suite::CutFlow, i), 0);
        let n = rng.random_range(3..=8);
        let extra = rng.random_range(0..=(11 - n).min(4));
        let g = random_connected(n, extra, 1, &mut rng)?;
        let x: Vec<f64> = (0..g.edge_count())
            .map(|_| if rng.random_bool(0.15) { 0.0 } else { rng.random_range(0.0..=1.0) })
            .collect();
        let count = rng.random_range(1..=3);
        let size = rng.random_range(1..=3);
        let groups = random_groups(n, count, size, Some(0), &mut rng);
        let mut worst: f64 = 0.0;
        let mut agree = true;
        for grp in &groups {
            let cut = min_cut_by_enumeration(&g, &x, 0, std::slice::from_ref(grp));
            let flow = max_flow_to_set(&g, &x, 0, grp);
            worst = worst.max((cut - flow).abs());
            agree &= (cut >= 1.0 - VERIFY_EPS) == (flow >= 1.0 - VERIFY_EPS);
        }
        Ok(TrialRow::new(i, describe(&g, &groups))
            .value("max_cut_flow_gap", worst)
            .flag("values_agree", worst <= VERIFY_EPS)
            .flag("feasibility_agrees", agree))
    })?;
    let checks = vec![
        Check::from_rows("values_agree", &rows, |t| t),
        Check::from_rows("feasibility_agrees", &rows, |t| t),
    ];
    let worst = rows.iter().map(|r| r.values["max_cut_flow_gap"]).fold(0.0, f64::max);
    Ok(SuiteBody {
        constants: constants(&[("tolerance", VERIFY_EPS)]),
        checks,
        summary: constants(&[("max_cut_flow_gap", worst)]),
        rows,
    })
}

/// Complete binary tree of the given depth, root 0, children `2i+1, 2i+2`.
pub fn binary_tree(depth: u32) -> Graph {
    let n = (1usize << (depth + 1)) - 1;
    let edges: Vec<(NodeId, NodeId)> = (1..n).map(|v| ((v - 1) / 2, v)).collect();
    Graph::unit(n, &edges).expect("binary tree")
}

/// Depth-3 binary tree with a fixed fractional monotone vector: each edge
/// keeps a fixed share of its parent's value (0.9 or 0.6, then 0.7 or 0.5,
/// then 0.8 or 0.3 for left and right children).
pub fn marginals_solution() -> FractionalSolution {
    let g = binary_tree(3);
    let mut sol = FractionalSolution::from_edges(&g, 0, &[]).expect("tree");
    let shares = [[0.9, 0.6], [0.7, 0.5], [0.8, 0.3]];
    for v in 1..g.node_count() {
        let depth = (usize::BITS - (v + 1).leading_zeros() - 1) as usize;
        let e = g.edge_id((v - 1) / 2, v).unwrap();
        let parent = if depth == 1 { 1.0 } else { sol.x[g.edge_id(((v - 1) / 2 - 1) / 2, (v - 1) / 2).unwrap()] };
        sol.x[e] = parent * shares[depth - 1][(v + 1) % 2];
    }
    sol
}

pub(super) fn marginals(seed: u64, runs: usize, trials: usize) -> Result<SuiteBody> {
    let sol = marginals_solution();
    let rows = run_trials(runs, |i| {
        let freq = estimate_edge_marginals(&sol, trials, trial_seed(seed, Suite::Marginals, i));
        let mut row = TrialRow::new(i, "binary tree depth 3, fixed fractional x");
        let mut worst_slack = f64::INFINITY;
        for (e, (&x, &f)) in sol.x.iter().zip(&freq).enumerate() {
            let sigma = (x * (1.0 - x) / trials.max(1) as f64).sqrt();
            let tol = 3.0 * sigma + 1e-3;
            worst_slack = worst_slack.min(tol - (f - x).abs());
            row = row
                .value(&format!("x_e{e:02}"), x)
                .value(&format!("freq_e{e:02}"), f)
                .flag(&format!("edge_{e:02}_within"), (f - x).abs() <= tol);
        }
        Ok(row.value("min_slack", worst_slack))
    })?;
    let edge_flags: usize = rows.iter().map(|r| r.flags.len()).sum();
    let edge_ok: usize = rows.iter().map(|r| r.flags.values().filter(|&&b| b).count()).sum();
    Ok(SuiteBody {
        constants: constants(&[("sigmas", 3.0), ("additive", 1e-3)]),
        checks: vec![Check::all("edges_within_tolerance", edge_ok, edge_flags)],
        summary: BTreeMap::new(),
        rows,
    })
}

pub(super) fn connection(seed: u64, runs: usize, trials: usize) -> Result<SuiteBody> {
    let sizes = [8usize, 16, 32, 64];
    let rows = run_trials(runs, |i| {
        let mut rng = substream(trial_seed(seed, Suite::Connection, i), 0);
        let big_n = sizes[i % sizes.len()];
        let n = 3 * big_n;
        let g = random_tree(n, 10, &mut rng)?;
        let groups = random_groups(n, 4, big_n, Some(0), &mut rng);
        let inst = GstInstance::new(g, groups).with_root(0);
        let sol = monotonize_checked(&solve_lp(&build_lp(&inst, false)?)?, &inst)?;
        let threshold = 0.1 / (big_n as f64).log2();
        let mut row = TrialRow::new(i, format!("n={n} N={big_n} groups=4")).value("N", big_n as f64);
        for (gi, grp) in inst.groups.iter().enumerate() {
            let p = estimate_connect_prob(&sol, grp, trials, trial_seed(seed, Suite::Connection, 1000 * i + gi));
            row = row.value(&format!("p_group{gi}"), p).flag(&format!("group{gi}_above"), p >= threshold);
        }
        Ok(row.value("threshold", threshold))
    })?;
    let total: usize = rows.iter().map(|r| r.flags.len()).sum();
    let ok: usize = rows.iter().map(|r| r.flags.values().filter(|&&b| b).count()).sum();
    let min_ratio = rows
        .iter()
        .flat_map(|r| r.values.iter().filter(|(k, _)| k.starts_with("p_group")).map(|(_, v)| v / r.values["threshold"]))
        .fold(f64::INFINITY, f64::min);
    Ok(SuiteBody {
        constants: constants(&[("probability_constant", 0.1), ("required_fraction", 0.95)]),
        checks: vec![Check::new("pairs_above_threshold", ok, total, (0.95 * total as f64).ceil() as usize)],
        summary: constants(&[("min_probability_over_threshold", min_ratio)]),
        rows,
    })
}

pub const DEGREE_BOUND_N: usize = 200;
pub const DEGREE_BOUND_GROUPS: usize = 8;
pub const DEGREE_BOUND_GROUP_SIZE: usize = 6;
pub const COST_FACTOR: f64 = 16.0;

pub(super) fn degree_bound(seed: u64, runs: usize) -> Result<SuiteBody> {
    let n = DEGREE_BOUND_N;
    let log_n = ceil_log2(DEGREE_BOUND_GROUP_SIZE) as f64;
    let log_s = ceil_log2(DEGREE_BOUND_GROUPS) as f64;
    let iter_limit = ITERATION_CAP_FACTOR as f64 * log_n * log_s;
    let cost_limit = COST_FACTOR * log_n * log_s;
    let deg_limit = degree_threshold(n);
    let rows = run_trials(runs, |i| {
        let ts = trial_seed(seed, Suite::DegreeBound, i);
        let mut rng = substream(ts, 0);
        let g = random_tree(n, 10, &mut rng)?;
        let groups = random_groups(n, DEGREE_BOUND_GROUPS, DEGREE_BOUND_GROUP_SIZE, Some(0), &mut rng);
        let bounds = planted_bounds(&g, 0, &groups);
        let inst = GstInstance::new(g, groups).with_root(0).with_bounds(bounds);
        let row = TrialRow::new(i, format!("random tree n={n} seed-stream={i}"));
        match solve_bd_gst_tree(&inst, ts, None) {
            Ok(out) => {
                let r = &out.result;
                let ratio = r.max_degree_ratio();
                let cost = cost_f64(r.cost);
                let cost_ratio = if r.lp_objective > 1e-9 { cost / r.lp_objective } else { 1.0 };
                Ok(row
                    .value("max_degree_ratio", ratio)
                    .value("iterations", r.iterations as f64)
                    .value("cost", cost)
                    .value("lp_objective", r.lp_objective)
                    .value("cost_over_lp", cost_ratio)
                    .flag("degree_within", ratio <= deg_limit)
                    .flag("iterations_within", r.iterations as f64 <= iter_limit)
                    .flag("feasible", inst.is_feasible_tree(&r.tree)))
            }
            Err(Error::IterationCapExceeded { .. }) => Ok(row
                .flag("degree_within", false)
                .flag("iterations_within", false)
                .flag("feasible", false)),
            Err(e) => Err(e),
        }
    })?;
    let ratios: Vec<f64> = rows.iter().filter_map(|r| r.values.get("cost_over_lp").copied()).collect();
    let mean_cost = ratios.iter().sum::<f64>() / ratios.len().max(1) as f64;
    let mut iters: Vec<f64> = rows.iter().filter_map(|r| r.values.get("iterations").copied()).collect();
    iters.sort_by(f64::total_cmp);
    let median = iters.get(iters.len() / 2).copied().unwrap_or(f64::NAN);
    let max_ratio = rows.iter().filter_map(|r| r.values.get("max_degree_ratio")).fold(0.0f64, |a, &b| a.max(b));
    let checks = vec![
        Check::from_rows("degree_within", &rows, |t| (t * 99).div_ceil(100)),
        Check::from_rows("iterations_within", &rows, |t| (t * 95).div_ceil(100)),
        Check::from_rows("feasible", &rows, |t| t),
        Check::new("mean_cost_within", usize::from(mean_cost <= cost_limit), 1, 1),
    ];
    Ok(SuiteBody {
        constants: constants(&[
            ("n", n as f64),
            ("groups", DEGREE_BOUND_GROUPS as f64),
            ("group_size", DEGREE_BOUND_GROUP_SIZE as f64),
            ("degree_factor", DEGREE_FACTOR),
            ("degree_limit", deg_limit),
            ("iteration_factor", ITERATION_CAP_FACTOR as f64),
            ("iteration_limit", iter_limit),
            ("cost_factor", COST_FACTOR),
            ("cost_limit", cost_limit),
        ]),
        checks,
        summary: constants(&[
            ("mean_cost_over_lp", mean_cost),
            ("median_iterations", median),
            ("max_degree_ratio", max_ratio),
        ]),
        rows,
    })
}

pub(super) fn two_point(seed: u64, runs: usize) -> Result<SuiteBody> {
    let mut residue_total = 0;
    let mut residue_ok = 0;
    let mut min_slack = Ratio::new(1i64, 1);
    for k in 1..=64usize {
        let p = find_prime(k);
        for c in residue_counts(k, p) {
            let hit = Ratio::new(c as i64, p as i64);
            let bound = Ratio::new(1, k as i64) - Ratio::new(2, p as i64);
            residue_total += 1;
            residue_ok += usize::from(hit >= bound);
            min_slack = min_slack.min(hit - bound);
        }
    }
    let mut pair_total = 0;
    let mut pair_ok = 0;
    for k in 1..=8usize {
        let p = find_prime(k);
        let bound = (Ratio::new(1i64, k as i64) + Ratio::new(1, p as i64)).pow(2);
        for i in 0..p {
            for i2 in i + 1..p {
                for j in 0..k {
                    pair_total += 1;
                    pair_ok += usize::from(pair_probability(k, p, i, i2, j) <= bound);
                }
            }
        }
    }
    let k = 16;
    let p = find_prime(k);
    let universe = 4 * k;
    let rows = run_trials(runs, |i| {
        let mut rng = substream(trial_seed(seed, Suite::TwoPoint, i), 0);
        let mut r_star: Vec<usize> = index::sample(&mut rng, universe, k).into_iter().collect();
        r_star.sort_unstable();
        let row = TrialRow::new(i, format!("R*={r_star:?}"));
        Ok(match full_bins_exists(&r_star, k, p) {
            Ok((a, b, full)) => row.value("a", a as f64).value("b", b as f64).value("full_bins", full as f64).flag("pair_found", true),
            Err(Error::NoPairFound { .. }) => row.flag("pair_found", false),
            Err(e) => return Err(e),
        })
    })?;
    let checks = vec![
        Check::all("hit_probability_lower_bound", residue_ok, residue_total),
        Check::all("pairwise_upper_bound", pair_ok, pair_total),
        Check::from_rows("pair_found", &rows, |t| t),
    ];
    Ok(SuiteBody {
        constants: constants(&[("k_max", 64.0), ("pairwise_k_max", 8.0), ("sweep_k", k as f64), ("sweep_p", p as f64)]),
        checks,
        summary: constants(&[("min_hit_slack", *min_slack.numer() as f64 / *min_slack.denom() as f64)]),
        rows,
    })
}

pub const KTREE_FACTOR: usize = 8;

fn random_ktree(rng: &mut crate::rng::TrialRng) -> Result<KTreeInstance> {
    let n = rng.random_range(5..=12);
    let extra = rng.random_range(0..=n / 2);
    let g = random_connected(n, extra, 1, rng)?;
    let t = rng.random_range(2..=n);
    let terminals: Vec<NodeId> = index::sample(rng, n, t).into_iter().collect();
    let k = rng.random_range(1..=t);
    Ok(KTreeInstance::new(g, terminals, k))
}

pub(super) fn ktree(seed: u64, runs: usize, mode: Option<ReductionMode>) -> Result<SuiteBody> {
    let modes: Vec<ReductionMode> = match mode {
        Some(m) => vec![m],
        None => vec![ReductionMode::Randomized, ReductionMode::Derandomized],
    };
    let rows = run_trials(runs, |i| {
        let ts = trial_seed(seed, Suite::KTree, i);
        let mut rng = substream(ts, 0);
        let inst = random_ktree(&mut rng)?;
        let opt = brute_md_ktree(&inst)?.degree().unwrap_or(0);
        let k = inst.k;
        let factor = KTREE_FACTOR * ceil_log2(k + 2);
        let log_k = (k.max(2) as f64).log2();
        let log_n = (inst.graph.node_count() as f64).log2();
        let mut row = TrialRow::new(i, format!("n={} |R|={} k={k}", inst.graph.node_count(), inst.terminals.len()))
            .value("k", k as f64)
            .value("oracle_degree", opt as f64);
        for &m in &modes {
            let tag = match m {
                ReductionMode::Randomized => "randomized",
                ReductionMode::Derandomized => "derandomized",
            };
            let out = solve_md_ktree(&inst, &OracleSolver, m, ts)?;
            let d = out.degree as f64;
            let base = opt.max(1) as f64;
            row = row
                .value(&format!("{tag}_degree"), d)
                .value(&format!("{tag}_rounds"), out.rounds.len() as f64)
                .value(&format!("{tag}_ratio_over_log_k"), d / base / log_k)
                .value(&format!("{tag}_ratio_over_log_n"), d / base / log_n)
                .flag(&format!("{tag}_covers_k"), out.terminals_covered >= k)
                .flag(&format!("{tag}_degree_within"), out.degree <= factor * opt);
        }
        Ok(row)
    })?;
    let mut checks = Vec::new();
    for m in &modes {
        let tag = match m {
            ReductionMode::Randomized => "randomized",
            ReductionMode::Derandomized => "derandomized",
        };
        checks.push(Check::from_rows(&format!("{tag}_covers_k"), &rows, |t| t));
        checks.push(Check::from_rows(&format!("{tag}_degree_within"), &rows, |t| (t * 95).div_ceil(100)));
    }
    Ok(SuiteBody {
        constants: constants(&[("degree_factor", KTREE_FACTOR as f64)]),
        checks,
        summary: BTreeMap::new(),
        rows,
    })
}

fn random_btw(rng: &mut crate::rng::TrialRng, n_lo: usize, n_hi: usize, w_hi: usize) -> Result<(Graph, usize)> {
    let n = rng.random_range(n_lo..=n_hi);
    let w = rng.random_range(1..=w_hi);
    Ok((bounded_tw(n, w, 0.3, 1, rng)?, w))
}

pub(super) fn separators(seed: u64, runs: usize) -> Result<SuiteBody> {
    let rows = run_trials(runs, |i| {
        let mut rng = substream(trial_seed(seed, Suite::Separators, i), 0);
        let (g, w) = random_btw(&mut rng, 8, 60, 3)?;
        let n = g.node_count();
        let row = TrialRow::new(i, format!("n={n} m={} w={w}", g.edge_count())).value("w", w as f64);
        let d = match decompose(&g, &[], w) {
            Ok(d) => d,
            Err(Error::NonBackwardEdge(..)) => return Ok(row.flag("backward_edges", false)),
            Err(e) => return Err(e),
        };
        let t = &d.separators;
        let sizes_ok = t.nodes.iter().all(|s| s.set.len() <= w + 1);
        let balance_ok = t.nodes.iter().filter(|s| !s.is_leaf).all(|s| {
            s.children.iter().all(|&c| t.nodes[c].region.len() <= balance_limit(s.region.len()))
        });
        let depth = t.depth();
        let added = d.connection.degrees(&g).into_iter().max().unwrap_or(0);
        let mut seen = vec![0; n];
        for s in &t.nodes {
            for &v in &s.set {
                seen[v] += 1;
            }
        }
        Ok(row
            .value("depth", depth as f64)
            .value("height_bound", height_bound(n) as f64)
            .value("max_added_degree", added as f64)
            .flag("separator_sizes", sizes_ok)
            .flag("component_sizes", balance_ok)
            .flag("height", depth <= height_bound(n))
            .flag("added_degree", added <= 2 * (w + 1) * depth)
            .flag("partition", seen.iter().all(|&c| c == 1))
            .flag("backward_edges", true))
    })?;
    let checks = ["separator_sizes", "component_sizes", "height", "added_degree", "partition", "backward_edges"]
        .iter()
        .map(|name| Check::from_rows(name, &rows, |t| t))
        .collect();
    Ok(SuiteBody { constants: constants(&[("balance", 0.8)]), checks, summary: BTreeMap::new(), rows })
}

pub(super) fn btw(seed: u64, runs: usize) -> Result<SuiteBody> {
    let rows = run_trials(runs, |i| {
        let ts = trial_seed(seed, Suite::Btw, i);
        let mut rng = substream(ts, 0);
        let (g, w) = random_btw(&mut rng, 6, 14, 2)?;
        let n = g.node_count();
        let count = rng.random_range(1..=3);
        let size = rng.random_range(1..=3);
        let groups = random_groups(n, count, size, None, &mut rng);
        let inst = GstInstance::new(g, groups);
        let opt = brute_md_gst(&inst)?.degree().unwrap_or(0);
        let limit = DEGREE_FACTOR * (n as f64).log2().powi(3) * opt as f64;
        let out = solve_md_gst_btw(&inst, Some(w), ts)?;
        Ok(TrialRow::new(i, format!("{} w={w}", describe(&inst.graph, &inst.groups)))
            .value("degree", out.degree as f64)
            .value("oracle_degree", opt as f64)
            .value("depth", out.depth as f64)
            .flag("feasible", inst.is_feasible_tree(&out.tree))
            .flag("degree_within", out.degree as f64 <= limit))
    })?;
    let checks = vec![
        Check::from_rows("feasible", &rows, |t| t),
        Check::from_rows("degree_within", &rows, |t| (t * 48).div_ceil(50)),
    ];
    let worst = rows
        .iter()
        .map(|r| r.values["degree"] / r.values["oracle_degree"].max(1.0))
        .fold(0.0, f64::max);
    Ok(SuiteBody {
        constants: constants(&[("degree_factor", DEGREE_FACTOR)]),
        checks,
        summary: constants(&[("max_degree_over_oracle", worst)]),
        rows,
    })
}

pub(super) fn rewiring(seed: u64, runs: usize) -> Result<SuiteBody> {
    let rows = run_trials(runs, |i| {
        let ts = trial_seed(seed, Suite::Rewiring, i);
        let mut rng = substream(ts, 0);
        let (g, w, d, groups) = loop {
            let (g, w) = random_btw(&mut rng, 8, 24, 2)?;
            let groups = random_groups(g.node_count(), rng.random_range(1..=3), rng.random_range(1..=3), None, &mut rng);
            let d = decompose(&g, &groups, w)?;
            if d.contracted.g_prime.node_count() <= crate::oracle::ORACLE_NODE_LIMIT {
                break (g, w, d, groups);
            }
        };
        let depth = d.separators.depth();
        let c = &d.contracted;
        let g_inst = GstInstance::new(c.g_prime.clone(), c.groups.clone());
        let opt = brute_md_gst(&g_inst)?.best_tree;
        let d_in = opt.max_degree();
        let anchor = opt.nodes()[0];
        let out = rewire_back_edges(opt.edges(), &d.separators, anchor)?;
        let in_t = out.edges().iter().all(|&(a, b)| c.t_prime.edge_id(a, b).is_some());
        let t_inst = GstInstance::new(c.t_prime.clone(), c.groups.clone());
        let covered = t_inst.is_feasible_tree(&out);
        let allowed = 2 * (w + 1) * depth * d_in;
        let worst = (0..c.t_prime.node_count())
            .map(|v| out.degree(v) as i64 - opt.degree(v) as i64)
            .max()
            .unwrap_or(0);
        let back: BTreeSet<(usize, usize)> = c.backward_edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        let used_back = opt.edges().iter().filter(|e| back.contains(e)).count();
        Ok(TrialRow::new(i, format!("{} w={w} supernodes={}", describe(&g, &groups), c.g_prime.node_count()))
            .value("input_degree", d_in as f64)
            .value("output_degree", out.max_degree() as f64)
            .value("max_increase", worst as f64)
            .value("backward_edges_used", used_back as f64)
            .value("depth", depth as f64)
            .flag("inside_t_prime", in_t)
            .flag("coverage", covered)
            .flag("degree_increase", worst <= allowed as i64))
    })?;
    let checks = ["inside_t_prime", "coverage", "degree_increase"]
        .iter()
        .map(|name| Check::from_rows(name, &rows, |t| t))
        .collect();
    let used = rows.iter().filter(|r| r.values["backward_edges_used"] > 0.0).count();
    Ok(SuiteBody {
        constants: BTreeMap::new(),
        checks,
        summary: constants(&[("optima_using_backward_edges", used as f64)]),
        rows,
    })
}
