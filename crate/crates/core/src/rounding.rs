//! Dependent randomized rounding of the tree LP.
//!
//! One round flips a coin for every edge, keeping `e` with probability
//! `x_e / x_{p(e)}` (the dummy root edge has value 1), and returns the kept
//! edges whose whole path to the root was kept. The chance that an edge
//! ends up connected telescopes to `x_e`. Rounds repeat until enough groups
//! touch the root component; the union is pruned back to the leaves that
//! serve a covered group.

use std::collections::{BTreeSet, VecDeque};

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{Cost, EdgeId, GstInstance, NodeId, SubTree};
use crate::lp::{build_lp, monotonize_checked, solve_lp, FractionalSolution};
use crate::rng::{stream_id, substream};

/// Multiplier in the default iteration cap `64·⌈log₂(N+2)⌉·⌈log₂(|𝒮|+2)⌉`.
pub const ITERATION_CAP_FACTOR: usize = 64;
/// Degree threshold constant: a node is fine while `deg ≤ 40·(log₂ n)²·b_v`.
pub const DEGREE_FACTOR: f64 = 40.0;
/// Constant `c` separating the `τ_v ≥ c·log₂ n` regime from the middle one.
pub const TAU_CASE_CONSTANT: f64 = 1.0;

pub fn ceil_log2(x: usize) -> usize {
    if x <= 1 {
        0
    } else {
        (usize::BITS - (x - 1).leading_zeros()) as usize
    }
}

pub fn default_iteration_cap(max_group_size: usize, groups: usize) -> usize {
    ITERATION_CAP_FACTOR * ceil_log2(max_group_size + 2) * ceil_log2(groups + 2)
}

/// `40·(log₂ n)²`.
pub fn degree_threshold(n: usize) -> f64 {
    let l = (n.max(2) as f64).log2();
    DEGREE_FACTOR * l * l
}

struct Sample {
    connected: Vec<EdgeId>,
    coins: Vec<bool>,
}

fn sample<R: Rng + ?Sized>(sol: &FractionalSolution, order: &[EdgeId], rng: &mut R) -> Sample {
    let m = sol.x.len();
    let mut coins = vec![false; m];
    let mut linked = vec![false; m];
    for &e in order {
        coins[e] = rng.random::<f64>() < sol.ratio(e);
        linked[e] = coins[e] && sol.parent(e).is_none_or(|p| linked[p]);
    }
    let connected = (0..m).filter(|&e| linked[e]).collect();
    Sample { connected, coins }
}

/// One rounding pass. `sol` must be monotone with `x_f = 1`. Returns the
/// sorted ids of the sampled edges whose path to the root was sampled too.
pub fn round_once<R: Rng + ?Sized>(sol: &FractionalSolution, rng: &mut R) -> Vec<EdgeId> {
    sample(sol, &sol.tree.edge_order(), rng).connected
}

fn connected_nodes(sol: &FractionalSolution, edges: &[EdgeId]) -> Vec<NodeId> {
    let mut nodes: Vec<NodeId> = edges.iter().map(|&e| sol.tree.lower[e]).collect();
    nodes.push(sol.root());
    nodes
}

/// Fraction of `trials` independent passes whose root component touches
/// `group`. Trial `i` uses stream `i` of `seed`.
pub fn estimate_connect_prob(sol: &FractionalSolution, group: &[NodeId], trials: usize, seed: u64) -> f64 {
    if group.contains(&sol.root()) {
        return 1.0;
    }
    let order = sol.tree.edge_order();
    let in_group: BTreeSet<NodeId> = group.iter().copied().collect();
    let hits: usize = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(seed, i as u64);
            let s = sample(sol, &order, &mut rng);
            usize::from(s.connected.iter().any(|&e| in_group.contains(&sol.tree.lower[e])))
        })
        .sum();
    hits as f64 / trials.max(1) as f64
}

/// Empirical probability that each edge is connected to the root.
pub fn estimate_edge_marginals(sol: &FractionalSolution, trials: usize, seed: u64) -> Vec<f64> {
    let order = sol.tree.edge_order();
    let m = sol.x.len();
    let counts = (0..trials)
        .into_par_iter()
        .map(|i| {
            let mut rng = substream(seed, i as u64);
            let mut c = vec![0u32; m];
            for e in sample(sol, &order, &mut rng).connected {
                c[e] += 1;
            }
            c
        })
        .reduce(
            || vec![0u32; m],
            |mut a, b| {
                for (x, y) in a.iter_mut().zip(b) {
                    *x += y;
                }
                a
            },
        );
    counts.into_iter().map(|c| c as f64 / trials.max(1) as f64).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct IterationRecord {
    pub connected_edges: Vec<EdgeId>,
    pub newly_connected_groups: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RoundingTrace {
    pub seed: u64,
    pub root: NodeId,
    pub iteration_cap: usize,
    pub iterations: Vec<IterationRecord>,
    pub iteration_count: usize,
    /// Degrees in the union of connected edges, before pruning.
    pub cumulative_degree: Vec<usize>,
    /// Per node, the number of successful coin flips on incident edges over
    /// all iterations: an upper bound on its degree by independent sums.
    pub independent_sum_bound: Vec<usize>,
    /// `x(δ(v)) / x_{e_v}` of the rounded solution.
    pub fractional_degree_ratio: Vec<f64>,
    pub bounds: Option<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BicriteriaResult {
    pub root: NodeId,
    pub tree: SubTree,
    #[serde(serialize_with = "serialize_cost")]
    pub cost: Cost,
    /// `deg_T(v) / b_v`; plain degrees when the instance has no bounds.
    pub degree_ratios: Vec<f64>,
    pub iterations: usize,
    pub covered_groups: usize,
    pub lp_objective: f64,
}

impl BicriteriaResult {
    pub fn max_degree_ratio(&self) -> f64 {
        self.degree_ratios.iter().copied().fold(0.0, f64::max)
    }
}

pub fn serialize_cost<S: serde::Serializer>(c: &Cost, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&format!("{}/{}", c.numer(), c.denom()))
}

impl Serialize for SubTree {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("SubTree", 2)?;
        st.serialize_field("nodes", self.nodes())?;
        st.serialize_field("edges", self.edges())?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BicriteriaOutcome {
    pub result: BicriteriaResult,
    pub trace: RoundingTrace,
}

/// Rounds `sol` (rooted at `instance.root`) until `cover_threshold` groups
/// are connected, then prunes.
pub fn round_to_cover(
    instance: &GstInstance,
    sol: &FractionalSolution,
    seed: u64,
    iteration_cap: Option<usize>,
) -> Result<BicriteriaOutcome> {
    let graph = &instance.graph;
    let n = graph.node_count();
    let root = sol.root();
    let cap = iteration_cap.unwrap_or_else(|| default_iteration_cap(instance.max_group_size(), instance.group_count()));
    let mut member_of: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (g, members) in instance.groups.iter().enumerate() {
        for &v in members {
            member_of[v].push(g);
        }
    }
    let mut covered: Vec<bool> = instance.groups.iter().map(|g| g.contains(&root)).collect();
    let mut count = covered.iter().filter(|&&c| c).count();
    let order = sol.tree.edge_order();
    let mut rng = substream(seed, stream_id("rounding", root as u64));
    let mut union = BTreeSet::new();
    let mut independent = vec![0usize; n];
    let mut iterations = Vec::new();
    while count < instance.cover_threshold {
        if iterations.len() == cap {
            return Err(Error::IterationCapExceeded { cap });
        }
        let s = sample(sol, &order, &mut rng);
        for (e, &c) in s.coins.iter().enumerate() {
            if c {
                let edge = graph.edge(e);
                independent[edge.u] += 1;
                independent[edge.v] += 1;
            }
        }
        let mut newly = Vec::new();
        for v in connected_nodes(sol, &s.connected) {
            for &g in &member_of[v] {
                if !covered[g] {
                    covered[g] = true;
                    count += 1;
                    newly.push(g);
                }
            }
        }
        newly.sort_unstable();
        union.extend(s.connected.iter().copied());
        iterations.push(IterationRecord { connected_edges: s.connected, newly_connected_groups: newly });
    }

    let mut cumulative_degree = vec![0usize; n];
    for &e in &union {
        let edge = graph.edge(e);
        cumulative_degree[edge.u] += 1;
        cumulative_degree[edge.v] += 1;
    }
    let kept = prune(instance, sol, &union, &covered, &member_of);
    let tree = SubTree::from_edge_ids(graph, &kept, Some(root))?;
    let degrees = tree.degrees(n);
    let degree_ratios = (0..n)
        .map(|v| {
            let b = instance.bound(v).unwrap_or(1) as f64;
            degrees[v] as f64 / b
        })
        .collect();
    let covered_groups = crate::instance::covers(&tree, instance);
    let result = BicriteriaResult {
        root,
        cost: tree.cost(graph),
        tree,
        degree_ratios,
        iterations: iterations.len(),
        covered_groups,
        lp_objective: sol.objective,
    };
    let trace = RoundingTrace {
        seed,
        root,
        iteration_cap: cap,
        iteration_count: iterations.len(),
        iterations,
        cumulative_degree,
        independent_sum_bound: independent,
        fractional_degree_ratio: (0..n).map(|v| sol.degree_ratio(v)).collect(),
        bounds: instance.bounds.clone(),
    };
    Ok(BicriteriaOutcome { result, trace })
}

/// Strips leaves (other than the root) whose removal keeps every covered
/// group hit.
fn prune(
    instance: &GstInstance,
    sol: &FractionalSolution,
    union: &BTreeSet<EdgeId>,
    covered: &[bool],
    member_of: &[Vec<usize>],
) -> Vec<EdgeId> {
    let graph = &instance.graph;
    let n = graph.node_count();
    let root = sol.root();
    let mut in_tree = vec![false; n];
    in_tree[root] = true;
    let mut degree = vec![0usize; n];
    for &e in union {
        let edge = graph.edge(e);
        in_tree[edge.u] = true;
        in_tree[edge.v] = true;
        degree[edge.u] += 1;
        degree[edge.v] += 1;
    }
    let mut hits = vec![0usize; instance.groups.len()];
    for v in (0..n).filter(|&v| in_tree[v]) {
        for &g in &member_of[v] {
            hits[g] += 1;
        }
    }
    let removable = |v: NodeId, hits: &[usize]| member_of[v].iter().all(|&g| !covered[g] || hits[g] >= 2);
    let mut alive: BTreeSet<EdgeId> = union.clone();
    let mut queue: VecDeque<NodeId> = (0..n).filter(|&v| v != root && degree[v] == 1).collect();
    while let Some(v) = queue.pop_front() {
        if !in_tree[v] || degree[v] != 1 || v == root || !removable(v, &hits) {
            continue;
        }
        let e = sol.tree.parent_edge[v].expect("non-root node has a parent edge");
        debug_assert!(alive.contains(&e));
        alive.remove(&e);
        in_tree[v] = false;
        degree[v] = 0;
        for &g in &member_of[v] {
            hits[g] -= 1;
        }
        let u = sol.tree.parent[v].unwrap();
        degree[u] -= 1;
        if u != root && degree[u] == 1 {
            queue.push_back(u);
        }
    }
    alive.into_iter().collect()
}

fn rooted(instance: &GstInstance, root: NodeId) -> GstInstance {
    let mut inst = instance.clone();
    inst.root = Some(root);
    inst
}

/// Solves the LP for one root and rounds it.
fn solve_bd_rooted(instance: &GstInstance, seed: u64, iteration_cap: Option<usize>) -> Result<BicriteriaOutcome> {
    let model = build_lp(instance, instance.bounds.is_some())?;
    let sol = monotonize_checked(&solve_lp(&model)?, instance)?;
    let mut out = round_to_cover(instance, &sol, seed, iteration_cap)?;
    out.result.lp_objective = sol.objective;
    Ok(out)
}

/// Bicriteria solver for bounded-degree group Steiner tree on a tree.
/// Without a root every node is tried and the cheapest result wins (then
/// the smaller max degree ratio, then the smaller root id).
pub fn solve_bd_gst_tree(instance: &GstInstance, seed: u64, iteration_cap: Option<usize>) -> Result<BicriteriaOutcome> {
    instance.validate()?;
    if !instance.graph.is_tree() {
        return Err(Error::NotATree);
    }
    if let Some(r) = instance.root {
        return solve_bd_rooted(&rooted(instance, r), seed, iteration_cap);
    }
    let mut best: Option<BicriteriaOutcome> = None;
    let mut last_err = None;
    for r in 0..instance.graph.node_count() {
        match solve_bd_rooted(&rooted(instance, r), seed, iteration_cap) {
            Ok(out) => {
                let better = best.as_ref().is_none_or(|b| {
                    (out.result.cost, out.result.max_degree_ratio()) < (b.result.cost, b.result.max_degree_ratio())
                });
                if better {
                    best = Some(out);
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    best.ok_or_else(|| last_err.unwrap_or(Error::Infeasible("no root admits a solution".into())))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct MdTreeOutcome {
    pub root: NodeId,
    pub tree: SubTree,
    pub max_degree: usize,
    /// Smallest uniform bound with a feasible LP for the winning root.
    pub lp_degree_bound: u32,
    /// Uniform bound whose rounding produced `tree`.
    pub bound_used: u32,
    pub iterations: usize,
}

/// Min-degree group Steiner tree on a tree: binary search over a uniform
/// bound `d` with zero costs, rounding at every LP-feasible probe, keeping
/// the tree with the smallest realized max degree.
pub fn solve_md_gst_tree(instance: &GstInstance, seed: u64) -> Result<MdTreeOutcome> {
    instance.validate()?;
    if !instance.graph.is_tree() {
        return Err(Error::NotATree);
    }
    let roots: Vec<NodeId> = match instance.root {
        Some(r) => vec![r],
        None => (0..instance.graph.node_count()).collect(),
    };
    let zero = GstInstance { graph: instance.graph.with_uniform_cost(Cost::from_integer(0)), ..instance.clone() };
    let mut best: Option<MdTreeOutcome> = None;
    let mut last_err = None;
    for r in roots {
        match solve_md_rooted(&rooted(&zero, r), seed) {
            Ok(out) => {
                let better = best.as_ref().is_none_or(|b| {
                    (out.max_degree, out.tree.edges().len()) < (b.max_degree, b.tree.edges().len())
                });
                if better {
                    best = Some(out);
                }
            }
            Err(e) => last_err = Some(e),
        }
    }
    best.ok_or_else(|| last_err.unwrap_or(Error::Infeasible("no root admits a solution".into())))
}

fn solve_md_rooted(instance: &GstInstance, seed: u64) -> Result<MdTreeOutcome> {
    let root = instance.root.unwrap();
    let n = instance.graph.node_count();
    let at_root = instance.groups.iter().filter(|g| g.contains(&root)).count();
    if at_root >= instance.cover_threshold || n == 1 {
        return Ok(MdTreeOutcome {
            root,
            tree: SubTree::single(root),
            max_degree: 0,
            lp_degree_bound: 0,
            bound_used: 0,
            iterations: 0,
        });
    }
    let probe = |d: u32| -> Result<Option<FractionalSolution>> {
        let inst = instance.clone().with_uniform_bound(d);
        match solve_lp(&build_lp(&inst, true)?) {
            Ok(sol) => Ok(Some(monotonize_checked(&sol, &inst)?)),
            Err(Error::Infeasible(_)) => Ok(None),
            Err(e) => Err(e),
        }
    };
    let (mut lo, mut hi) = (1u32, (n - 1) as u32);
    let mut feasible: Vec<(u32, FractionalSolution)> = Vec::new();
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        match probe(mid)? {
            Some(sol) => {
                feasible.push((mid, sol));
                hi = mid;
            }
            None => lo = mid + 1,
        }
    }
    if !feasible.iter().any(|(d, _)| *d == lo) {
        match probe(lo)? {
            Some(sol) => feasible.push((lo, sol)),
            None => return Err(Error::Infeasible(format!("LP infeasible even with bound {lo}"))),
        }
    }
    let mut best: Option<MdTreeOutcome> = None;
    for (d, sol) in feasible {
        let inst = instance.clone().with_uniform_bound(d);
        let out = round_to_cover(&inst, &sol, seed ^ crate::rng::mix(d as u64), None)?;
        let tree = out.result.tree;
        let cand = MdTreeOutcome {
            root,
            max_degree: tree.max_degree(),
            tree,
            lp_degree_bound: lo,
            bound_used: d,
            iterations: out.result.iterations,
        };
        let better = best.as_ref().is_none_or(|b| {
            (cand.max_degree, cand.tree.edges().len(), cand.bound_used)
                < (b.max_degree, b.tree.edges().len(), b.bound_used)
        });
        if better {
            best = Some(cand);
        }
    }
    Ok(best.unwrap())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TauCase {
    /// `τ_v ≥ c·log₂ n`
    High,
    /// `1 ≤ τ_v < c·log₂ n`
    Middle,
    /// `τ_v < 1`
    Low,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DegreeRow {
    pub node: NodeId,
    pub tau: f64,
    pub case: TauCase,
    pub realized_degree: usize,
    pub independent_sum_bound: usize,
    pub bound: u32,
    pub threshold: f64,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConcentrationReport {
    pub degree_factor: f64,
    pub tau_case_constant: f64,
    pub rows: Vec<DegreeRow>,
    pub violations: usize,
}

/// Labels every node by its `τ_v = iterations · x(δ(v))/x_{e_v}` regime and
/// checks its realized degree against `40·(log₂ n)²·b_v`.
pub fn degree_concentration_report(trace: &RoundingTrace, instance: &GstInstance) -> ConcentrationReport {
    let n = instance.graph.node_count();
    let log_n = (n.max(2) as f64).log2();
    let base = degree_threshold(n);
    let rows: Vec<DegreeRow> = (0..n)
        .map(|v| {
            let tau = trace.iteration_count as f64 * trace.fractional_degree_ratio[v];
            let case = if tau >= TAU_CASE_CONSTANT * log_n {
                TauCase::High
            } else if tau >= 1.0 {
                TauCase::Middle
            } else {
                TauCase::Low
            };
            let bound = trace.bounds.as_ref().map_or(1, |b| b[v]);
            let threshold = base * bound as f64;
            let realized = trace.cumulative_degree[v];
            DegreeRow {
                node: v,
                tau,
                case,
                realized_degree: realized,
                independent_sum_bound: trace.independent_sum_bound[v],
                bound,
                threshold,
                holds: realized as f64 <= threshold,
            }
        })
        .collect();
    let violations = rows.iter().filter(|r| !r.holds).count();
    ConcentrationReport { degree_factor: DEGREE_FACTOR, tau_case_constant: TAU_CASE_CONSTANT, rows, violations }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Graph;

    fn path3() -> Graph {
        Graph::unit(3, &[(0, 1), (1, 2)]).unwrap()
    }

    #[test]
    fn all_ones_keeps_everything() {
        let sol = FractionalSolution::from_edges(&path3(), 0, &[0, 1]).unwrap();
        let mut rng = substream(1, 0);
        for _ in 0..20 {
            assert_eq!(round_once(&sol, &mut rng), vec![0, 1]);
        }
    }

    #[test]
    fn all_zeros_keeps_nothing() {
        let sol = FractionalSolution::from_edges(&path3(), 0, &[]).unwrap();
        let mut rng = substream(1, 0);
        assert!(round_once(&sol, &mut rng).is_empty());
    }

    #[test]
    fn telescoping_marginal_on_path() {
        let mut sol = FractionalSolution::from_edges(&path3(), 0, &[]).unwrap();
        sol.x = vec![0.8, 0.4];
        let m = estimate_edge_marginals(&sol, 100_000, 11);
        assert!((m[1] - 0.4).abs() < 0.02, "{m:?}");
        assert!((m[0] - 0.8).abs() < 0.02, "{m:?}");
    }

    #[test]
    fn connect_prob_trivial_cases() {
        let sol = FractionalSolution::from_edges(&path3(), 0, &[0, 1]).unwrap();
        assert_eq!(estimate_connect_prob(&sol, &[0], 10, 3), 1.0);
        assert_eq!(estimate_connect_prob(&sol, &[2], 100, 3), 1.0);
    }

    #[test]
    fn single_group_gives_root_path() {
        let g = Graph::unit(5, &[(0, 1), (1, 2), (0, 3), (3, 4)]).unwrap();
        let inst = GstInstance::new(g, vec![vec![2]]).with_root(0).with_uniform_bound(2);
        let out = solve_bd_gst_tree(&inst, 5, None).unwrap();
        assert_eq!(out.result.tree.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(out.result.cost, Cost::from_integer(2));
        assert_eq!(out.result.iterations, 1);
    }

    #[test]
    fn groups_at_root_need_nothing() {
        let inst = GstInstance::new(path3(), vec![vec![0], vec![0, 2]]).with_root(0).with_uniform_bound(1);
        let out = solve_bd_gst_tree(&inst, 5, None).unwrap();
        assert_eq!(out.result.tree, SubTree::single(0));
        assert_eq!(out.result.cost, Cost::from_integer(0));
        assert_eq!(out.result.iterations, 0);
    }

    #[test]
    fn md_star_with_singletons() {
        let g = Graph::unit(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let inst = GstInstance::new(g, vec![vec![1], vec![2], vec![3]]);
        let out = solve_md_gst_tree(&inst, 9).unwrap();
        assert_eq!(out.max_degree, 3);
    }

    #[test]
    fn md_path_far_end() {
        let g = Graph::unit(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let inst = GstInstance::new(g, vec![vec![4]]).with_root(0);
        let out = solve_md_gst_tree(&inst, 9).unwrap();
        assert!(out.max_degree <= 2);
        assert!(inst.is_feasible_tree(&out.tree));
    }

    #[test]
    fn trace_is_deterministic() {
        let g = Graph::unit(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        let inst = GstInstance::new(g, vec![vec![3, 5], vec![4, 6]]).with_root(0).with_uniform_bound(3);
        let a = solve_bd_gst_tree(&inst, 77, None).unwrap();
        let b = solve_bd_gst_tree(&inst, 77, None).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn iteration_cap_is_enforced() {
        let g = Graph::unit(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        let inst = GstInstance::new(g, vec![vec![3, 4, 5, 6]]).with_root(0);
        let model = build_lp(&inst, false).unwrap();
        let mut sol = solve_lp(&model).unwrap();
        // Shrink everything: a pass now almost never connects the group.
        for x in &mut sol.x {
            *x *= 1e-9;
        }
        let err = round_to_cover(&inst, &sol, 1, Some(3)).unwrap_err();
        assert!(matches!(err, Error::IterationCapExceeded { cap: 3 }));
    }

    #[test]
    fn concentration_rows() {
        let g = Graph::unit(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let inst = GstInstance::new(g, vec![vec![2]]).with_root(0).with_uniform_bound(2);
        let out = solve_bd_gst_tree(&inst, 4, None).unwrap();
        let rep = degree_concentration_report(&out.trace, &inst);
        assert_eq!(rep.violations, 0);
        let row3 = &rep.rows[3];
        assert_eq!(row3.realized_degree, 0);
        assert_eq!(row3.case, TauCase::Low);
        // x(δ(1))/x_{e_1} = 2 = b_1, so τ_1 = iterations · 2.
        assert!((rep.rows[1].tau - out.trace.iteration_count as f64 * 2.0).abs() < 1e-9);
    }

    #[test]
    fn caps_and_thresholds() {
        assert_eq!(ceil_log2(1), 0);
        assert_eq!(ceil_log2(8), 3);
        assert_eq!(ceil_log2(9), 4);
        assert_eq!(default_iteration_cap(8, 8), 64 * 4 * 4);
    }
}
