//! The group Steiner cut LP on tree inputs, with degree rows.
//!
//! The cut family `x(δ(A)) ≥ 1` for every `A` separating the root from a
//! group is written as a flow: each group ships one unit from the root to
//! its members. On a rooted tree the flow on an edge is the total amount
//! delivered below it, so the model keeps one sink variable `d[S][v]` per
//! group member and one capacity row per edge on a root–group path:
//!
//! ```text
//!   Σ_{v ∈ S below e} d[S][v] ≤ x_e        Σ_{v ∈ S} d[S][v] ≥ 1
//! ```
//!
//! Degree rows read `x(δ(v)) − b_v·x_{e_v} ≤ 0`, with `x_{e_v}` replaced by
//! the constant 1 at the root. Edges that lie on no root–group path get no
//! variable; their value is 0.

pub mod maxflow;
pub mod simplex;

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::instance::{cost_to_f64, EdgeId, Graph, GstInstance, NodeId, RootedTree};
use simplex::{Constraint, LinearProgram, Sense, SimplexError};

/// Tolerance used when checking a fractional solution from outside the solver.
pub const VERIFY_EPS: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VarKind {
    Edge(EdgeId),
    Sink { group: usize, node: NodeId },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RowKind {
    EdgeUpper(EdgeId),
    Capacity { group: usize, edge: EdgeId },
    Demand { group: usize },
    Degree { node: NodeId },
    Monotone { edge: EdgeId },
}

#[derive(Clone, Debug)]
pub struct LpModel {
    pub tree: RootedTree,
    pub vars: Vec<VarKind>,
    pub rows: Vec<RowKind>,
    pub program: LinearProgram,
    /// Variable index of each graph edge, if it has one.
    pub edge_var: Vec<Option<usize>>,
}

/// Edge values of an LP solution on a tree rooted at `tree.root`, plus the
/// dummy root edge `f` with `x_f = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct FractionalSolution {
    pub tree: RootedTree,
    pub x: Vec<f64>,
    pub x_f: f64,
    pub objective: f64,
}

impl FractionalSolution {
    pub fn root(&self) -> NodeId {
        self.tree.root
    }

    /// `p(e)`; `None` stands for the dummy edge `f`.
    pub fn parent(&self, e: EdgeId) -> Option<EdgeId> {
        self.tree.parent_of_edge(e)
    }

    pub fn parent_value(&self, e: EdgeId) -> f64 {
        self.parent(e).map_or(self.x_f, |p| self.x[p])
    }

    /// `x_e / x_{p(e)}`, clamped to `[0, 1]`; 0 when the parent value is 0.
    pub fn ratio(&self, e: EdgeId) -> f64 {
        let p = self.parent_value(e);
        if p <= 0.0 {
            0.0
        } else {
            (self.x[e] / p).clamp(0.0, 1.0)
        }
    }

    /// `x_{e_v}`, with `x_f` at the root.
    pub fn up_value(&self, v: NodeId) -> f64 {
        self.tree.parent_edge[v].map_or(self.x_f, |e| self.x[e])
    }

    /// `x(δ(v))`.
    pub fn incident_sum(&self, v: NodeId) -> f64 {
        let up = self.tree.parent_edge[v].map_or(0.0, |e| self.x[e]);
        up + self.tree.children[v].iter().map(|&c| self.x[self.tree.parent_edge[c].unwrap()]).sum::<f64>()
    }

    /// `x(δ(v)) / x_{e_v}`, 0 when `x_{e_v} = 0`.
    pub fn degree_ratio(&self, v: NodeId) -> f64 {
        let up = self.up_value(v);
        if up <= 0.0 {
            0.0
        } else {
            self.incident_sum(v) / up
        }
    }

    pub fn cost(&self, graph: &Graph) -> f64 {
        graph.edges().iter().zip(&self.x).map(|(e, &x)| cost_to_f64(&e.cost) * x).sum()
    }

    /// Characteristic vector of a set of edges.
    pub fn from_edges(graph: &Graph, root: NodeId, edges: &[EdgeId]) -> Result<Self> {
        let tree = RootedTree::new(graph, root)?;
        let mut x = vec![0.0; graph.edge_count()];
        for &e in edges {
            x[e] = 1.0;
        }
        let mut sol = FractionalSolution { tree, x, x_f: 1.0, objective: 0.0 };
        sol.objective = sol.cost(graph);
        Ok(sol)
    }
}

fn active_groups(instance: &GstInstance, root: NodeId) -> Vec<usize> {
    (0..instance.groups.len()).filter(|&g| !instance.groups[g].contains(&root)).collect()
}

/// Builds the flow form of the cut LP, optionally with degree rows. Degree
/// rows come with monotone rows `x_e ≤ x_{p(e)}`, which every inclusion-minimal
/// integral tree through the root satisfies.
pub fn build_lp(instance: &GstInstance, with_degree_rows: bool) -> Result<LpModel> {
    instance.validate()?;
    let root = instance.root.ok_or(Error::RootMissing)?;
    let graph = &instance.graph;
    let tree = RootedTree::new(graph, root)?;
    if with_degree_rows && instance.bounds.is_none() {
        return Err(Error::InvalidParameter("degree rows need per-node bounds".into()));
    }
    let active = active_groups(instance, root);

    // Edges below which each active group has members.
    let mut below: Vec<Vec<Vec<NodeId>>> = vec![vec![Vec::new(); graph.edge_count()]; instance.groups.len()];
    let mut relevant = vec![false; graph.edge_count()];
    for &g in &active {
        for &v in &instance.groups[g] {
            for e in tree.path_to_root(v) {
                below[g][e].push(v);
                relevant[e] = true;
            }
        }
    }

    let mut vars = Vec::new();
    let mut edge_var = vec![None; graph.edge_count()];
    for e in (0..graph.edge_count()).filter(|&e| relevant[e]) {
        edge_var[e] = Some(vars.len());
        vars.push(VarKind::Edge(e));
    }
    let mut sink_var = vec![Vec::new(); instance.groups.len()];
    for &g in &active {
        for &v in &instance.groups[g] {
            sink_var[g].push((v, vars.len()));
            vars.push(VarKind::Sink { group: g, node: v });
        }
    }
    let sink_of = |g: usize, v: NodeId| sink_var[g].iter().find(|&&(w, _)| w == v).unwrap().1;

    let mut rows = Vec::new();
    let mut constraints = Vec::new();
    let mut push = |kind: RowKind, coeffs: Vec<(usize, f64)>, sense: Sense, rhs: f64| {
        rows.push(kind);
        constraints.push(Constraint { coeffs, sense, rhs });
    };
    for (e, var) in edge_var.iter().enumerate() {
        if let Some(j) = *var {
            push(RowKind::EdgeUpper(e), vec![(j, 1.0)], Sense::Le, 1.0);
        }
    }
    for &g in &active {
        for e in 0..graph.edge_count() {
            if below[g][e].is_empty() {
                continue;
            }
            let mut coeffs: Vec<(usize, f64)> = below[g][e].iter().map(|&v| (sink_of(g, v), 1.0)).collect();
            coeffs.push((edge_var[e].unwrap(), -1.0));
            push(RowKind::Capacity { group: g, edge: e }, coeffs, Sense::Le, 0.0);
        }
        let coeffs = sink_var[g].iter().map(|&(_, j)| (j, 1.0)).collect();
        push(RowKind::Demand { group: g }, coeffs, Sense::Ge, 1.0);
    }
    if with_degree_rows {
        let bounds = instance.bounds.as_ref().unwrap();
        for (v, &bound) in bounds.iter().enumerate() {
            let incident: Vec<usize> = graph.neighbors(v).iter().filter_map(|&(_, e)| edge_var[e]).collect();
            if incident.is_empty() {
                continue;
            }
            let b = bound as f64;
            let mut coeffs: Vec<(usize, f64)> = incident.iter().map(|&j| (j, 1.0)).collect();
            match tree.parent_edge[v] {
                Some(up) => {
                    let j = edge_var[up].expect("parent of a relevant edge is relevant");
                    for c in coeffs.iter_mut().filter(|c| c.0 == j) {
                        c.1 -= b;
                    }
                    push(RowKind::Degree { node: v }, coeffs, Sense::Le, 0.0);
                }
                None => push(RowKind::Degree { node: v }, coeffs, Sense::Le, b),
            }
        }
        for e in 0..graph.edge_count() {
            if let (Some(j), Some(p)) = (edge_var[e], tree.parent_of_edge(e)) {
                let jp = edge_var[p].unwrap();
                push(RowKind::Monotone { edge: e }, vec![(j, 1.0), (jp, -1.0)], Sense::Le, 0.0);
            }
        }
    }

    let objective = vars
        .iter()
        .map(|v| match v {
            VarKind::Edge(e) => cost_to_f64(&graph.edge(*e).cost),
            VarKind::Sink { .. } => 0.0,
        })
        .collect();
    let program = LinearProgram { num_vars: vars.len(), objective, constraints };
    Ok(LpModel { tree, vars, rows, program, edge_var })
}

pub fn solve_lp(model: &LpModel) -> Result<FractionalSolution> {
    let sol = simplex::solve(&model.program).map_err(|e| match e {
        SimplexError::Infeasible => Error::Infeasible("LP has no feasible point".into()),
        SimplexError::Unbounded => Error::Unbounded,
    })?;
    let mut x = vec![0.0; model.edge_var.len()];
    for (e, var) in model.edge_var.iter().enumerate() {
        if let Some(j) = var {
            x[e] = sol.x[*j].clamp(0.0, 1.0);
        }
    }
    Ok(FractionalSolution { tree: model.tree.clone(), x, x_f: 1.0, objective: sol.objective })
}

/// `x_e ← min(x_e, x_{p(e)})` in root-to-leaf order.
pub fn monotonize(sol: &FractionalSolution) -> FractionalSolution {
    let mut out = sol.clone();
    for e in sol.tree.edge_order() {
        let p = out.parent_value(e);
        if out.x[e] > p {
            out.x[e] = p;
        }
    }
    out
}

/// [`monotonize`], then re-check every group's max-flow. A group that was
/// feasible before and is not afterwards is reported as an error.
pub fn monotonize_checked(sol: &FractionalSolution, instance: &GstInstance) -> Result<FractionalSolution> {
    let before = verify_fractional(sol, instance);
    let mut out = monotonize(sol);
    out.objective = out.cost(&instance.graph);
    let after = verify_fractional(&out, instance);
    for (g, (&b, &a)) in before.group_flows.iter().zip(&after.group_flows).enumerate() {
        if b >= 1.0 - VERIFY_EPS && a < 1.0 - VERIFY_EPS {
            return Err(Error::MonotonizationBrokeFeasibility { group: g, flow: a });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq)]
pub struct FractionalReport {
    /// Max-flow from the root to each group (infinite for groups holding the root).
    pub group_flows: Vec<f64>,
    pub min_group_flow: f64,
    /// `x(δ(v)) − b_v·x_{e_v}` per node, when bounds are present.
    pub degree_residuals: Option<Vec<f64>>,
    pub max_degree_violation: f64,
    pub max_monotone_violation: f64,
}

impl FractionalReport {
    pub fn is_feasible(&self) -> bool {
        self.min_group_flow >= 1.0 - VERIFY_EPS && self.max_degree_violation <= VERIFY_EPS
    }
}

pub fn verify_fractional(sol: &FractionalSolution, instance: &GstInstance) -> FractionalReport {
    let root = sol.root();
    let group_flows: Vec<f64> =
        instance.groups.iter().map(|g| maxflow::max_flow_to_set(&instance.graph, &sol.x, root, g)).collect();
    let min_group_flow = group_flows.iter().copied().fold(f64::INFINITY, f64::min);
    let degree_residuals = instance.bounds.as_ref().map(|b| {
        (0..instance.graph.node_count())
            .map(|v| sol.incident_sum(v) - b[v] as f64 * sol.up_value(v))
            .collect::<Vec<f64>>()
    });
    let max_degree_violation = degree_residuals.as_ref().map_or(0.0, |r| r.iter().copied().fold(0.0, f64::max));
    let max_monotone_violation =
        (0..sol.x.len()).map(|e| (sol.x[e] - sol.parent_value(e)).max(0.0)).fold(0.0, f64::max);
    FractionalReport { group_flows, min_group_flow, degree_residuals, max_degree_violation, max_monotone_violation }
}

/// Smallest `x(δ(A))` over every node set `A` that avoids the root and
/// contains a whole group, by listing all subsets. Only for small graphs.
pub fn min_cut_by_enumeration(graph: &Graph, x: &[f64], root: NodeId, groups: &[Vec<NodeId>]) -> f64 {
    let n = graph.node_count();
    assert!(n <= 20, "cut enumeration is exponential");
    let group_masks: Vec<u32> =
        groups.iter().filter(|g| !g.contains(&root)).map(|g| g.iter().fold(0u32, |m, &v| m | 1 << v)).collect();
    let mut best = f64::INFINITY;
    for a in 0u32..(1 << n) {
        if a >> root & 1 == 1 || !group_masks.iter().any(|&g| g & !a == 0) {
            continue;
        }
        let cut: f64 = graph
            .edges()
            .iter()
            .enumerate()
            .filter(|(_, e)| (a >> e.u & 1) != (a >> e.v & 1))
            .map(|(id, _)| x[id])
            .sum();
        best = best.min(cut);
    }
    best
}

fn var_name(v: &VarKind) -> String {
    match v {
        VarKind::Edge(e) => format!("x_e{e}"),
        VarKind::Sink { group, node } => format!("d_g{group}_v{node}"),
    }
}

fn row_name(r: &RowKind) -> String {
    match r {
        RowKind::EdgeUpper(e) => format!("up_e{e}"),
        RowKind::Capacity { group, edge } => format!("cap_g{group}_e{edge}"),
        RowKind::Demand { group } => format!("dem_g{group}"),
        RowKind::Degree { node } => format!("deg_v{node}"),
        RowKind::Monotone { edge } => format!("mono_e{edge}"),
    }
}

fn terms(coeffs: &[(usize, f64)], vars: &[VarKind]) -> String {
    let mut s = String::new();
    for (i, &(j, a)) in coeffs.iter().enumerate() {
        let sign = if a < 0.0 {
            " -"
        } else if i == 0 {
            ""
        } else {
            " +"
        };
        let _ = write!(s, "{sign} {} {}", a.abs(), var_name(&vars[j]));
    }
    s
}

impl LpModel {
    /// The model in CPLEX LP text format.
    pub fn to_lp_format(&self) -> String {
        let mut out = String::from("\\ group Steiner cut LP, flow form\nMinimize\n obj:");
        let obj: Vec<(usize, f64)> = self.program.objective.iter().copied().enumerate().collect();
        if obj.is_empty() {
            out.push_str(" 0");
        } else {
            out.push_str(&terms(&obj, &self.vars));
        }
        out.push_str("\nSubject To\n");
        for (kind, row) in self.rows.iter().zip(&self.program.constraints) {
            let op = match row.sense {
                Sense::Le => "<=",
                Sense::Ge => ">=",
                Sense::Eq => "=",
            };
            let _ = writeln!(out, " {}:{} {op} {}", row_name(kind), terms(&row.coeffs, &self.vars), row.rhs);
        }
        out.push_str("End\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Cost;

    fn star2() -> GstInstance {
        let g = Graph::unit(3, &[(0, 1), (0, 2)]).unwrap();
        GstInstance::new(g, vec![vec![1, 2]]).with_root(0)
    }

    #[test]
    fn star_without_degree_rows_has_value_one() {
        let sol = solve_lp(&build_lp(&star2(), false).unwrap()).unwrap();
        assert!((sol.objective - 1.0).abs() < 1e-9);
        assert!((sol.x[0] + sol.x[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn star_with_root_bound_one() {
        let inst = star2().with_bounds(vec![1, 1, 1]);
        let sol = solve_lp(&build_lp(&inst, true).unwrap()).unwrap();
        assert!((sol.objective - 1.0).abs() < 1e-9);
        assert!((sol.x[0] + sol.x[1] - 1.0).abs() < 1e-9);
    }

    #[test]
    fn path_forces_whole_path() {
        let g = Graph::new(3, [(0, 1, Cost::from_integer(2)), (1, 2, Cost::new(1, 2))]).unwrap();
        let inst = GstInstance::new(g, vec![vec![2]]).with_root(0);
        let sol = solve_lp(&build_lp(&inst, false).unwrap()).unwrap();
        assert!((sol.x[0] - 1.0).abs() < 1e-9 && (sol.x[1] - 1.0).abs() < 1e-9);
        assert!((sol.objective - 2.5).abs() < 1e-9);
    }

    #[test]
    fn group_at_root_costs_nothing() {
        let g = Graph::unit(3, &[(0, 1), (1, 2)]).unwrap();
        let inst = GstInstance::new(g, vec![vec![0]]).with_root(0).with_uniform_bound(2);
        let sol = solve_lp(&build_lp(&inst, true).unwrap()).unwrap();
        assert!(sol.x.iter().all(|&x| x == 0.0));
        assert_eq!(sol.objective, 0.0);
    }

    #[test]
    fn degree_row_shapes() {
        // Path 0-1-2-3 rooted at 0, group {3}, bound 2 everywhere.
        let g = Graph::unit(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let inst = GstInstance::new(g, vec![vec![3]]).with_root(0).with_uniform_bound(2);
        let model = build_lp(&inst, true).unwrap();
        let idx = model.rows.iter().position(|r| *r == RowKind::Degree { node: 1 }).unwrap();
        let row = &model.program.constraints[idx];
        // x_{01} + x_{12} − 2·x_{01} ≤ 0
        let mut coeffs = row.coeffs.clone();
        coeffs.sort_by_key(|c| c.0);
        assert_eq!(coeffs, vec![(0, -1.0), (1, 1.0)]);
        assert_eq!(row.rhs, 0.0);
        let idx = model.rows.iter().position(|r| *r == RowKind::Degree { node: 0 }).unwrap();
        assert_eq!(model.program.constraints[idx].rhs, 2.0);
    }

    #[test]
    fn degree_rows_on_integral_vectors() {
        // x_{e_v} = 0 forces x(δ(v)) = 0; x_{e_v} = 1 leaves x(δ(v)) ≤ b_v.
        let g = Graph::unit(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        let inst = GstInstance::new(g.clone(), vec![vec![2], vec![3]]).with_root(0).with_uniform_bound(2);
        let zero = FractionalSolution::from_edges(&g, 0, &[]).unwrap();
        let mut leaked = zero.clone();
        leaked.x[g.edge_id(1, 2).unwrap()] = 1.0;
        assert!(verify_fractional(&leaked, &inst).max_degree_violation > 0.5);
        let full = FractionalSolution::from_edges(&g, 0, &[0, 1, 2]).unwrap();
        let rep = verify_fractional(&full, &inst);
        assert!(rep.max_degree_violation > 0.5, "node 1 has degree 3 > 2");
        let bound3 = inst.clone().with_uniform_bound(3);
        assert!(verify_fractional(&full, &bound3).is_feasible());
    }

    #[test]
    fn infeasible_degree_rows() {
        // Star with three singleton groups and root bound 2.
        let g = Graph::unit(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let inst = GstInstance::new(g, vec![vec![1], vec![2], vec![3]]).with_root(0).with_uniform_bound(2);
        assert!(matches!(solve_lp(&build_lp(&inst, true).unwrap()), Err(Error::Infeasible(_))));
    }

    #[test]
    fn errors_on_bad_input() {
        let cyc = Graph::unit(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let inst = GstInstance::new(cyc, vec![vec![2]]).with_root(0);
        assert!(matches!(build_lp(&inst, false), Err(Error::NotATree)));
        let mut no_root = star2();
        no_root.root = None;
        assert!(matches!(build_lp(&no_root, false), Err(Error::RootMissing)));
    }

    #[test]
    fn monotonize_examples() {
        let g = Graph::unit(3, &[(0, 1), (1, 2)]).unwrap();
        let mut sol = FractionalSolution::from_edges(&g, 0, &[]).unwrap();
        sol.x = vec![0.4, 0.7];
        let m = monotonize(&sol);
        assert_eq!(m.x, vec![0.4, 0.4]);
        sol.x = vec![1.0, 0.3];
        assert_eq!(monotonize(&sol).x, vec![1.0, 0.3]);
    }

    #[test]
    fn zero_vector_has_zero_flow() {
        let inst = star2();
        let sol = FractionalSolution::from_edges(&inst.graph, 0, &[]).unwrap();
        assert_eq!(verify_fractional(&sol, &inst).min_group_flow, 0.0);
    }

    #[test]
    fn lp_dump_mentions_every_row() {
        let inst = star2().with_bounds(vec![1, 1, 1]);
        let model = build_lp(&inst, true).unwrap();
        let text = model.to_lp_format();
        assert!(text.starts_with("\\"));
        assert!(text.contains("dem_g0: 1 d_g0_v1 + 1 d_g0_v2 >= 1"), "{text}");
        assert_eq!(text.lines().filter(|l| l.contains(':')).count(), model.rows.len() + 1);
        assert!(text.ends_with("End\n"));
    }
}
