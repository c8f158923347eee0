//! Seeded instance generators.

use std::collections::BTreeSet;
use std::str::FromStr;

use rand::seq::{index, SliceRandom};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{Cost, EdgeId, Graph, GstInstance, KTreeInstance, NodeId};
use crate::io::InstanceFile;
use crate::oracle::gen_hitting_set_star;
use crate::rng::{stream_id, substream, TrialRng};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GenKind {
    RandomTree,
    BoundedTw,
    Star,
    HittingSetStar,
    GridStrip,
}

impl FromStr for GenKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "random-tree" => GenKind::RandomTree,
            "bounded-tw" => GenKind::BoundedTw,
            "star" => GenKind::Star,
            "hitting-set-star" => GenKind::HittingSetStar,
            "grid-strip" => GenKind::GridStrip,
            other => return Err(Error::InvalidParameter(format!("unknown generator {other:?}"))),
        })
    }
}

/// Generator parameters; each kind reads the fields it needs.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GenParams {
    pub n: usize,
    pub w: usize,
    pub groups: usize,
    pub group_size: usize,
    pub leaves: usize,
    pub rows: usize,
    pub cols: usize,
    pub sets: Vec<Vec<usize>>,
    pub max_cost: i64,
    /// Chance that a bounded-tw generator tries to drop each edge.
    pub delete_prob: f64,
    /// Add degree bounds read off a planted feasible tree.
    pub bounds: bool,
    /// With `k > 0` the output is a k-tree instance over this many terminals.
    pub terminals: usize,
    pub k: usize,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            n: 12,
            w: 2,
            groups: 3,
            group_size: 2,
            leaves: 4,
            rows: 3,
            cols: 4,
            sets: Vec::new(),
            max_cost: 1,
            delete_prob: 0.3,
            bounds: false,
            terminals: 0,
            k: 0,
        }
    }
}

fn relabel(n: usize, edges: &[(NodeId, NodeId)], rng: &mut TrialRng) -> Vec<(NodeId, NodeId)> {
    let mut perm: Vec<NodeId> = (0..n).collect();
    perm.shuffle(rng);
    edges.iter().map(|&(u, v)| (perm[u], perm[v])).collect()
}

fn with_costs(n: usize, edges: &[(NodeId, NodeId)], max_cost: i64, rng: &mut TrialRng) -> Result<Graph> {
    let max_cost = max_cost.max(1);
    Graph::new(n, edges.iter().map(|&(u, v)| (u, v, Cost::from_integer(rng.random_range(1..=max_cost)))))
}

/// Uniform random recursive tree with shuffled labels.
pub fn random_tree(n: usize, max_cost: i64, rng: &mut TrialRng) -> Result<Graph> {
    let edges: Vec<(NodeId, NodeId)> = (1..n).map(|i| (rng.random_range(0..i), i)).collect();
    let edges = relabel(n, &edges, rng);
    with_costs(n, &edges, max_cost, rng)
}

/// Random connected graph: a random tree plus `extra` random chords.
pub fn random_connected(n: usize, extra: usize, max_cost: i64, rng: &mut TrialRng) -> Result<Graph> {
    let mut edges: BTreeSet<(NodeId, NodeId)> = (1..n).map(|i| (rng.random_range(0..i), i)).collect();
    let mut tries = 0;
    while edges.len() < n - 1 + extra && tries < 50 * (extra + 1) {
        tries += 1;
        let u = rng.random_range(0..n);
        let v = rng.random_range(0..n);
        if u != v {
            edges.insert((u.min(v), u.max(v)));
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    let edges = relabel(n, &edges, rng);
    with_costs(n, &edges, max_cost, rng)
}

/// A random `w`-tree on `n` nodes (treewidth exactly `w` when `n > w`),
/// then random edge deletions that keep it connected. Deleting edges never
/// raises treewidth.
pub fn bounded_tw(n: usize, w: usize, delete_prob: f64, max_cost: i64, rng: &mut TrialRng) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("n must be positive".into()));
    }
    let w = w.max(1);
    let base = n.min(w + 1);
    let mut edges: BTreeSet<(NodeId, NodeId)> = BTreeSet::new();
    for u in 0..base {
        for v in u + 1..base {
            edges.insert((u, v));
        }
    }
    let mut cliques: Vec<Vec<NodeId>> = if base == w + 1 {
        (0..base).map(|skip| (0..base).filter(|&x| x != skip).collect()).collect()
    } else {
        Vec::new()
    };
    for v in base..n {
        let c = cliques[rng.random_range(0..cliques.len())].clone();
        for &u in &c {
            edges.insert((u, v));
        }
        for skip in 0..c.len() {
            let mut next: Vec<NodeId> = c.iter().copied().enumerate().filter(|&(i, _)| i != skip).map(|(_, x)| x).collect();
            next.push(v);
            cliques.push(next);
        }
    }
    let mut order: Vec<(NodeId, NodeId)> = edges.iter().copied().collect();
    order.shuffle(rng);
    for e in order {
        if !rng.random_bool(delete_prob.clamp(0.0, 1.0)) {
            continue;
        }
        edges.remove(&e);
        let kept: Vec<_> = edges.iter().copied().collect();
        if !Graph::unit(n, &kept)?.is_connected() {
            edges.insert(e);
        }
    }
    let edges: Vec<_> = edges.into_iter().collect();
    let edges = relabel(n, &edges, rng);
    with_costs(n, &edges, max_cost, rng)
}

pub fn grid(rows: usize, cols: usize) -> Result<Graph> {
    let mut edges = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            let v = i * cols + j;
            if j + 1 < cols {
                edges.push((v, v + 1));
            }
            if i + 1 < rows {
                edges.push((v, v + cols));
            }
        }
    }
    Graph::unit(rows * cols, &edges)
}

/// `count` groups of `size` distinct random nodes, never containing `avoid`.
pub fn random_groups(n: usize, count: usize, size: usize, avoid: Option<NodeId>, rng: &mut TrialRng) -> Vec<Vec<NodeId>> {
    let pool: Vec<NodeId> = (0..n).filter(|&v| Some(v) != avoid).collect();
    let size = size.clamp(1, pool.len().max(1));
    (0..count)
        .map(|_| {
            let mut g: Vec<NodeId> = index::sample(rng, pool.len(), size).into_iter().map(|i| pool[i]).collect();
            g.sort_unstable();
            g
        })
        .collect()
}

/// Degrees of a feasible tree built from hop-shortest root paths to the
/// nearest member of each group (at least 1), so the bounded LP is feasible.
pub fn planted_bounds(graph: &Graph, root: NodeId, groups: &[Vec<NodeId>]) -> Vec<u32> {
    let n = graph.node_count();
    let all = vec![true; n];
    let mut union: BTreeSet<EdgeId> = BTreeSet::new();
    for g in groups {
        let best = g.iter().filter_map(|&t| graph.shortest_path_within(&[root], t, &all)).min_by_key(|p| p.len());
        union.extend(best.unwrap_or_default());
    }
    let tree = graph.bfs_tree_of(root, &union);
    let mut deg = vec![0u32; n];
    for e in tree {
        let (u, v) = graph.edge(e).endpoints();
        deg[u] += 1;
        deg[v] += 1;
    }
    deg.into_iter().map(|d| d.max(1)).collect()
}

fn finish(graph: Graph, root: Option<NodeId>, params: &GenParams, rng: &mut TrialRng) -> Result<InstanceFile> {
    let n = graph.node_count();
    if params.k > 0 {
        let t = params.terminals.clamp(params.k, n);
        let mut terminals: Vec<NodeId> = index::sample(rng, n, t).into_iter().collect();
        terminals.sort_unstable();
        return Ok(InstanceFile::from_ktree(&KTreeInstance::new(graph, terminals, params.k)));
    }
    let groups = random_groups(n, params.groups, params.group_size, root, rng);
    let mut inst = GstInstance::new(graph, groups);
    if let Some(r) = root {
        inst = inst.with_root(r);
        if params.bounds {
            let b = planted_bounds(&inst.graph, r, &inst.groups);
            inst = inst.with_bounds(b);
        }
    }
    Ok(InstanceFile::from_gst(&inst))
}

/// Deterministic instance for `(kind, params, seed)`.
pub fn generate(kind: GenKind, params: &GenParams, seed: u64) -> Result<InstanceFile> {
    let mut rng = substream(seed, stream_id("gen", kind as u64));
    match kind {
        GenKind::RandomTree => {
            if params.n == 0 {
                return Err(Error::InvalidParameter("n must be positive".into()));
            }
            let g = random_tree(params.n, params.max_cost, &mut rng)?;
            finish(g, Some(0), params, &mut rng)
        }
        GenKind::BoundedTw => {
            let g = bounded_tw(params.n, params.w, params.delete_prob, params.max_cost, &mut rng)?;
            finish(g, None, params, &mut rng)
        }
        GenKind::GridStrip => {
            if params.rows == 0 || params.cols == 0 {
                return Err(Error::InvalidParameter("rows and cols must be positive".into()));
            }
            let g = grid(params.rows, params.cols)?;
            finish(g, Some(0), params, &mut rng)
        }
        GenKind::Star => {
            if params.leaves == 0 {
                return Err(Error::InvalidParameter("leaves must be positive".into()));
            }
            let edges: Vec<(NodeId, NodeId)> = (1..=params.leaves).map(|i| (0, i)).collect();
            let g = Graph::unit(params.leaves + 1, &edges)?;
            let groups = (1..=params.leaves).map(|i| vec![i]).collect();
            Ok(InstanceFile::from_gst(&GstInstance::new(g, groups).with_root(0)))
        }
        GenKind::HittingSetStar => Ok(InstanceFile::from_gst(&gen_hitting_set_star(&params.sets)?)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn star_file() {
        let f = generate(GenKind::Star, &GenParams { leaves: 4, ..GenParams::default() }, 0).unwrap();
        assert_eq!(f.n, 5);
        assert_eq!(f.edges.len(), 4);
    }

    #[test]
    fn bounded_tw_is_repeatable_and_connected() {
        let p = GenParams { n: 14, w: 2, ..GenParams::default() };
        let a = generate(GenKind::BoundedTw, &p, 7).unwrap().to_json();
        let b = generate(GenKind::BoundedTw, &p, 7).unwrap().to_json();
        assert_eq!(a, b);
        let g = InstanceFile::parse(&a).unwrap().graph().unwrap();
        assert!(g.is_connected());
        assert!(crate::treewidth::build_separator_tree(&g, 2).is_ok());
    }

    #[test]
    fn planted_bounds_make_lp_feasible() {
        let p = GenParams { n: 30, groups: 3, group_size: 3, bounds: true, max_cost: 5, ..GenParams::default() };
        let inst = generate(GenKind::RandomTree, &p, 3).unwrap().to_gst().unwrap();
        let model = crate::lp::build_lp(&inst, true).unwrap();
        assert!(crate::lp::solve_lp(&model).is_ok());
    }
}
