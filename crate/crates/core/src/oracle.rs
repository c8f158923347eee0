//! Exponential-time exact solvers used as ground truth.
//!
//! All searches run on bitmasks and are limited to
//! [`ORACLE_NODE_LIMIT`] nodes. Candidate node sets are the connected
//! subsets of the graph; for each one we look for a spanning tree of the
//! induced subgraph under per-node degree caps. Ties are broken by fewer
//! edges, then by the lexicographically smallest edge list.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::instance::{Cost, EdgeId, Graph, GstInstance, KTreeInstance, NodeId, SubTree};

pub const ORACLE_NODE_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Objective {
    Degree(usize),
    Cost(Cost),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleResult {
    pub best_tree: SubTree,
    pub objective: Objective,
    /// Terminals contained in `best_tree` (k-tree queries only).
    pub optimum_terminals: Option<Vec<NodeId>>,
}

impl OracleResult {
    pub fn degree(&self) -> Option<usize> {
        match self.objective {
            Objective::Degree(d) => Some(d),
            Objective::Cost(_) => None,
        }
    }
}

struct MaskGraph<'a> {
    graph: &'a Graph,
    n: usize,
    adj: Vec<u32>,
    ends: Vec<(usize, usize)>,
}

#[derive(Clone, Copy)]
struct Dsu {
    parent: [u8; ORACLE_NODE_LIMIT],
}

impl Dsu {
    fn new() -> Self {
        let mut parent = [0u8; ORACLE_NODE_LIMIT];
        for (i, p) in parent.iter_mut().enumerate() {
            *p = i as u8;
        }
        Dsu { parent }
    }

    fn find(&self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            x = self.parent[x] as usize;
        }
        x
    }
}

struct TreeSearch<'s> {
    edges: Vec<EdgeId>,
    ends: &'s [(usize, usize)],
    need: usize,
    caps: [usize; ORACLE_NODE_LIMIT],
    last_incident: [usize; ORACLE_NODE_LIMIT],
    nodes: Vec<usize>,
}

impl<'a> MaskGraph<'a> {
    fn new(graph: &'a Graph) -> Result<Self> {
        let n = graph.node_count();
        if n > ORACLE_NODE_LIMIT {
            return Err(Error::InstanceTooLarge { nodes: n, limit: ORACLE_NODE_LIMIT });
        }
        let mut adj = vec![0u32; n];
        let mut ends = Vec::with_capacity(graph.edge_count());
        for e in graph.edges() {
            adj[e.u] |= 1 << e.v;
            adj[e.v] |= 1 << e.u;
            ends.push((e.u, e.v));
        }
        Ok(MaskGraph { graph, n, adj, ends })
    }

    fn is_connected(&self, mask: u32) -> bool {
        if mask == 0 {
            return false;
        }
        let mut reached = mask & mask.wrapping_neg();
        loop {
            let mut next = reached;
            let mut bits = reached;
            while bits != 0 {
                let v = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                next |= self.adj[v] & mask;
            }
            if next == reached {
                return reached == mask;
            }
            reached = next;
        }
    }

    /// Connected node sets accepted by `keep`, by size then mask value.
    fn candidates(&self, keep: impl Fn(u32) -> bool) -> Vec<u32> {
        let mut out: Vec<u32> = (1u32..(1u32 << self.n)).filter(|&m| keep(m) && self.is_connected(m)).collect();
        out.sort_by_key(|&m| (m.count_ones(), m));
        out
    }

    fn search(&self, mask: u32, caps: impl Fn(usize) -> usize) -> TreeSearch<'_> {
        let edges: Vec<EdgeId> = (0..self.ends.len())
            .filter(|&e| {
                let (u, v) = self.ends[e];
                mask >> u & 1 == 1 && mask >> v & 1 == 1
            })
            .collect();
        let nodes: Vec<usize> = (0..self.n).filter(|&v| mask >> v & 1 == 1).collect();
        let mut cap_arr = [0usize; ORACLE_NODE_LIMIT];
        let mut last = [0usize; ORACLE_NODE_LIMIT];
        for &v in &nodes {
            cap_arr[v] = caps(v);
        }
        for (i, &e) in edges.iter().enumerate() {
            let (u, v) = self.ends[e];
            last[u] = i;
            last[v] = i;
        }
        TreeSearch {
            need: nodes.len() - 1,
            edges,
            ends: &self.ends,
            caps: cap_arr,
            last_incident: last,
            nodes,
        }
    }

    fn subtree(&self, mask: u32, edges: &[EdgeId]) -> SubTree {
        let anchor = mask.trailing_zeros() as usize;
        SubTree::from_edge_ids(self.graph, edges, Some(anchor)).expect("search returns trees")
    }
}

impl TreeSearch<'_> {
    /// Lexicographically first spanning tree within the caps.
    fn first(&self) -> Option<Vec<EdgeId>> {
        if self.need == 0 {
            return Some(Vec::new());
        }
        let mut chosen = Vec::with_capacity(self.need);
        let deg = [0usize; ORACLE_NODE_LIMIT];
        if self.first_from(0, &mut chosen, Dsu::new(), deg) {
            Some(chosen.iter().map(|&i| self.edges[i]).collect())
        } else {
            None
        }
    }

    fn hopeless(&self, i: usize, chosen: usize, deg: &[usize; ORACLE_NODE_LIMIT]) -> bool {
        if self.edges.len() - i < self.need - chosen {
            return true;
        }
        self.nodes.iter().any(|&v| deg[v] == 0 && (self.last_incident[v] < i || self.caps[v] == 0))
    }

    fn first_from(&self, i: usize, chosen: &mut Vec<usize>, dsu: Dsu, mut deg: [usize; ORACLE_NODE_LIMIT]) -> bool {
        if chosen.len() == self.need {
            return true;
        }
        if self.hopeless(i, chosen.len(), &deg) {
            return false;
        }
        let (u, v) = self.ends[self.edges[i]];
        let (ru, rv) = (dsu.find(u), dsu.find(v));
        if ru != rv && deg[u] < self.caps[u] && deg[v] < self.caps[v] {
            let mut next = dsu;
            next.parent[ru] = rv as u8;
            deg[u] += 1;
            deg[v] += 1;
            chosen.push(i);
            if self.first_from(i + 1, chosen, next, deg) {
                return true;
            }
            chosen.pop();
            deg[u] -= 1;
            deg[v] -= 1;
        }
        self.first_from(i + 1, chosen, dsu, deg)
    }

    /// Cheapest spanning tree within the caps; ties keep the lexicographically first.
    fn cheapest(&self, graph: &Graph) -> Option<(Cost, Vec<EdgeId>)> {
        if self.need == 0 {
            return Some((Cost::from_integer(0), Vec::new()));
        }
        let costs: Vec<Cost> = self.edges.iter().map(|&e| graph.edge(e).cost).collect();
        let mut suffix_min = vec![None; costs.len() + 1];
        for i in (0..costs.len()).rev() {
            suffix_min[i] = Some(match suffix_min[i + 1] {
                Some(m) if m < costs[i] => m,
                _ => costs[i],
            });
        }
        let mut best: Option<(Cost, Vec<usize>)> = None;
        let mut chosen = Vec::with_capacity(self.need);
        self.cheapest_from(
            0,
            &mut chosen,
            Cost::from_integer(0),
            Dsu::new(),
            [0; ORACLE_NODE_LIMIT],
            &costs,
            &suffix_min,
            &mut best,
        );
        best.map(|(c, idx)| (c, idx.iter().map(|&i| self.edges[i]).collect()))
    }

    #[allow(clippy::too_many_arguments)]
    fn cheapest_from(
        &self,
        i: usize,
        chosen: &mut Vec<usize>,
        cost: Cost,
        dsu: Dsu,
        mut deg: [usize; ORACLE_NODE_LIMIT],
        costs: &[Cost],
        suffix_min: &[Option<Cost>],
        best: &mut Option<(Cost, Vec<usize>)>,
    ) {
        if chosen.len() == self.need {
            if best.as_ref().is_none_or(|(b, _)| cost < *b) {
                *best = Some((cost, chosen.clone()));
            }
            return;
        }
        if self.hopeless(i, chosen.len(), &deg) {
            return;
        }
        if let (Some((b, _)), Some(m)) = (best.as_ref(), suffix_min[i]) {
            let missing = (self.need - chosen.len()) as i64;
            if cost + m * missing >= *b {
                return;
            }
        }
        let (u, v) = self.ends[self.edges[i]];
        let (ru, rv) = (dsu.find(u), dsu.find(v));
        if ru != rv && deg[u] < self.caps[u] && deg[v] < self.caps[v] {
            let mut next = dsu;
            next.parent[ru] = rv as u8;
            deg[u] += 1;
            deg[v] += 1;
            chosen.push(i);
            self.cheapest_from(i + 1, chosen, cost + costs[i], next, deg, costs, suffix_min, best);
            chosen.pop();
            deg[u] -= 1;
            deg[v] -= 1;
        }
        self.cheapest_from(i + 1, chosen, cost, dsu, deg, costs, suffix_min, best);
    }
}

/// Smallest possible max degree of a spanning tree on `size` nodes.
fn degree_floor(size: u32) -> usize {
    match size {
        1 => 0,
        2 => 1,
        _ => 2,
    }
}

/// Minimum max-degree subtree whose node set satisfies `keep`.
fn min_degree_search(mg: &MaskGraph<'_>, keep: impl Fn(u32) -> bool) -> Option<(usize, u32, Vec<EdgeId>)> {
    let mut best: Option<(usize, u32, Vec<EdgeId>)> = None;
    let mut best_size = u32::MAX;
    for mask in mg.candidates(keep) {
        let size = mask.count_ones();
        let ceiling = match &best {
            None => size as usize - 1,
            Some((d, _, _)) if size == best_size => *d,
            Some((0, _, _)) => continue,
            Some((d, _, _)) => d - 1,
        };
        let floor = degree_floor(size);
        if floor > ceiling {
            continue;
        }
        for d in floor..=ceiling {
            if let Some(edges) = mg.search(mask, |_| d).first() {
                let better = match &best {
                    None => true,
                    Some((bd, _, be)) => (d, size, &edges) < (*bd, best_size, be),
                };
                if better {
                    best = Some((d, mask, edges));
                    best_size = size;
                }
                break;
            }
        }
    }
    best
}

fn group_masks(groups: &[Vec<NodeId>]) -> Vec<u32> {
    groups.iter().map(|g| g.iter().fold(0u32, |m, &v| m | 1 << v)).collect()
}

fn gst_filter(instance: &GstInstance) -> impl Fn(u32) -> bool {
    let masks = group_masks(&instance.groups);
    let root = instance.root;
    let q = instance.cover_threshold;
    move |m: u32| {
        if let Some(r) = root {
            if m >> r & 1 == 0 {
                return false;
            }
        }
        masks.iter().filter(|&&g| g & m != 0).count() >= q
    }
}

/// Exact minimum max-degree tree covering at least `q` groups (and the root,
/// when one is given).
pub fn brute_md_gst(instance: &GstInstance) -> Result<OracleResult> {
    instance.validate()?;
    let mg = MaskGraph::new(&instance.graph)?;
    let (d, mask, edges) = min_degree_search(&mg, gst_filter(instance))
        .ok_or_else(|| Error::Infeasible("no subtree covers the required groups".into()))?;
    Ok(OracleResult { best_tree: mg.subtree(mask, &edges), objective: Objective::Degree(d), optimum_terminals: None })
}

/// Exact minimum max-degree tree containing at least `k` terminals.
pub fn brute_md_ktree(instance: &KTreeInstance) -> Result<OracleResult> {
    instance.validate()?;
    let mg = MaskGraph::new(&instance.graph)?;
    let rmask = instance.terminals.iter().fold(0u32, |m, &v| m | 1 << v);
    let k = instance.k as u32;
    let (d, mask, edges) = min_degree_search(&mg, |m| (m & rmask).count_ones() >= k)
        .ok_or_else(|| Error::Infeasible("no connected set holds k terminals".into()))?;
    let terminals: Vec<NodeId> = (0..mg.n).filter(|&v| (mask & rmask) >> v & 1 == 1).collect();
    Ok(OracleResult {
        best_tree: mg.subtree(mask, &edges),
        objective: Objective::Degree(d),
        optimum_terminals: Some(terminals),
    })
}

/// Exact minimum-cost tree covering the groups and obeying the degree bounds
/// (if any). Fewer edges, then lexicographic order, break cost ties.
pub fn brute_min_cost_bd_gst(instance: &GstInstance) -> Result<OracleResult> {
    instance.validate()?;
    let mg = MaskGraph::new(&instance.graph)?;
    let bounds = instance.bounds.clone();
    let mut best: Option<(Cost, u32, u32, Vec<EdgeId>)> = None;
    for mask in mg.candidates(gst_filter(instance)) {
        let search = mg.search(mask, |v| bounds.as_ref().map_or(usize::MAX, |b| b[v] as usize));
        if let Some((cost, edges)) = search.cheapest(&instance.graph) {
            let size = mask.count_ones();
            let better = match &best {
                None => true,
                Some((bc, bs, _, be)) => (cost, size, &edges) < (*bc, *bs, be),
            };
            if better {
                best = Some((cost, size, mask, edges));
            }
        }
    }
    let (cost, _, mask, edges) =
        best.ok_or_else(|| Error::Infeasible("no degree-respecting subtree covers the groups".into()))?;
    Ok(OracleResult { best_tree: mg.subtree(mask, &edges), objective: Objective::Cost(cost), optimum_terminals: None })
}

/// Star over the elements with one group per set: a root joined to every
/// element. Root is node 0, the i-th smallest element is node i + 1.
pub fn gen_hitting_set_star(sets: &[Vec<usize>]) -> Result<GstInstance> {
    if sets.is_empty() {
        return Err(Error::InvalidParameter("need at least one set".into()));
    }
    if sets.iter().any(Vec::is_empty) {
        return Err(Error::InvalidParameter("empty set in hitting-set family".into()));
    }
    let universe: Vec<usize> = sets.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let node_of = |x: usize| universe.binary_search(&x).unwrap() + 1;
    let edges: Vec<(NodeId, NodeId)> = (1..=universe.len()).map(|i| (0, i)).collect();
    let graph = Graph::unit(universe.len() + 1, &edges)?;
    let groups = sets.iter().map(|s| s.iter().map(|&x| node_of(x)).collect()).collect();
    Ok(GstInstance::new(graph, groups).with_root(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn min_hitting_set(sets: &[Vec<usize>]) -> usize {
        let universe: Vec<usize> = sets.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
        (0u32..1 << universe.len())
            .filter(|m| sets.iter().all(|s| s.iter().any(|x| m >> universe.binary_search(x).unwrap() & 1 == 1)))
            .map(|m| m.count_ones() as usize)
            .min()
            .unwrap()
    }

    #[test]
    fn full_star_is_forced() {
        let g = Graph::unit(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let inst = GstInstance::new(g, vec![vec![1], vec![2], vec![3]]);
        let res = brute_md_gst(&inst).unwrap();
        assert_eq!(res.objective, Objective::Degree(3));
        assert_eq!(res.best_tree.edges().len(), 3);
    }

    #[test]
    fn hitting_set_star_fixture() {
        let inst = gen_hitting_set_star(&[vec![1, 2], vec![2, 3]]).unwrap();
        assert_eq!(inst.graph.node_count(), 4);
        assert_eq!(inst.groups.len(), 2);
        let res = brute_md_gst(&inst).unwrap();
        assert_eq!(res.objective, Objective::Degree(1));
        assert_eq!(res.best_tree.edges(), &[(0, 2)]);
    }

    #[test]
    fn hitting_set_small_families() {
        let inst = gen_hitting_set_star(&[vec![1]]).unwrap();
        assert_eq!(brute_md_gst(&inst).unwrap().degree(), Some(1));
        let inst = gen_hitting_set_star(&[vec![1], vec![2], vec![3]]).unwrap();
        assert_eq!(brute_md_gst(&inst).unwrap().degree(), Some(3));
        assert!(gen_hitting_set_star(&[vec![1], vec![]]).is_err());
    }

    #[test]
    fn rooted_path_is_forced() {
        let g = Graph::unit(3, &[(0, 1), (1, 2)]).unwrap();
        let inst = GstInstance::new(g, vec![vec![2]]).with_root(0);
        assert_eq!(brute_md_gst(&inst).unwrap().degree(), Some(2));
    }

    #[test]
    fn ktree_examples() {
        let path = Graph::unit(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        let res = brute_md_ktree(&KTreeInstance::new(path.clone(), vec![0, 1, 2, 3, 4], 3)).unwrap();
        assert_eq!(res.degree(), Some(2));
        assert_eq!(res.optimum_terminals.as_ref().unwrap().len(), 3);

        let star = Graph::unit(6, &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5)]).unwrap();
        let res = brute_md_ktree(&KTreeInstance::new(star, vec![1, 2, 3, 4, 5], 2)).unwrap();
        assert_eq!(res.degree(), Some(2));
        assert_eq!(res.best_tree.edges(), &[(0, 1), (0, 2)]);

        let res = brute_md_ktree(&KTreeInstance::new(path, vec![3], 1)).unwrap();
        assert_eq!(res.degree(), Some(0));
        assert_eq!(res.best_tree, SubTree::single(3));
    }

    #[test]
    fn too_large_is_refused() {
        let edges: Vec<_> = (0..19).map(|i| (i, i + 1)).collect();
        let g = Graph::unit(20, &edges).unwrap();
        let err = brute_md_gst(&GstInstance::new(g, vec![vec![3]])).unwrap_err();
        assert!(matches!(err, Error::InstanceTooLarge { .. }));
    }

    #[test]
    fn steiner_node_lowers_degree() {
        // Cycle 0-1-2-3-0 plus chords from 4 to everything: the best tree for
        // groups {0},{1},{2},{3} is the Hamiltonian path (degree 2).
        let g = Graph::unit(5, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 4), (1, 4), (2, 4), (3, 4)]).unwrap();
        let inst = GstInstance::new(g, vec![vec![0], vec![1], vec![2], vec![3]]);
        let res = brute_md_gst(&inst).unwrap();
        assert_eq!(res.degree(), Some(2));
        assert_eq!(res.best_tree.edges().len(), 3);
    }

    #[test]
    fn min_cost_respects_bounds() {
        // Star 0-{1,2,3} plus path 1-4-2; bound 1 at the centre forces the detour.
        let g = Graph::new(
            5,
            [
                (0, 1, Cost::from_integer(1)),
                (0, 2, Cost::from_integer(1)),
                (1, 4, Cost::from_integer(2)),
                (2, 4, Cost::from_integer(2)),
            ],
        )
        .unwrap();
        let free = GstInstance::new(g.clone(), vec![vec![1], vec![2]]).with_root(0);
        assert_eq!(brute_min_cost_bd_gst(&free).unwrap().objective, Objective::Cost(Cost::from_integer(2)));
        let bounded = free.with_bounds(vec![1, 3, 3, 3, 3]);
        assert_eq!(brute_min_cost_bd_gst(&bounded).unwrap().objective, Objective::Cost(Cost::from_integer(5)));
    }

    #[test]
    fn hitting_set_matches_enumeration() {
        // Every family of up to three sets over {1,2,3}.
        let subsets: Vec<Vec<usize>> =
            (1u32..8).map(|m| (0..3).filter(|b| m >> b & 1 == 1).map(|b| b + 1).collect()).collect();
        for a in 0..subsets.len() {
            for b in a..subsets.len() {
                for c in b..subsets.len() {
                    let fam = vec![subsets[a].clone(), subsets[b].clone(), subsets[c].clone()];
                    let inst = gen_hitting_set_star(&fam).unwrap();
                    assert_eq!(brute_md_gst(&inst).unwrap().degree(), Some(min_hitting_set(&fam)), "{fam:?}");
                }
            }
        }
    }
}
