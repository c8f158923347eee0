//! Reduction from bounded treewidth graphs to low-height trees.
//!
//! A graph of treewidth `w` has a 4/5-balanced separator of at most `w+1`
//! nodes. Splitting recursively gives a separator tree of logarithmic
//! height; each separator is wired up inside its own region and contracted
//! to one supernode. Every remaining edge then joins a supernode to one of
//! its ancestors, so the separator hierarchy `T′` is a spanning tree of the
//! contracted graph and any tree solution can be rerouted onto it.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{Cost, EdgeId, Graph, GstInstance, NodeId, SubTree};
use crate::rounding::solve_md_gst_tree;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SepNode {
    /// The separator, or the whole component for a leaf.
    pub set: Vec<NodeId>,
    /// Component the set was extracted from.
    pub region: Vec<NodeId>,
    pub is_leaf: bool,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    pub level: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SeparatorTree {
    pub w: usize,
    /// Components this small become leaves (`w + 1`).
    pub leaf_threshold: usize,
    pub nodes: Vec<SepNode>,
    /// Separator tree node holding each vertex.
    pub owner: Vec<usize>,
}

/// `⌈log_{5/4} n⌉ + 1`.
pub fn height_bound(n: usize) -> usize {
    if n <= 1 {
        return 1;
    }
    let mut levels = 0;
    let mut size = 1.0f64;
    while size < n as f64 {
        size *= 1.25;
        levels += 1;
    }
    levels + 1
}

/// Largest component size a separator of a region of `h` nodes may leave.
pub fn balance_limit(h: usize) -> usize {
    (4 * h).div_ceil(5)
}

impl SeparatorTree {
    /// Number of levels.
    pub fn depth(&self) -> usize {
        self.nodes.iter().map(|n| n.level).max().map_or(0, |l| l + 1)
    }

    /// True if `a` is `d` or one of its ancestors.
    pub fn is_ancestor(&self, a: usize, mut d: usize) -> bool {
        loop {
            if a == d {
                return true;
            }
            match self.nodes[d].parent {
                Some(p) => d = p,
                None => return false,
            }
        }
    }

    /// Separator hierarchy as a graph on tree-node ids.
    pub fn hierarchy(&self) -> Graph {
        let edges: Vec<(NodeId, NodeId)> =
            self.nodes.iter().enumerate().filter_map(|(i, n)| n.parent.map(|p| (p, i))).collect();
        Graph::unit(self.nodes.len(), &edges).expect("hierarchy edges are distinct")
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph separators {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let shape = if n.is_leaf { "box" } else { "ellipse" };
            let _ = writeln!(s, "  s{i} [label=\"{:?} L{}\", shape={shape}];", n.set, n.level);
        }
        for (i, n) in self.nodes.iter().enumerate() {
            if let Some(p) = n.parent {
                let _ = writeln!(s, "  s{p} -> s{i};");
            }
        }
        s.push_str("}\n");
        s
    }
}

fn mask(n: usize, nodes: &[NodeId]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &v in nodes {
        m[v] = true;
    }
    m
}

/// Smallest set of at most `w + 1` nodes of `region` (lexicographically
/// first among those) whose removal leaves components of at most
/// `⌈4|region|/5⌉` nodes.
fn separator_in(graph: &Graph, region: &[NodeId], w: usize) -> Result<Vec<NodeId>> {
    let h = region.len();
    let limit = balance_limit(h);
    let base = mask(graph.node_count(), region);
    for size in 1..=(w + 1).min(h) {
        let mut idx: Vec<usize> = (0..size).collect();
        loop {
            let mut allowed = base.clone();
            for &i in &idx {
                allowed[region[i]] = false;
            }
            if graph.components_within(&allowed).iter().all(|c| c.len() <= limit) {
                return Ok(idx.iter().map(|&i| region[i]).collect());
            }
            // Next combination in lexicographic order.
            let Some(pos) = (0..size).rev().find(|&p| idx[p] < h - size + p) else { break };
            idx[pos] += 1;
            for q in pos + 1..size {
                idx[q] = idx[q - 1] + 1;
            }
        }
    }
    Err(Error::NoSeparator { w })
}

/// Balanced separator of a connected graph with at most `w + 1` nodes.
pub fn balanced_separator(graph: &Graph, w: usize) -> Result<Vec<NodeId>> {
    if !graph.is_connected() {
        return Err(Error::Graph("graph is not connected".into()));
    }
    let all: Vec<NodeId> = (0..graph.node_count()).collect();
    separator_in(graph, &all, w)
}

/// Recursive separator decomposition. Nodes are numbered breadth first, so
/// a parent always has a smaller id than its children.
pub fn build_separator_tree(graph: &Graph, w: usize) -> Result<SeparatorTree> {
    let n = graph.node_count();
    if n == 0 || !graph.is_connected() {
        return Err(Error::Graph("graph is not connected".into()));
    }
    let leaf_threshold = w + 1;
    let mut nodes: Vec<SepNode> = Vec::new();
    let mut owner = vec![usize::MAX; n];
    let mut queue = VecDeque::from([((0..n).collect::<Vec<_>>(), None, 0usize)]);
    while let Some((region, parent, level)) = queue.pop_front() {
        let id = nodes.len();
        let (set, is_leaf) = if region.len() <= leaf_threshold {
            (region.clone(), true)
        } else {
            let sep = separator_in(graph, &region, w)?;
            let mut rest = mask(n, &region);
            for &v in &sep {
                rest[v] = false;
            }
            for comp in graph.components_within(&rest) {
                queue.push_back((comp, Some(id), level + 1));
            }
            (sep, false)
        };
        for &v in &set {
            owner[v] = id;
        }
        if let Some(p) = parent {
            nodes[p].children.push(id);
        }
        nodes.push(SepNode { set, region, is_leaf, parent, children: Vec::new(), level });
    }
    Ok(SeparatorTree { w, leaf_threshold, nodes, owner })
}

/// Edges `E′` that make every separator and leaf connected.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Connection {
    /// Edges added for each separator tree node.
    pub per_node: Vec<Vec<EdgeId>>,
    pub edges: BTreeSet<EdgeId>,
}

impl Connection {
    /// `|E′ ∩ δ(v)|` for every vertex.
    pub fn degrees(&self, graph: &Graph) -> Vec<usize> {
        let mut d = vec![0; graph.node_count()];
        for &e in &self.edges {
            let edge = graph.edge(e);
            d[edge.u] += 1;
            d[edge.v] += 1;
        }
        d
    }
}

/// Leaves get a BFS spanning tree of their induced subgraph; a separator
/// gets hop-shortest paths inside its region from its smallest member to
/// each other member.
pub fn connect_separators(graph: &Graph, tree: &SeparatorTree) -> Result<Connection> {
    let n = graph.node_count();
    let mut per_node = Vec::with_capacity(tree.nodes.len());
    for node in &tree.nodes {
        let added = if node.is_leaf {
            let inside = mask(n, &node.set);
            let induced: BTreeSet<EdgeId> =
                graph.edges().iter().enumerate().filter(|(_, e)| inside[e.u] && inside[e.v]).map(|(i, _)| i).collect();
            graph.bfs_tree_of(node.set[0], &induced)
        } else {
            let allowed = mask(n, &node.region);
            let u = node.set[0];
            let mut edges = BTreeSet::new();
            for &s in &node.set[1..] {
                let path = graph
                    .shortest_path_within(&[u], s, &allowed)
                    .ok_or_else(|| Error::UnreachableInRegion(format!("{s} from {u}")))?;
                edges.extend(path);
            }
            edges.into_iter().collect()
        };
        per_node.push(added);
    }
    let edges = per_node.iter().flatten().copied().collect();
    Ok(Connection { per_node, edges })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ContractedInstance {
    /// Contracted graph on separator tree node ids, hierarchy edges included.
    pub g_prime: Graph,
    /// The separator hierarchy; a spanning tree of `g_prime`.
    pub t_prime: Graph,
    /// Edges of `g_prime` that are not hierarchy edges, as (descendant, ancestor).
    pub backward_edges: Vec<(usize, usize)>,
    /// For each non-root tree node, the original edges joining it to its
    /// parent's set inside its own region.
    pub link: Vec<Vec<EdgeId>>,
    /// Supernode groups.
    pub groups: Vec<Vec<usize>>,
    pub root: usize,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let edges: Vec<(NodeId, NodeId)> = self.edges().iter().map(|e| (e.u, e.v)).collect();
        let mut st = s.serialize_struct("Graph", 2)?;
        st.serialize_field("n", &self.node_count())?;
        st.serialize_field("edges", &edges)?;
        st.end()
    }
}

impl ContractedInstance {
    pub fn height(&self, tree: &SeparatorTree) -> usize {
        tree.depth()
    }

    pub fn t_prime_dot(&self) -> String {
        let mut s = String::from("graph tprime {\n");
        for e in self.t_prime.edges() {
            let _ = writeln!(s, "  s{} -- s{};", e.u, e.v);
        }
        for &(d, a) in &self.backward_edges {
            let _ = writeln!(s, "  s{d} -- s{a} [style=dashed];");
        }
        s.push_str("}\n");
        s
    }
}

/// Supernode groups: a supernode joins every group one of its vertices is in.
pub fn supernode_groups(tree: &SeparatorTree, groups: &[Vec<NodeId>]) -> Vec<Vec<usize>> {
    groups
        .iter()
        .map(|g| g.iter().map(|&v| tree.owner[v]).collect::<BTreeSet<_>>().into_iter().collect())
        .collect()
}

/// Contracts every separator and leaf to a supernode and checks that every
/// cross edge runs between a node and one of its ancestors.
pub fn contract(
    graph: &Graph,
    tree: &SeparatorTree,
    _conn: &Connection,
    groups: &[Vec<NodeId>],
) -> Result<ContractedInstance> {
    let n = graph.node_count();
    let t_prime = tree.hierarchy();
    let mut cross: BTreeSet<(usize, usize)> = BTreeSet::new();
    for e in graph.edges() {
        let (a, b) = (tree.owner[e.u], tree.owner[e.v]);
        if a == b {
            continue;
        }
        if !tree.is_ancestor(a, b) && !tree.is_ancestor(b, a) {
            return Err(Error::NonBackwardEdge(a.min(b), a.max(b)));
        }
        cross.insert((a.min(b), a.max(b)));
    }
    let backward_edges: Vec<(usize, usize)> = cross
        .iter()
        .filter(|&&(a, b)| t_prime.edge_id(a, b).is_none())
        .map(|&(a, b)| if tree.is_ancestor(a, b) { (b, a) } else { (a, b) })
        .collect();
    let all: BTreeSet<(usize, usize)> =
        cross.iter().copied().chain(t_prime.edges().iter().map(|e| (e.u, e.v))).collect();
    let pairs: Vec<(usize, usize)> = all.into_iter().collect();
    let g_prime = Graph::unit(tree.nodes.len(), &pairs)?;

    let mut link = vec![Vec::new(); tree.nodes.len()];
    for (c, node) in tree.nodes.iter().enumerate() {
        let Some(p) = node.parent else { continue };
        let parent_set = &tree.nodes[p].set;
        let mut allowed = mask(n, &node.region);
        for &v in parent_set {
            allowed[v] = true;
        }
        let mut best: Option<Vec<EdgeId>> = None;
        for &t in parent_set {
            if let Some(path) = graph.shortest_path_within(&node.set, t, &allowed) {
                if best.as_ref().is_none_or(|b| path.len() < b.len()) {
                    best = Some(path);
                }
            }
        }
        link[c] = best.ok_or_else(|| Error::UnreachableInRegion(format!("node {c} cannot reach its parent")))?;
    }
    Ok(ContractedInstance {
        g_prime,
        t_prime,
        backward_edges,
        link,
        groups: supernode_groups(tree, groups),
        root: 0,
    })
}

/// Replaces every backward edge of a connected solution in `G′` by the
/// `T′` path between its endpoints. The result is a subtree of `T′`.
pub fn rewire_back_edges(solution: &[(usize, usize)], tree: &SeparatorTree, anchor: usize) -> Result<SubTree> {
    let t_prime = tree.hierarchy();
    let mut keep: BTreeSet<(usize, usize)> = BTreeSet::new();
    for &(x, y) in solution {
        let (desc, anc) = if tree.is_ancestor(x, y) { (y, x) } else { (x, y) };
        if !tree.is_ancestor(anc, desc) {
            return Err(Error::NonBackwardEdge(x.min(y), x.max(y)));
        }
        let mut v = desc;
        while v != anc {
            let p = tree.nodes[v].parent.expect("ancestor lies above");
            keep.insert((p, v));
            v = p;
        }
    }
    let pairs: Vec<(usize, usize)> = keep.into_iter().collect();
    SubTree::from_pairs(&t_prime, &pairs, Some(anchor))
}

/// Removes leaves other than `keep` while every group the tree touches
/// stays touched. `anchor` names the tree when `edges` is empty.
pub fn prune_leaves(
    graph: &Graph,
    edges: &[EdgeId],
    anchor: NodeId,
    keep: Option<NodeId>,
    groups: &[Vec<NodeId>],
) -> Result<SubTree> {
    let n = graph.node_count();
    let mut incident: Vec<BTreeSet<EdgeId>> = vec![BTreeSet::new(); n];
    let mut in_tree = vec![false; n];
    in_tree[anchor] = true;
    for &e in edges {
        let edge = graph.edge(e);
        incident[edge.u].insert(e);
        incident[edge.v].insert(e);
        in_tree[edge.u] = true;
        in_tree[edge.v] = true;
    }
    let mut member_of = vec![Vec::new(); n];
    for (g, members) in groups.iter().enumerate() {
        for &v in members {
            member_of[v].push(g);
        }
    }
    let mut hits = vec![0usize; groups.len()];
    for v in (0..n).filter(|&v| in_tree[v]) {
        for &g in &member_of[v] {
            hits[g] += 1;
        }
    }
    let mut survivor = anchor;
    let mut alive: BTreeSet<EdgeId> = edges.iter().copied().collect();
    let mut queue: VecDeque<NodeId> = (0..n).filter(|&v| incident[v].len() == 1).collect();
    while let Some(v) = queue.pop_front() {
        if Some(v) == keep || incident[v].len() != 1 || member_of[v].iter().any(|&g| hits[g] < 2) {
            continue;
        }
        let e = *incident[v].iter().next().unwrap();
        let u = graph.edge(e).other(v);
        alive.remove(&e);
        incident[v].clear();
        incident[u].remove(&e);
        for &g in &member_of[v] {
            hits[g] -= 1;
        }
        survivor = u;
        if incident[u].len() == 1 {
            queue.push_back(u);
        }
    }
    let ids: Vec<EdgeId> = alive.into_iter().collect();
    SubTree::from_edge_ids(graph, &ids, ids.is_empty().then_some(survivor))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BtwOutcome {
    pub w: usize,
    pub tree: SubTree,
    pub degree: usize,
    /// Solution on `T′` before expansion.
    pub t_prime_tree: SubTree,
    pub t_prime_degree: usize,
    pub depth: usize,
}

/// Everything the pipeline builds for one width.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub separators: SeparatorTree,
    pub connection: Connection,
    pub contracted: ContractedInstance,
}

pub fn decompose(graph: &Graph, groups: &[Vec<NodeId>], w: usize) -> Result<Decomposition> {
    let separators = build_separator_tree(graph, w)?;
    let connection = connect_separators(graph, &separators)?;
    let contracted = contract(graph, &separators, &connection, groups)?;
    Ok(Decomposition { separators, connection, contracted })
}

/// Tries `w = 1, 2, …` until the separator tree can be built.
pub fn decompose_auto(graph: &Graph, groups: &[Vec<NodeId>]) -> Result<(usize, Decomposition)> {
    let n = graph.node_count();
    for w in 1..=n.max(1) {
        match decompose(graph, groups, w) {
            Ok(d) => return Ok((w, d)),
            Err(Error::NoSeparator { .. }) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(Error::NoSeparator { w: n })
}

/// Original edges realizing a subtree of `T′`.
pub fn expand(d: &Decomposition, t_tree: &SubTree) -> BTreeSet<EdgeId> {
    let mut edges = BTreeSet::new();
    for &x in t_tree.nodes() {
        edges.extend(d.connection.per_node[x].iter().copied());
    }
    for &(p, c) in t_tree.edges() {
        let child = if d.separators.nodes[c].parent == Some(p) { c } else { p };
        edges.extend(d.contracted.link[child].iter().copied());
    }
    edges
}

/// Min-degree group Steiner tree on a graph of treewidth at most `w`
/// (searched when `None`): solve on `T′`, expand, take a spanning tree,
/// prune.
pub fn solve_md_gst_btw(instance: &GstInstance, w: Option<usize>, seed: u64) -> Result<BtwOutcome> {
    instance.validate()?;
    let graph = &instance.graph;
    let (w, d) = match w {
        Some(w) => (w, decompose(graph, &instance.groups, w)?),
        None => decompose_auto(graph, &instance.groups)?,
    };
    let t_prime = d.contracted.t_prime.with_uniform_cost(Cost::from_integer(0));
    let mut t_inst = GstInstance::new(t_prime, d.contracted.groups.clone()).with_cover_threshold(instance.cover_threshold);
    if let Some(r) = instance.root {
        t_inst = t_inst.with_root(d.separators.owner[r]);
    }
    let t_out = solve_md_gst_tree(&t_inst, seed)?;
    let t_tree = t_out.tree;
    let union = expand(&d, &t_tree);
    let anchor = instance.root.unwrap_or_else(|| d.separators.nodes[t_tree.nodes()[0]].set[0]);
    let spanning = graph.bfs_tree_of(anchor, &union);
    let tree = prune_leaves(graph, &spanning, anchor, instance.root, &instance.groups)?;
    if !instance.is_feasible_tree(&tree) {
        return Err(Error::SolverFailed("expanded tree misses groups".into()));
    }
    Ok(BtwOutcome {
        w,
        degree: tree.max_degree(),
        tree,
        t_prime_degree: t_tree.max_degree(),
        t_prime_tree: t_tree,
        depth: d.separators.depth(),
    })
}
