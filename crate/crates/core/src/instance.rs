//! Graphs, subtrees and the two problem instances.
//!
//! Node ids are dense integers `0..n`. Edges are stored with `u < v` and
//! sorted, groups are sorted and duplicate free, so two instances built from
//! the same data compare equal and serialize to the same bytes.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result, ValidationErrors};

pub type NodeId = usize;
pub type EdgeId = usize;
/// Exact edge cost.
pub type Cost = Ratio<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Edge {
    pub u: NodeId,
    pub v: NodeId,
    pub cost: Cost,
}

impl Edge {
    pub fn endpoints(&self) -> (NodeId, NodeId) {
        (self.u, self.v)
    }

    pub fn other(&self, w: NodeId) -> NodeId {
        if w == self.u {
            self.v
        } else {
            self.u
        }
    }
}

/// Undirected simple graph with nonnegative rational edge costs.
#[derive(Clone, Debug)]
pub struct Graph {
    node_count: usize,
    edges: Vec<Edge>,
    adjacency: Vec<Vec<(NodeId, EdgeId)>>,
    index: HashMap<(NodeId, NodeId), EdgeId>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.node_count == other.node_count && self.edges == other.edges
    }
}

impl Eq for Graph {}

fn key(u: NodeId, v: NodeId) -> (NodeId, NodeId) {
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

impl Graph {
    pub fn new(node_count: usize, edges: impl IntoIterator<Item = (NodeId, NodeId, Cost)>) -> Result<Self> {
        if node_count == 0 {
            return Err(Error::Graph("graph needs at least one node".into()));
        }
        let mut list = Vec::new();
        let mut seen = BTreeSet::new();
        for (u, v, cost) in edges {
            if u >= node_count || v >= node_count {
                return Err(Error::Graph(format!("edge ({u}, {v}): node out of range")));
            }
            if u == v {
                return Err(Error::Graph(format!("self-loop at node {u}")));
            }
            if cost < Cost::zero() {
                return Err(Error::Graph(format!("edge ({u}, {v}) has negative cost")));
            }
            let (a, b) = key(u, v);
            if !seen.insert((a, b)) {
                return Err(Error::Graph(format!("parallel edge ({a}, {b})")));
            }
            list.push(Edge { u: a, v: b, cost });
        }
        list.sort_by_key(|e| (e.u, e.v));
        let mut adjacency = vec![Vec::new(); node_count];
        let mut index = HashMap::with_capacity(list.len());
        for (id, e) in list.iter().enumerate() {
            adjacency[e.u].push((e.v, id));
            adjacency[e.v].push((e.u, id));
            index.insert((e.u, e.v), id);
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        Ok(Graph { node_count, edges: list, adjacency, index })
    }

    /// Graph with every edge of cost 1.
    pub fn unit(node_count: usize, edges: &[(NodeId, NodeId)]) -> Result<Self> {
        Graph::new(node_count, edges.iter().map(|&(u, v)| (u, v, Cost::from_integer(1))))
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    pub fn edge_id(&self, u: NodeId, v: NodeId) -> Option<EdgeId> {
        self.index.get(&key(u, v)).copied()
    }

    /// Sorted `(neighbor, edge id)` pairs.
    pub fn neighbors(&self, v: NodeId) -> &[(NodeId, EdgeId)] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.adjacency[v].len()
    }

    /// Same topology with every cost replaced.
    pub fn with_uniform_cost(&self, cost: Cost) -> Graph {
        let mut g = self.clone();
        for e in &mut g.edges {
            e.cost = cost;
        }
        g
    }

    /// Connected components of the subgraph induced by `allowed`, each sorted,
    /// listed by smallest member.
    pub fn components_within(&self, allowed: &[bool]) -> Vec<Vec<NodeId>> {
        let mut seen = vec![false; self.node_count];
        let mut out = Vec::new();
        for s in 0..self.node_count {
            if !allowed[s] || seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(w, _) in &self.adjacency[u] {
                    if allowed[w] && !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components_within(&vec![true; self.node_count]).len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.node_count && self.is_connected()
    }

    /// Hop-shortest path from any node of `sources` to `target`, staying
    /// inside `allowed`. Ties go to smaller node ids. Returns the edge ids in
    /// path order from the source side.
    pub fn shortest_path_within(
        &self,
        sources: &[NodeId],
        target: NodeId,
        allowed: &[bool],
    ) -> Option<Vec<EdgeId>> {
        let mut pred: Vec<Option<(NodeId, EdgeId)>> = vec![None; self.node_count];
        let mut seen = vec![false; self.node_count];
        let mut queue = VecDeque::new();
        let mut starts: Vec<NodeId> = sources.iter().copied().filter(|&s| allowed[s]).collect();
        starts.sort_unstable();
        for s in starts {
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            if u == target {
                let mut path = Vec::new();
                let mut cur = u;
                while let Some((p, e)) = pred[cur] {
                    path.push(e);
                    cur = p;
                }
                path.reverse();
                return Some(path);
            }
            for &(w, e) in &self.adjacency[u] {
                if allowed[w] && !seen[w] {
                    seen[w] = true;
                    pred[w] = Some((u, e));
                    queue.push_back(w);
                }
            }
        }
        None
    }

    /// BFS spanning tree of the connected component of `root` in the
    /// subgraph formed by `edge_ids`.
    pub fn bfs_tree_of(&self, root: NodeId, edge_ids: &BTreeSet<EdgeId>) -> Vec<EdgeId> {
        let mut seen = vec![false; self.node_count];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        let mut out = Vec::new();
        while let Some(u) = queue.pop_front() {
            for &(w, e) in &self.adjacency[u] {
                if edge_ids.contains(&e) && !seen[w] {
                    seen[w] = true;
                    out.push(e);
                    queue.push_back(w);
                }
            }
        }
        out.sort_unstable();
        out
    }
}

/// A tree graph hung from a root: parent pointers and a root-to-leaf order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootedTree {
    pub root: NodeId,
    /// Parent of each node; `None` for the root.
    pub parent: Vec<Option<NodeId>>,
    /// Edge to the parent (`e_v`); `None` for the root.
    pub parent_edge: Vec<Option<EdgeId>>,
    /// Lower endpoint of every edge.
    pub lower: Vec<NodeId>,
    /// Nodes in BFS order starting at the root.
    pub order: Vec<NodeId>,
    pub children: Vec<Vec<NodeId>>,
    pub depth: Vec<usize>,
}

impl RootedTree {
    pub fn new(graph: &Graph, root: NodeId) -> Result<Self> {
        if !graph.is_tree() {
            return Err(Error::NotATree);
        }
        if root >= graph.node_count() {
            return Err(Error::RootMissing);
        }
        let n = graph.node_count();
        let mut parent = vec![None; n];
        let mut parent_edge = vec![None; n];
        let mut lower = vec![0; graph.edge_count()];
        let mut children = vec![Vec::new(); n];
        let mut depth = vec![0; n];
        let mut order = Vec::with_capacity(n);
        let mut seen = vec![false; n];
        seen[root] = true;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for &(w, e) in graph.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    parent[w] = Some(u);
                    parent_edge[w] = Some(e);
                    lower[e] = w;
                    depth[w] = depth[u] + 1;
                    children[u].push(w);
                    queue.push_back(w);
                }
            }
        }
        Ok(RootedTree { root, parent, parent_edge, lower, order, children, depth })
    }

    /// Parent edge of an edge, `None` when the edge hangs from the root.
    pub fn parent_of_edge(&self, e: EdgeId) -> Option<EdgeId> {
        let upper = self.parent[self.lower[e]].expect("edge has an upper node");
        self.parent_edge[upper]
    }

    /// Edges on the path from `v` up to the root, deepest first.
    pub fn path_to_root(&self, mut v: NodeId) -> Vec<EdgeId> {
        let mut out = Vec::new();
        while let Some(e) = self.parent_edge[v] {
            out.push(e);
            v = self.parent[v].unwrap();
        }
        out
    }

    /// Edges in root-to-leaf order.
    pub fn edge_order(&self) -> Vec<EdgeId> {
        self.order.iter().filter_map(|&v| self.parent_edge[v]).collect()
    }
}

/// A connected acyclic edge set of some graph, together with its node set.
/// A single node with no edges is a valid subtree; so is the empty tree.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubTree {
    nodes: Vec<NodeId>,
    edges: Vec<(NodeId, NodeId)>,
}

impl SubTree {
    pub fn empty() -> Self {
        SubTree { nodes: Vec::new(), edges: Vec::new() }
    }

    pub fn single(v: NodeId) -> Self {
        SubTree { nodes: vec![v], edges: Vec::new() }
    }

    /// Builds a subtree from graph edge ids. `anchor` names the node of a
    /// tree without edges.
    pub fn from_edge_ids(graph: &Graph, ids: &[EdgeId], anchor: Option<NodeId>) -> Result<Self> {
        let pairs: Vec<(NodeId, NodeId)> = ids.iter().map(|&e| graph.edge(e).endpoints()).collect();
        SubTree::from_pairs(graph, &pairs, anchor)
    }

    pub fn from_pairs(graph: &Graph, pairs: &[(NodeId, NodeId)], anchor: Option<NodeId>) -> Result<Self> {
        let mut edges: Vec<(NodeId, NodeId)> = pairs.iter().map(|&(u, v)| key(u, v)).collect();
        edges.sort_unstable();
        edges.dedup();
        for &(u, v) in &edges {
            if graph.edge_id(u, v).is_none() {
                return Err(Error::SubTree(format!("({u}, {v}) is not an edge of the graph")));
            }
        }
        if edges.is_empty() {
            return Ok(match anchor {
                Some(v) if v < graph.node_count() => SubTree::single(v),
                Some(v) => return Err(Error::SubTree(format!("anchor {v} out of range"))),
                None => SubTree::empty(),
            });
        }
        let nodes: BTreeSet<NodeId> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
        let nodes: Vec<NodeId> = nodes.into_iter().collect();
        if let Some(a) = anchor {
            if nodes.binary_search(&a).is_err() {
                return Err(Error::SubTree(format!("anchor {a} not on the tree")));
            }
        }
        if edges.len() + 1 != nodes.len() {
            return Err(Error::SubTree("edge set contains a cycle or is disconnected".into()));
        }
        let tree = SubTree { nodes, edges };
        if !tree.is_connected() {
            return Err(Error::SubTree("edge set is disconnected".into()));
        }
        Ok(tree)
    }

    fn is_connected(&self) -> bool {
        let Some(&start) = self.nodes.first() else {
            return true;
        };
        let mut adj: HashMap<NodeId, Vec<NodeId>> = HashMap::new();
        for &(u, v) in &self.edges {
            adj.entry(u).or_default().push(v);
            adj.entry(v).or_default().push(u);
        }
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &w in adj.get(&u).map(|v| v.as_slice()).unwrap_or(&[]) {
                if seen.insert(w) {
                    stack.push(w);
                }
            }
        }
        seen.len() == self.nodes.len()
    }

    pub fn nodes(&self) -> &[NodeId] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(NodeId, NodeId)] {
        &self.edges
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn contains(&self, v: NodeId) -> bool {
        self.nodes.binary_search(&v).is_ok()
    }

    pub fn degree(&self, v: NodeId) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Degree of every node of the host graph (0 off the tree).
    pub fn degrees(&self, node_count: usize) -> Vec<usize> {
        let mut deg = vec![0; node_count];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn max_degree(&self) -> usize {
        max_degree(self)
    }

    pub fn edge_ids(&self, graph: &Graph) -> Vec<EdgeId> {
        self.edges.iter().map(|&(u, v)| graph.edge_id(u, v).expect("tree edge in graph")).collect()
    }

    pub fn cost(&self, graph: &Graph) -> Cost {
        self.edge_ids(graph).into_iter().map(|e| graph.edge(e).cost).sum()
    }

    /// Relabels nodes; `perm[v]` is the new id of `v`.
    pub fn relabel(&self, perm: &[NodeId]) -> SubTree {
        let mut nodes: Vec<NodeId> = self.nodes.iter().map(|&v| perm[v]).collect();
        nodes.sort_unstable();
        let mut edges: Vec<(NodeId, NodeId)> = self.edges.iter().map(|&(u, v)| key(perm[u], perm[v])).collect();
        edges.sort_unstable();
        SubTree { nodes, edges }
    }
}

/// Largest number of tree edges at any node; 0 for single-node and empty trees.
pub fn max_degree(tree: &SubTree) -> usize {
    let mut deg: HashMap<NodeId, usize> = HashMap::new();
    for &(u, v) in &tree.edges {
        *deg.entry(u).or_default() += 1;
        *deg.entry(v).or_default() += 1;
    }
    deg.values().copied().max().unwrap_or(0)
}

/// Number of groups intersected by the tree's node set.
pub fn covers(tree: &SubTree, instance: &GstInstance) -> usize {
    instance.groups.iter().filter(|g| g.iter().any(|&v| tree.contains(v))).count()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValidationIssue {
    NodeOutOfRange { context: String, node: NodeId },
    EmptyGroup { index: usize },
    KExceedsTerminals { k: usize, terminals: usize },
    ZeroK,
    DuplicateTerminal { node: NodeId },
    NonpositiveBound { node: NodeId },
    BoundsLength { expected: usize, got: usize },
    CoverThreshold { threshold: usize, groups: usize },
    NoGroups,
}

impl fmt::Display for ValidationIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationIssue::NodeOutOfRange { context, node } => write!(f, "node out of range: {node} in {context}"),
            ValidationIssue::EmptyGroup { index } => write!(f, "empty group at index {index}"),
            ValidationIssue::KExceedsTerminals { k, terminals } => {
                write!(f, "k exceeds terminal count: k = {k}, |R| = {terminals}")
            }
            ValidationIssue::ZeroK => write!(f, "k must be positive"),
            ValidationIssue::DuplicateTerminal { node } => write!(f, "duplicate terminal {node}"),
            ValidationIssue::NonpositiveBound { node } => write!(f, "nonpositive bound at node {node}"),
            ValidationIssue::BoundsLength { expected, got } => {
                write!(f, "bounds list has {got} entries, expected {expected}")
            }
            ValidationIssue::CoverThreshold { threshold, groups } => {
                write!(f, "cover threshold {threshold} outside [1, {groups}]")
            }
            ValidationIssue::NoGroups => write!(f, "instance has no groups"),
        }
    }
}

/// A (bounded-degree) group Steiner tree instance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GstInstance {
    pub graph: Graph,
    pub groups: Vec<Vec<NodeId>>,
    pub root: Option<NodeId>,
    pub bounds: Option<Vec<u32>>,
    /// Number of groups a feasible tree must hit (`q`).
    pub cover_threshold: usize,
}

fn canonical_group(group: impl IntoIterator<Item = NodeId>) -> Vec<NodeId> {
    let mut g: Vec<NodeId> = group.into_iter().collect();
    g.sort_unstable();
    g.dedup();
    g
}

impl GstInstance {
    pub fn new(graph: Graph, groups: Vec<Vec<NodeId>>) -> Self {
        let groups: Vec<Vec<NodeId>> = groups.into_iter().map(canonical_group).collect();
        let cover_threshold = groups.len();
        GstInstance { graph, groups, root: None, bounds: None, cover_threshold }
    }

    pub fn with_root(mut self, root: NodeId) -> Self {
        self.root = Some(root);
        self
    }

    pub fn with_bounds(mut self, bounds: Vec<u32>) -> Self {
        self.bounds = Some(bounds);
        self
    }

    pub fn with_uniform_bound(self, bound: u32) -> Self {
        let n = self.graph.node_count();
        self.with_bounds(vec![bound; n])
    }

    pub fn with_cover_threshold(mut self, q: usize) -> Self {
        self.cover_threshold = q;
        self
    }

    /// Largest group size (`N`).
    pub fn max_group_size(&self) -> usize {
        self.groups.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn group_count(&self) -> usize {
        self.groups.len()
    }

    pub fn bound(&self, v: NodeId) -> Option<u32> {
        self.bounds.as_ref().map(|b| b[v])
    }

    pub fn is_feasible_tree(&self, tree: &SubTree) -> bool {
        if let Some(r) = self.root {
            if !tree.contains(r) {
                return false;
            }
        }
        covers(tree, self) >= self.cover_threshold
    }

    pub fn validate(&self) -> std::result::Result<(), ValidationErrors> {
        validate_gst(self)
    }
}

/// A Steiner k-tree instance. Terminal order is kept as given; the
/// two-point hashing indexes terminals by position.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KTreeInstance {
    pub graph: Graph,
    pub terminals: Vec<NodeId>,
    pub k: usize,
}

impl KTreeInstance {
    pub fn new(graph: Graph, terminals: Vec<NodeId>, k: usize) -> Self {
        KTreeInstance { graph, terminals, k }
    }

    pub fn validate(&self) -> std::result::Result<(), ValidationErrors> {
        validate_ktree(self)
    }
}

pub fn validate_gst(instance: &GstInstance) -> std::result::Result<(), ValidationErrors> {
    let n = instance.graph.node_count();
    let mut issues = Vec::new();
    if instance.groups.is_empty() {
        issues.push(ValidationIssue::NoGroups);
    }
    for (i, g) in instance.groups.iter().enumerate() {
        if g.is_empty() {
            issues.push(ValidationIssue::EmptyGroup { index: i });
        }
        for &v in g {
            if v >= n {
                issues.push(ValidationIssue::NodeOutOfRange { context: format!("group {i}"), node: v });
            }
        }
    }
    if let Some(r) = instance.root {
        if r >= n {
            issues.push(ValidationIssue::NodeOutOfRange { context: "root".into(), node: r });
        }
    }
    if let Some(bounds) = &instance.bounds {
        if bounds.len() != n {
            issues.push(ValidationIssue::BoundsLength { expected: n, got: bounds.len() });
        }
        for (v, &b) in bounds.iter().enumerate() {
            if b == 0 {
                issues.push(ValidationIssue::NonpositiveBound { node: v });
            }
        }
    }
    let q = instance.cover_threshold;
    if !instance.groups.is_empty() && (q == 0 || q > instance.groups.len()) {
        issues.push(ValidationIssue::CoverThreshold { threshold: q, groups: instance.groups.len() });
    }
    if issues.is_empty() {
        Ok(())
    } else {
        Err(ValidationErrors(issues))
    }
}

pub fn validate_ktree(instance: &KTreeInstance) -> std::result::Result<(), ValidationErrors> {
    let n = instance.graph.node_count();
    let mut issues = Vec::new();
    let mut seen = BTreeSet::new();
    for &t in &instance.terminals {
        if t >= n {
            issues.push(ValidationIssue::NodeOutOfRange { context: "terminals".into(), node: t });
        }
        if !seen.insert(t) {
            issues.push(ValidationIssue::DuplicateTerminal { node: t });
        }
    }
    if instance.k == 0 {
        issues.push(ValidationIssue::ZeroK);
    }
    if instance.k > instance.terminals.len() {
        issues.push(ValidationIssue::KExceedsTerminals { k: instance.k, terminals: instance.terminals.len() });
    }
    if issues.is_empty() {
        Ok(())
    } else {
        Err(ValidationErrors(issues))
    }
}

pub(crate) fn cost_to_f64(c: &Cost) -> f64 {
    c.to_f64().unwrap_or(f64::INFINITY)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::unit(n, &edges).unwrap()
    }

    fn star(leaves: usize) -> Graph {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::unit(leaves + 1, &edges).unwrap()
    }

    #[test]
    fn minimal_instance_validates() {
        let inst = GstInstance::new(path(4), vec![vec![3]]).with_root(0);
        assert!(inst.validate().is_ok());
    }

    #[test]
    fn out_of_range_group_node() {
        let inst = GstInstance::new(path(4), vec![vec![9]]);
        let err = inst.validate().unwrap_err();
        assert!(err.to_string().contains("node out of range"));
    }

    #[test]
    fn k_exceeds_terminals() {
        let inst = KTreeInstance::new(path(4), vec![0, 1, 2], 5);
        let err = inst.validate().unwrap_err();
        assert!(err.to_string().contains("k exceeds terminal count"));
    }

    #[test]
    fn reports_every_issue() {
        let inst = GstInstance::new(path(3), vec![vec![], vec![7]])
            .with_bounds(vec![1, 0, 2])
            .with_cover_threshold(3);
        let err = inst.validate().unwrap_err();
        assert_eq!(err.0.len(), 4, "{err}");
        assert!(err.to_string().contains("nonpositive bound"));
        assert!(err.to_string().contains("empty group"));
    }

    #[test]
    fn graph_rejects_bad_edges() {
        assert!(Graph::unit(3, &[(0, 0)]).is_err());
        assert!(Graph::unit(3, &[(0, 1), (1, 0)]).is_err());
        assert!(Graph::unit(3, &[(0, 5)]).is_err());
        assert!(Graph::new(2, [(0, 1, Cost::from_integer(-1))]).is_err());
    }

    #[test]
    fn max_degree_examples() {
        let g = star(4);
        let t = SubTree::from_pairs(&g, &[(0, 1), (0, 2), (0, 3), (0, 4)], None).unwrap();
        assert_eq!(max_degree(&t), 4);
        let t = SubTree::from_pairs(&g, &[(0, 1)], None).unwrap();
        assert_eq!(max_degree(&t), 1);
        let p = path(5);
        let t = SubTree::from_pairs(&p, &[(0, 1), (1, 2), (2, 3), (3, 4)], None).unwrap();
        assert_eq!(max_degree(&t), 2);
        assert_eq!(max_degree(&SubTree::single(3)), 0);
        assert_eq!(max_degree(&SubTree::empty()), 0);
    }

    #[test]
    fn covers_examples() {
        let g = star(2);
        let inst = GstInstance::new(g.clone(), vec![vec![1], vec![2]]);
        let t = SubTree::from_pairs(&g, &[(0, 1)], None).unwrap();
        assert_eq!(covers(&t, &inst), 1);
        let all = SubTree::from_pairs(&g, &[(0, 1), (0, 2)], None).unwrap();
        assert_eq!(covers(&all, &inst), 2);
        let root_only = GstInstance::new(g, vec![vec![0]]).with_root(0);
        assert_eq!(covers(&SubTree::single(0), &root_only), 1);
    }

    #[test]
    fn subtree_rejects_cycles_and_foreign_edges() {
        let g = Graph::unit(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(SubTree::from_pairs(&g, &[(0, 1), (1, 2), (0, 2)], None).is_err());
        let p = path(4);
        assert!(SubTree::from_pairs(&p, &[(0, 2)], None).is_err());
        assert!(SubTree::from_pairs(&p, &[(0, 1), (2, 3)], None).is_err());
    }

    #[test]
    fn rooted_tree_structure() {
        let g = Graph::unit(5, &[(0, 1), (1, 2), (1, 3), (0, 4)]).unwrap();
        let t = RootedTree::new(&g, 0).unwrap();
        assert_eq!(t.order[0], 0);
        assert_eq!(t.parent[2], Some(1));
        assert_eq!(t.depth[3], 2);
        let e12 = g.edge_id(1, 2).unwrap();
        assert_eq!(t.parent_of_edge(e12), g.edge_id(0, 1));
        assert_eq!(t.path_to_root(2).len(), 2);
        assert!(RootedTree::new(&Graph::unit(3, &[(0, 1), (1, 2), (0, 2)]).unwrap(), 0).is_err());
    }
}
