//! Reductions from min-degree Steiner k-tree to min-degree group Steiner
//! tree.
//!
//! Terminals are split into bins and every nonempty bin becomes a group.
//! Randomized mode draws about `k/(5 log k)` bins uniformly and asks for a
//! tree touching all of them. Derandomized mode hashes terminal `i` to bin
//! `((a·i+b) mod p) mod k` for a prime `p ∈ [2k, 4k]`, tries every `(a, b)`
//! and asks for a tree touching `⌈k/3⌉` bins, keeping the lowest degree.
//! Either way one round rarely collects all `k` terminals, so rounds repeat
//! with the collected tree contracted into the root.

use std::collections::{BTreeMap, BTreeSet};

use num_rational::Ratio;
use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::instance::{Cost, EdgeId, Graph, GstInstance, KTreeInstance, NodeId, SubTree};
use crate::oracle::brute_md_gst;
use crate::rng::{stream_id, substream};

pub fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Smallest prime in `[2k, 4k]`.
pub fn find_prime(k: usize) -> usize {
    let k = k.max(1);
    (2 * k..=4 * k).find(|&p| is_prime(p)).expect("Bertrand's postulate")
}

/// `⌈k / (5·log₂ k)⌉`, and 1 for `k ≤ 4`.
pub fn random_bin_count(k: usize) -> usize {
    if k <= 4 {
        return 1;
    }
    let bins = (k as f64 / (5.0 * (k as f64).log2())).ceil() as usize;
    bins.max(1)
}

/// Throws every terminal into one of `random_bin_count(k)` bins uniformly
/// and returns the nonempty bins.
pub fn random_bins<R: Rng + ?Sized>(terminals: &[NodeId], k: usize, rng: &mut R) -> Vec<Vec<NodeId>> {
    let count = random_bin_count(k);
    let mut bins = vec![Vec::new(); count];
    for &t in terminals {
        bins[rng.random_range(0..count)].push(t);
    }
    bins.into_iter()
        .filter(|b| !b.is_empty())
        .map(|mut b| {
            b.sort_unstable();
            b
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BinMode {
    Randomized,
    TwoPoint,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BinAssignment {
    pub k: usize,
    pub p: usize,
    pub a: usize,
    pub b: usize,
    pub mode: BinMode,
    /// Bin of terminal index `i`.
    pub map: Vec<usize>,
    /// `|{0 ≤ r < p : r ≡ j (mod k)}|` for each bin `j`.
    pub residue_count: Vec<usize>,
}

pub fn residue_counts(k: usize, p: usize) -> Vec<usize> {
    let mut counts = vec![0; k];
    for r in 0..p {
        counts[r % k] += 1;
    }
    counts
}

pub fn hash_bin(i: usize, k: usize, p: usize, a: usize, b: usize) -> usize {
    ((a * i + b) % p) % k
}

impl BinAssignment {
    pub fn bin_of(&self, i: usize) -> usize {
        self.map[i]
    }

    /// Chance that a fixed terminal lands in bin `j` over a uniform residue.
    pub fn hit_probability(&self, j: usize) -> Ratio<i64> {
        Ratio::new(self.residue_count[j] as i64, self.p as i64)
    }

    /// Nonempty bins as groups of terminals; `terminals[i]` has index `i`.
    pub fn groups(&self, terminals: &[NodeId]) -> Vec<Vec<NodeId>> {
        let mut bins = vec![Vec::new(); self.k];
        for (i, &t) in terminals.iter().enumerate() {
            bins[self.map[i]].push(t);
        }
        bins.into_iter().filter(|b| !b.is_empty()).collect()
    }

    /// Number of bins that receive at least one of the given indices.
    pub fn full_bins(&self, indices: &[usize]) -> usize {
        indices.iter().map(|&i| self.map[i]).collect::<BTreeSet<_>>().len()
    }
}

/// Two-point hash of `terminal_count` indices into `k` bins with
/// `p = find_prime(k)`.
pub fn two_point_bins(terminal_count: usize, k: usize, a: usize, b: usize) -> Result<BinAssignment> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let p = find_prime(k);
    two_point_bins_with_prime(terminal_count, k, p, a, b)
}

pub fn two_point_bins_with_prime(terminal_count: usize, k: usize, p: usize, a: usize, b: usize) -> Result<BinAssignment> {
    if a == 0 || a >= p {
        return Err(Error::InvalidParameter(format!("a = {a} outside [1, {}]", p - 1)));
    }
    if b >= p {
        return Err(Error::InvalidParameter(format!("b = {b} outside [0, {}]", p - 1)));
    }
    Ok(BinAssignment {
        k,
        p,
        a,
        b,
        mode: BinMode::TwoPoint,
        map: (0..terminal_count).map(|i| hash_bin(i, k, p, a, b)).collect(),
        residue_count: residue_counts(k, p),
    })
}

/// Exact probability over all `(a, b)` that indices `i ≠ i2` both land in
/// bin `j`.
pub fn pair_probability(k: usize, p: usize, i: usize, i2: usize, j: usize) -> Ratio<i64> {
    let mut hits = 0i64;
    for a in 1..p {
        for b in 0..p {
            if hash_bin(i, k, p, a, b) == j && hash_bin(i2, k, p, a, b) == j {
                hits += 1;
            }
        }
    }
    Ratio::new(hits, (p * (p - 1)) as i64)
}

/// First `(a, b)` (scanning `a` then `b`) under which the indices in
/// `r_star` hit at least `⌈k/3⌉` distinct bins. Returns `(a, b, full)`.
pub fn full_bins_exists(r_star: &[usize], k: usize, p: usize) -> Result<(usize, usize, usize)> {
    let needed = k.div_ceil(3);
    for a in 1..p {
        for b in 0..p {
            let full = r_star.iter().map(|&i| hash_bin(i, k, p, a, b)).collect::<BTreeSet<_>>().len();
            if full >= needed {
                return Ok((a, b, full));
            }
        }
    }
    Err(Error::NoPairFound { needed })
}

/// Hangs a complete binary tree with exactly `leaf_count` leaves from the
/// root by a single edge and puts every new leaf in every group.
///
/// Taken literally this lets one leaf cover all groups, so the reduction
/// itself uses partial cover instead; the gadget is kept as a fixture.
pub fn attach_binary_tree_gadget(instance: &GstInstance, leaf_count: usize) -> Result<GstInstance> {
    let root = instance.root.ok_or(Error::RootMissing)?;
    if leaf_count == 0 {
        return Err(Error::InvalidParameter("leaf_count must be at least 1".into()));
    }
    let n = instance.graph.node_count();
    let extra = 2 * leaf_count - 1;
    let mut edges: Vec<(NodeId, NodeId, Cost)> =
        instance.graph.edges().iter().map(|e| (e.u, e.v, e.cost)).collect();
    edges.push((root, n, Cost::from_integer(1)));
    for j in 1..extra {
        edges.push((n + (j - 1) / 2, n + j, Cost::from_integer(1)));
    }
    let graph = Graph::new(n + extra, edges)?;
    let leaves: Vec<NodeId> = (n + leaf_count - 1..n + extra).collect();
    let groups = instance
        .groups
        .iter()
        .map(|g| g.iter().copied().chain(leaves.iter().copied()).collect())
        .collect();
    let mut out = GstInstance::new(graph, groups).with_root(root).with_cover_threshold(instance.cover_threshold);
    if let Some(b) = &instance.bounds {
        let mut b = b.clone();
        b.extend(std::iter::repeat_n(3, extra));
        out = out.with_bounds(b);
    }
    Ok(out)
}

/// Any min-degree group Steiner tree procedure.
pub trait GstSolver: Sync {
    fn name(&self) -> &'static str;
    fn solve(&self, instance: &GstInstance, seed: u64) -> Result<SubTree>;
}

/// Exact solver by exhaustive search.
pub struct OracleSolver;

impl GstSolver for OracleSolver {
    fn name(&self) -> &'static str {
        "oracle"
    }

    fn solve(&self, instance: &GstInstance, _seed: u64) -> Result<SubTree> {
        Ok(brute_md_gst(instance)?.best_tree)
    }
}

/// LP rounding; the graph must be a tree.
pub struct TreeSolver;

impl GstSolver for TreeSolver {
    fn name(&self) -> &'static str {
        "tree"
    }

    fn solve(&self, instance: &GstInstance, seed: u64) -> Result<SubTree> {
        Ok(crate::rounding::solve_md_gst_tree(instance, seed)?.tree)
    }
}

/// Separator-tree reduction; `w = None` searches for a width.
pub struct BtwSolver {
    pub w: Option<usize>,
}

impl GstSolver for BtwSolver {
    fn name(&self) -> &'static str {
        "btw"
    }

    fn solve(&self, instance: &GstInstance, seed: u64) -> Result<SubTree> {
        Ok(crate::treewidth::solve_md_gst_btw(instance, self.w, seed)?.tree)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionMode {
    Randomized,
    Derandomized,
}

impl std::str::FromStr for ReductionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "randomized" => Ok(ReductionMode::Randomized),
            "derandomized" => Ok(ReductionMode::Derandomized),
            other => Err(Error::InvalidParameter(format!("unknown mode {other:?}"))),
        }
    }
}

/// One `(a, b)` trial of a derandomized round.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PairRecord {
    pub round: usize,
    pub a: usize,
    pub b: usize,
    /// Bins the solver's tree touches.
    pub full_bins: usize,
    pub degree: usize,
    pub terminals: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RoundRecord {
    pub round: usize,
    pub remaining_target: usize,
    pub groups: usize,
    pub cover_threshold: usize,
    /// Max degree of the tree the solver returned in the contracted graph.
    pub solver_degree: usize,
    pub new_terminals: usize,
    pub chosen_pair: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ReductionOutcome {
    pub mode: ReductionMode,
    pub solver: &'static str,
    pub k: usize,
    pub tree: SubTree,
    pub terminals_covered: usize,
    pub degree: usize,
    pub round_cap: usize,
    pub rounds: Vec<RoundRecord>,
    pub pairs: Vec<PairRecord>,
}

pub fn round_cap(k: usize) -> usize {
    let l = crate::rounding::ceil_log2(k + 2);
    10 * l * l
}

/// The graph with a set of collected nodes merged into one supernode.
struct Contraction {
    graph: Graph,
    /// Original node → contracted node.
    to_new: Vec<NodeId>,
    /// Contracted edge → smallest original edge it stands for.
    to_old_edge: Vec<EdgeId>,
    supernode: Option<NodeId>,
}

fn contract_collected(graph: &Graph, collected: &[bool]) -> Result<Contraction> {
    let n = graph.node_count();
    let any = collected.iter().any(|&c| c);
    let mut to_new = vec![0; n];
    let mut next = usize::from(any);
    for v in 0..n {
        if !collected[v] {
            to_new[v] = next;
            next += 1;
        }
    }
    let mut rep: BTreeMap<(NodeId, NodeId), EdgeId> = BTreeMap::new();
    for (id, e) in graph.edges().iter().enumerate() {
        if collected[e.u] && collected[e.v] {
            continue;
        }
        let (a, b) = (to_new[e.u], to_new[e.v]);
        rep.entry((a.min(b), a.max(b))).or_insert(id);
    }
    let edges: Vec<(NodeId, NodeId, Cost)> =
        rep.iter().map(|(&(a, b), &id)| (a, b, graph.edge(id).cost)).collect();
    let contracted = Graph::new(next, edges)?;
    let to_old_edge = contracted.edges().iter().map(|e| rep[&(e.u, e.v)]).collect();
    Ok(Contraction { graph: contracted, to_new, to_old_edge, supernode: any.then_some(0) })
}

struct RoundResult {
    edges: Vec<EdgeId>,
    nodes: Vec<NodeId>,
    solver_degree: usize,
    pair: Option<(usize, usize)>,
    pairs: Vec<PairRecord>,
    groups: usize,
    cover_threshold: usize,
}

/// Maps a contracted tree back to original edges and nodes (without the
/// supernode's interior).
fn expand(c: &Contraction, graph: &Graph, tree: &SubTree, collected: &[bool]) -> (Vec<EdgeId>, Vec<NodeId>) {
    let mut from_new = vec![usize::MAX; c.graph.node_count()];
    for (v, &nv) in c.to_new.iter().enumerate() {
        if !collected[v] {
            from_new[nv] = v;
        }
    }
    let edges: Vec<EdgeId> = tree.edge_ids(&c.graph).into_iter().map(|e| c.to_old_edge[e]).collect();
    let mut nodes: Vec<NodeId> = tree.nodes().iter().filter(|&&v| Some(v) != c.supernode).map(|&v| from_new[v]).collect();
    for &e in &edges {
        let edge = graph.edge(e);
        nodes.push(edge.u);
        nodes.push(edge.v);
    }
    nodes.sort_unstable();
    nodes.dedup();
    (edges, nodes)
}

/// Iteratively collects terminals with a min-degree group Steiner tree
/// solver until `k` are in the tree.
pub fn solve_md_ktree(
    instance: &KTreeInstance,
    solver: &dyn GstSolver,
    mode: ReductionMode,
    seed: u64,
) -> Result<ReductionOutcome> {
    instance.validate()?;
    let graph = &instance.graph;
    let n = graph.node_count();
    let k = instance.k;
    let cap = round_cap(k);
    let is_terminal = {
        let mut t = vec![false; n];
        for &v in &instance.terminals {
            t[v] = true;
        }
        t
    };
    let mut collected = vec![false; n];
    let mut edges: BTreeSet<EdgeId> = BTreeSet::new();
    let mut rounds = Vec::new();
    let mut pairs = Vec::new();
    let mut covered = 0usize;
    while covered < k {
        if rounds.len() == cap {
            return Err(Error::RoundCapExceeded { cap });
        }
        let round = rounds.len();
        let remaining: Vec<NodeId> = instance.terminals.iter().copied().filter(|&t| !collected[t]).collect();
        let target = k - covered;
        let c = contract_collected(graph, &collected)?;
        let mapped: Vec<NodeId> = remaining.iter().map(|&t| c.to_new[t]).collect();
        let round_seed = crate::rng::mix(seed ^ stream_id("ktree-round", round as u64));
        let r = match mode {
            ReductionMode::Randomized => randomized_round(&c, graph, &collected, &mapped, target, solver, round_seed)?,
            ReductionMode::Derandomized => {
                derandomized_round(&c, graph, &collected, &mapped, target, solver, round_seed, round)?
            }
        };
        edges.extend(r.edges.iter().copied());
        for &v in &r.nodes {
            collected[v] = true;
        }
        let now = (0..n).filter(|&v| collected[v] && is_terminal[v]).count();
        pairs.extend(r.pairs);
        rounds.push(RoundRecord {
            round,
            remaining_target: target,
            groups: r.groups,
            cover_threshold: r.cover_threshold,
            solver_degree: r.solver_degree,
            new_terminals: now - covered,
            chosen_pair: r.pair,
        });
        covered = now;
    }
    let anchor = (0..n).find(|&v| collected[v]);
    let ids: Vec<EdgeId> = edges.into_iter().collect();
    let tree = SubTree::from_edge_ids(graph, &ids, anchor)?;
    let terminals_covered = instance.terminals.iter().filter(|&&t| tree.contains(t)).count();
    Ok(ReductionOutcome {
        mode,
        solver: solver.name(),
        k,
        degree: tree.max_degree(),
        tree,
        terminals_covered,
        round_cap: cap,
        rounds,
        pairs,
    })
}

fn gst_for(c: &Contraction, groups: Vec<Vec<NodeId>>, threshold: usize) -> GstInstance {
    let mut inst = GstInstance::new(c.graph.clone(), groups).with_cover_threshold(threshold);
    if let Some(s) = c.supernode {
        inst = inst.with_root(s);
    }
    inst
}

fn solver_failed(e: Error) -> Error {
    match e {
        Error::SolverFailed(_) => e,
        other => Error::SolverFailed(other.to_string()),
    }
}

fn randomized_round(
    c: &Contraction,
    graph: &Graph,
    collected: &[bool],
    terminals: &[NodeId],
    target: usize,
    solver: &dyn GstSolver,
    seed: u64,
) -> Result<RoundResult> {
    let mut rng = substream(seed, 0);
    let groups = random_bins(terminals, target, &mut rng);
    let q = groups.len();
    let inst = gst_for(c, groups, q);
    let tree = solver.solve(&inst, seed).map_err(solver_failed)?;
    let (edges, nodes) = expand(c, graph, &tree, collected);
    Ok(RoundResult {
        edges,
        nodes,
        solver_degree: tree.max_degree(),
        pair: None,
        pairs: Vec::new(),
        groups: q,
        cover_threshold: q,
    })
}

#[allow(clippy::too_many_arguments)]
fn derandomized_round(
    c: &Contraction,
    graph: &Graph,
    collected: &[bool],
    terminals: &[NodeId],
    target: usize,
    solver: &dyn GstSolver,
    seed: u64,
    round: usize,
) -> Result<RoundResult> {
    let bins = target;
    let p = find_prime(bins);
    let needed = bins.div_ceil(3);
    let candidates: Vec<(usize, usize)> = (1..p).flat_map(|a| (0..p).map(move |b| (a, b))).collect();
    // Many pairs induce the same partition; solve each partition once.
    let mut partitions: BTreeMap<Vec<Vec<NodeId>>, Vec<(usize, usize)>> = BTreeMap::new();
    for &(a, b) in &candidates {
        let assignment = two_point_bins_with_prime(terminals.len(), bins, p, a, b)?;
        let mut groups = assignment.groups(terminals);
        if groups.len() < needed {
            continue;
        }
        groups.sort();
        partitions.entry(groups).or_default().push((a, b));
    }
    if partitions.is_empty() {
        return Err(Error::NoPairFound { needed });
    }
    let jobs: Vec<_> = partitions.iter().collect();
    let solved: Vec<Option<SubTree>> = jobs
        .par_iter()
        .map(|(groups, _)| solver.solve(&gst_for(c, (*groups).clone(), needed), seed).ok())
        .collect();
    let terminal_set: BTreeSet<NodeId> = terminals.iter().copied().collect();
    let mut records = Vec::new();
    let mut best = None;
    for ((groups, ab), tree) in jobs.iter().zip(&solved) {
        let Some(tree) = tree else { continue };
        let degree = tree.max_degree();
        let hit = tree.nodes().iter().filter(|v| terminal_set.contains(v)).count();
        let full = groups.iter().filter(|g| g.iter().any(|&t| tree.contains(t))).count();
        for &(a, b) in ab.iter() {
            records.push(PairRecord { round, a, b, full_bins: full, degree, terminals: hit });
        }
        let key = (degree, std::cmp::Reverse(hit), ab[0], tree, groups.len());
        if best.as_ref().is_none_or(|b: &(usize, std::cmp::Reverse<usize>, (usize, usize), &SubTree, usize)| (key.0, key.1, key.2) < (b.0, b.1, b.2)) {
            best = Some(key);
        }
    }
    records.sort_by_key(|r| (r.a, r.b));
    let (degree, _, pair, tree, groups) = best.ok_or_else(|| Error::SolverFailed("no (a, b) pair was solvable".into()))?;
    let (edges, nodes) = expand(c, graph, tree, collected);
    Ok(RoundResult {
        edges,
        nodes,
        solver_degree: degree,
        pair: Some(pair),
        pairs: records,
        groups,
        cover_threshold: needed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::brute_md_ktree;

    #[test]
    fn primes() {
        assert_eq!(find_prime(3), 7);
        assert_eq!(find_prime(1), 2);
        assert_eq!(find_prime(10), 23);
        for k in 1..200 {
            let p = find_prime(k);
            assert!(2 * k <= p && p <= 4 * k && is_prime(p));
        }
    }

    #[test]
    fn bin_counts() {
        for k in 1..=4 {
            assert_eq!(random_bin_count(k), 1);
        }
        assert_eq!(random_bin_count(64), 3);
        assert_eq!(random_bin_count(256), 7);
    }

    #[test]
    fn random_bins_partition() {
        let terms: Vec<NodeId> = (0..64).collect();
        let mut rng = substream(3, 0);
        let bins = random_bins(&terms, 64, &mut rng);
        assert!(bins.len() <= 3);
        let mut all: Vec<NodeId> = bins.concat();
        all.sort_unstable();
        assert_eq!(all, terms);
    }

    #[test]
    fn two_point_examples() {
        assert_eq!(hash_bin(4, 3, 7, 2, 3), 1);
        let id = two_point_bins(10, 4, 1, 0).unwrap();
        assert_eq!(id.p, 11);
        for i in 0..10 {
            assert_eq!(id.bin_of(i), (i % 11) % 4);
        }
        assert_eq!(residue_counts(2, 5), vec![3, 2]);
        let bins = two_point_bins_with_prime(3, 2, 5, 1, 0).unwrap();
        assert_eq!(bins.hit_probability(0), Ratio::new(3, 5));
        assert_eq!(bins.hit_probability(1), Ratio::new(2, 5));
        assert!(two_point_bins(3, 3, 0, 0).is_err());
        assert!(two_point_bins(3, 3, 1, 7).is_err());
    }

    #[test]
    fn pairwise_independence_small() {
        for k in 1..=4 {
            let p = find_prime(k);
            let bound = (Ratio::new(1, k as i64) + Ratio::new(1, p as i64)).pow(2);
            for j in 0..k {
                let c = residue_counts(k, p)[j] as i64;
                let exact = pair_probability(k, p, 0, 3, j);
                assert_eq!(exact, Ratio::new(c * (c - 1), (p * (p - 1)) as i64));
                assert!(exact <= bound);
            }
        }
    }

    #[test]
    fn full_bins_scan() {
        assert_eq!(full_bins_exists(&[0], 1, 2).unwrap().2, 1);
        let (a, b, full) = full_bins_exists(&(0..8).collect::<Vec<_>>(), 8, 17).unwrap();
        assert!(full >= 3);
        assert_eq!((a, b), (1, 0));
    }

    #[test]
    fn gadget_shapes() {
        let g = Graph::unit(2, &[(0, 1)]).unwrap();
        let inst = GstInstance::new(g, vec![vec![1]]).with_root(0);
        let one = attach_binary_tree_gadget(&inst, 1).unwrap();
        assert_eq!(one.graph.node_count(), 3);
        assert_eq!(one.groups, vec![vec![1, 2]]);
        let four = attach_binary_tree_gadget(&inst, 4).unwrap();
        assert_eq!(four.graph.node_count(), 2 + 7);
        assert_eq!(four.graph.degree(0), 2);
        assert!((2..9).all(|v| four.graph.degree(v) <= 3));
        assert_eq!(four.groups[0], vec![1, 5, 6, 7, 8]);
        assert!(attach_binary_tree_gadget(&inst, 0).is_err());
    }

    fn path(n: usize) -> Graph {
        let e: Vec<(usize, usize)> = (0..n - 1).map(|i| (i, i + 1)).collect();
        Graph::unit(n, &e).unwrap()
    }

    #[test]
    fn k_one_single_round() {
        let inst = KTreeInstance::new(path(5), vec![3, 1], 1);
        for mode in [ReductionMode::Randomized, ReductionMode::Derandomized] {
            let out = solve_md_ktree(&inst, &OracleSolver, mode, 1).unwrap();
            assert_eq!(out.rounds.len(), 1);
            assert!(out.terminals_covered >= 1);
            assert_eq!(out.degree, 0);
        }
    }

    #[test]
    fn path_degree_at_most_two() {
        let inst = KTreeInstance::new(path(8), (0..8).collect(), 6);
        for mode in [ReductionMode::Randomized, ReductionMode::Derandomized] {
            let out = solve_md_ktree(&inst, &OracleSolver, mode, 9).unwrap();
            assert!(out.terminals_covered >= 6);
            assert!(out.degree <= 2);
            let tree_out = solve_md_ktree(&inst, &TreeSolver, mode, 9).unwrap();
            assert!(tree_out.terminals_covered >= 6 && tree_out.degree <= 2);
        }
    }

    #[test]
    fn star_against_oracle() {
        let g = Graph::unit(7, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]).unwrap();
        let inst = KTreeInstance::new(g, vec![4, 5, 6, 1], 3);
        let opt = brute_md_ktree(&inst).unwrap().degree().unwrap();
        let out = solve_md_ktree(&inst, &OracleSolver, ReductionMode::Derandomized, 2).unwrap();
        assert!(out.terminals_covered >= 3);
        assert!(out.degree <= 8 * 3 * opt.max(1));
        let again = solve_md_ktree(&inst, &OracleSolver, ReductionMode::Derandomized, 77).unwrap();
        assert_eq!(out, again);
    }
}
