use std::collections::BTreeSet;

use proptest::prelude::*;
use rand::seq::SliceRandom;

use steiner_degree::harness::gen::{generate, GenKind, GenParams};
use steiner_degree::io::InstanceFile;
use steiner_degree::ktree::{
    find_prime, pair_probability, residue_counts, solve_md_ktree, OracleSolver, ReductionMode, TreeSolver,
};
use steiner_degree::lp::{build_lp, monotonize, monotonize_checked, solve_lp};
use steiner_degree::oracle::{brute_md_gst, brute_min_cost_bd_gst, gen_hitting_set_star, Objective};
use steiner_degree::rng::substream;
use steiner_degree::rounding::{solve_bd_gst_tree, solve_md_gst_tree};
use steiner_degree::treewidth::{balance_limit, connect_separators, decompose, height_bound, solve_md_gst_btw};
use steiner_degree::{covers, max_degree, GstInstance, SubTree};
use num_traits::ToPrimitive;

fn tree_instance(seed: u64, n: usize, groups: usize, bounds: bool) -> GstInstance {
    let p = GenParams { n, groups, group_size: 2, max_cost: 5, bounds, ..GenParams::default() };
    generate(GenKind::RandomTree, &p, seed).unwrap().to_gst().unwrap()
}

fn btw_instance(seed: u64, n: usize, w: usize) -> GstInstance {
    let p = GenParams { n, w, groups: 2, group_size: 2, ..GenParams::default() };
    generate(GenKind::BoundedTw, &p, seed).unwrap().to_gst().unwrap()
}

fn min_hitting_set(sets: &[Vec<usize>]) -> usize {
    let universe: BTreeSet<usize> = sets.iter().flatten().copied().collect();
    let elems: Vec<usize> = universe.into_iter().collect();
    (0u32..1 << elems.len())
        .filter(|mask| sets.iter().all(|s| s.iter().any(|x| mask >> elems.iter().position(|e| e == x).unwrap() & 1 == 1)))
        .map(|mask| mask.count_ones() as usize)
        .min()
        .unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn file_round_trip_is_stable(seed in any::<u64>(), n in 2usize..20) {
        let text = generate(GenKind::RandomTree, &GenParams { n, bounds: true, ..GenParams::default() }, seed).unwrap().to_json();
        let again = InstanceFile::from_gst(&InstanceFile::parse(&text).unwrap().to_gst().unwrap()).to_json();
        prop_assert_eq!(text, again);
    }

    #[test]
    fn max_degree_ignores_relabeling(seed in any::<u64>(), n in 2usize..12) {
        let inst = tree_instance(seed, n, 2, false);
        let tree = brute_md_gst(&inst).unwrap().best_tree;
        let mut perm: Vec<usize> = (0..n).collect();
        perm.shuffle(&mut substream(seed, 1));
        prop_assert_eq!(max_degree(&tree.relabel(&perm)), max_degree(&tree));
    }

    #[test]
    fn covers_is_monotone(seed in any::<u64>(), n in 2usize..14, cut in 0usize..14) {
        let inst = tree_instance(seed, n, 3, false);
        let order = steiner_degree::RootedTree::new(&inst.graph, 0).unwrap().edge_order();
        let small = SubTree::from_edge_ids(&inst.graph, &order[..cut.min(order.len())], Some(0)).unwrap();
        let big = SubTree::from_edge_ids(&inst.graph, &order, Some(0)).unwrap();
        prop_assert!(covers(&small, &inst) <= covers(&big, &inst));
        prop_assert_eq!(covers(&big, &inst), inst.groups.len());
    }

    #[test]
    fn hitting_set_oracle_is_exact(sets in prop::collection::vec(prop::collection::btree_set(1usize..=6, 1..4), 1..5)) {
        let sets: Vec<Vec<usize>> = sets.into_iter().map(|s| s.into_iter().collect()).collect();
        let inst = gen_hitting_set_star(&sets).unwrap();
        prop_assert_eq!(brute_md_gst(&inst).unwrap().degree(), Some(min_hitting_set(&sets)));
    }

    #[test]
    fn lp_is_a_relaxation(seed in any::<u64>(), n in 2usize..10) {
        let inst = tree_instance(seed, n, 3, true);
        let lp = solve_lp(&build_lp(&inst, true).unwrap()).unwrap();
        let opt = brute_min_cost_bd_gst(&inst).unwrap();
        let Objective::Cost(c) = opt.objective else { unreachable!() };
        prop_assert!(lp.objective <= c.to_f64().unwrap() + 1e-9);
    }

    #[test]
    fn monotonize_only_lowers(seed in any::<u64>(), n in 2usize..14) {
        let inst = tree_instance(seed, n, 3, false);
        let lp = solve_lp(&build_lp(&inst, false).unwrap()).unwrap();
        let m = monotonize(&lp);
        prop_assert!(m.x.iter().zip(&lp.x).all(|(a, b)| a <= b));
        prop_assert_eq!(m.x_f, lp.x_f);
        prop_assert!(m.cost(&inst.graph) <= lp.cost(&inst.graph) + 1e-12);
        prop_assert!(monotonize_checked(&lp, &inst).is_ok());
    }

    #[test]
    fn bicriteria_output_is_a_rooted_cover(seed in any::<u64>(), n in 2usize..30) {
        let inst = tree_instance(seed, n, 3, true);
        let a = solve_bd_gst_tree(&inst, seed, None).unwrap();
        prop_assert!(inst.is_feasible_tree(&a.result.tree));
        prop_assert!(a.result.tree.contains(0));
        let b = solve_bd_gst_tree(&inst, seed, None).unwrap();
        prop_assert_eq!(a.trace, b.trace);
    }

    #[test]
    fn approximations_never_beat_the_oracle(seed in any::<u64>(), n in 2usize..10) {
        let inst = tree_instance(seed, n, 2, false);
        let opt = brute_md_gst(&inst).unwrap().degree().unwrap();
        let md = solve_md_gst_tree(&inst, seed).unwrap();
        prop_assert!(inst.is_feasible_tree(&md.tree));
        prop_assert!(md.max_degree >= opt);
        let free = GstInstance { root: None, ..inst.clone() };
        let free_opt = brute_md_gst(&free).unwrap().degree().unwrap();
        let btw = solve_md_gst_btw(&free, None, seed).unwrap();
        prop_assert!(free.is_feasible_tree(&btw.tree));
        prop_assert!(btw.degree >= free_opt);
    }

    #[test]
    fn separator_structure(seed in any::<u64>(), n in 1usize..30, w in 1usize..4) {
        let inst = btw_instance(seed, n, w);
        let d = decompose(&inst.graph, &inst.groups, w).unwrap();
        let t = &d.separators;
        let mut seen = vec![0; n];
        for s in &t.nodes {
            prop_assert!(s.is_leaf || s.set.len() <= w + 1);
            for &v in &s.set {
                seen[v] += 1;
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
        prop_assert!(t.depth() <= height_bound(n));
        for (i, s) in t.nodes.iter().enumerate() {
            for &c in &s.children {
                prop_assert!(t.nodes[c].region.len() <= balance_limit(s.region.len()));
                prop_assert_eq!(t.nodes[c].parent, Some(i));
            }
        }
        let conn = connect_separators(&inst.graph, t).unwrap();
        for (i, edges) in conn.per_node.iter().enumerate() {
            for &e in edges {
                let (u, v) = inst.graph.edge(e).endpoints();
                prop_assert!(t.nodes[i].region.contains(&u) && t.nodes[i].region.contains(&v));
            }
        }
        let bound = 2 * (w + 1) * t.depth().max(1);
        prop_assert!(conn.degrees(&inst.graph).iter().all(|&x| x <= bound));
        for &(desc, anc) in &d.contracted.backward_edges {
            prop_assert!(t.is_ancestor(anc, desc));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn ktree_collects_k_terminals(seed in any::<u64>(), n in 2usize..11, k in 1usize..6) {
        let p = GenParams { n, terminals: n, k: k.min(n), ..GenParams::default() };
        let inst = generate(GenKind::RandomTree, &p, seed).unwrap().to_ktree().unwrap();
        for mode in [ReductionMode::Randomized, ReductionMode::Derandomized] {
            let out = solve_md_ktree(&inst, &OracleSolver, mode, seed).unwrap();
            let hit = out.tree.nodes().iter().filter(|v| inst.terminals.contains(v)).count();
            prop_assert!(hit >= inst.k);
            prop_assert_eq!(out.terminals_covered, hit);
        }
    }

    #[test]
    fn derandomized_reduction_is_deterministic(seed in any::<u64>(), other in any::<u64>(), n in 4usize..11) {
        let p = GenParams { n, terminals: n, k: n / 2 + 1, ..GenParams::default() };
        let inst = generate(GenKind::RandomTree, &p, seed).unwrap().to_ktree().unwrap();
        let a = solve_md_ktree(&inst, &TreeSolver, ReductionMode::Derandomized, seed).unwrap();
        let b = solve_md_ktree(&inst, &TreeSolver, ReductionMode::Derandomized, seed).unwrap();
        prop_assert_eq!(&a, &b);
        let c = solve_md_ktree(&inst, &OracleSolver, ReductionMode::Derandomized, seed).unwrap();
        let d = solve_md_ktree(&inst, &OracleSolver, ReductionMode::Derandomized, other).unwrap();
        prop_assert_eq!(c, d);
    }

    #[test]
    fn two_point_bounds(k in 1usize..=64) {
        let p = find_prime(k);
        let counts = residue_counts(k, p);
        prop_assert_eq!(counts.iter().sum::<usize>(), p);
        for c in counts {
            prop_assert!(c as f64 / p as f64 >= 1.0 / k as f64 - 2.0 / p as f64);
        }
        if k <= 8 {
            let bound = (1.0 / k as f64 + 1.0 / p as f64).powi(2);
            for j in 0..k {
                let pr = pair_probability(k, p, 0, p - 1, j);
                prop_assert!(pr.to_f64().unwrap() <= bound + 1e-12);
            }
        }
    }
}
