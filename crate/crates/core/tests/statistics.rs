//! Monte Carlo checks with fixed seeds.

use rand::seq::index;

use steiner_degree::harness::{binary_tree, marginals_solution};
use steiner_degree::ktree::{random_bin_count, random_bins};
use steiner_degree::lp::FractionalSolution;
use steiner_degree::rng::substream;
use steiner_degree::rounding::{estimate_connect_prob, estimate_edge_marginals};
use steiner_degree::RootedTree;

#[test]
fn random_bins_all_meet_a_large_optimum() {
    let k = 256;
    let terminals: Vec<usize> = (0..2 * k).collect();
    assert_eq!(random_bin_count(k), 7);
    let draws = 10_000;
    let mut rng = substream(11, 0);
    let mut all_full = 0;
    for _ in 0..draws {
        let r_star: Vec<bool> = {
            let mut m = vec![false; terminals.len()];
            for i in index::sample(&mut rng, terminals.len(), k) {
                m[i] = true;
            }
            m
        };
        let bins = random_bins(&terminals, k, &mut rng);
        if bins.len() == 7 && bins.iter().all(|b| b.iter().any(|&t| r_star[t])) {
            all_full += 1;
        }
    }
    assert!(all_full as f64 / draws as f64 >= 1.0 - 1.0 / k as f64, "{all_full}/{draws}");
}

#[test]
fn leaves_of_a_binary_tree_connect_often_enough() {
    let g = binary_tree(3);
    let tree = RootedTree::new(&g, 0).unwrap();
    let x: Vec<f64> = (0..g.edge_count())
        .map(|e| {
            let (u, v) = g.edge(e).endpoints();
            let depth = tree.path_to_root(u).len().max(tree.path_to_root(v).len());
            0.5f64.powi(depth as i32)
        })
        .collect();
    let sol = FractionalSolution { tree, x, x_f: 1.0, objective: 3.0 };
    let leaves: Vec<usize> = (0..g.node_count()).filter(|&v| g.degree(v) == 1).collect();
    assert_eq!(leaves.len(), 8);
    let p = estimate_connect_prob(&sol, &leaves, 10_000, 4);
    assert!(p >= 0.1 / 3.0, "{p}");
}

#[test]
fn marginals_match_within_three_sigma() {
    let sol = marginals_solution();
    let trials = 100_000;
    let emp = estimate_edge_marginals(&sol, trials, 21);
    for (e, (&got, &want)) in emp.iter().zip(&sol.x).enumerate() {
        let tol = 3.0 * (want * (1.0 - want) / trials as f64).sqrt() + 1e-3;
        assert!((got - want).abs() <= tol, "edge {e}: {got} vs {want}");
    }
}
