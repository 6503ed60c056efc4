use graph_knapsack::connected::solve_connected;
use graph_knapsack::decomposition::{from_tree_decomposition, validate_nice_decomposition};
use graph_knapsack::oracle::{
    enumerate_simple_paths, hamiltonian_path_exists, knapsack_exists, partial_vertex_cover_exists, vertex_cover_exists,
};
use graph_knapsack::path::solve_path_treewidth_with;
use graph_knapsack::reductions::*;
use graph_knapsack::shortest::solve_shortest_path;
use graph_knapsack::Variant;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64, max_degree: usize) -> SimpleGraph {
    let mut deg = vec![0; n];
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if deg[u] < max_degree && deg[v] < max_degree && rng.gen_bool(p) {
                edges.push((u, v));
                deg[u] += 1;
                deg[v] += 1;
            }
        }
    }
    SimpleGraph { n, edges }
}

fn random_items(rng: &mut ChaCha8Rng) -> KnapsackItems {
    let n = rng.gen_range(1..=6);
    let sizes: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=6)).collect();
    let values: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=6)).collect();
    let capacity = rng.gen_range(0..=sizes.iter().sum::<u64>());
    let target = rng.gen_range(0..=values.iter().sum::<u64>() + 1);
    KnapsackItems { sizes, values, capacity, target }
}

#[test]
fn vertex_cover_preserved() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..30 {
        let n = rng.gen_range(1..=6);
        let g = random_graph(&mut rng, n, 0.5, 3);
        let k = rng.gen_range(1..=n as u64);
        let out = reduce_vertex_cover_to_connected(&g, k).unwrap();
        assert!((0..out.instance.n()).all(|v| out.instance.degree(v) <= 4));
        assert_eq!(solve_connected(&out.instance).feasible, vertex_cover_exists(g.n, &g.edges, k), "{g:?} k={k}");
    }
}

#[test]
fn k3_vertex_cover_examples() {
    let k3 = SimpleGraph { n: 3, edges: vec![(0, 1), (1, 2), (0, 2)] };
    assert!(solve_connected(&reduce_vertex_cover_to_connected(&k3, 2).unwrap().instance).feasible);
    assert!(!solve_connected(&reduce_vertex_cover_to_connected(&k3, 1).unwrap().instance).feasible);
    assert!(solve_connected(&reduce_partial_vc_to_connected(&k3, 1, 2).unwrap().instance).feasible);
    assert!(!solve_connected(&reduce_partial_vc_to_connected(&k3, 1, 3).unwrap().instance).feasible);
    let r = solve_connected(&reduce_partial_vc_to_connected(&k3, 0, 0).unwrap().instance);
    assert!(r.feasible);
}

// With a zero budget no u-vertex can be bought, yet a lone edge vertex is a
// connected set of value one: the gadgets answer yes while the source says no.
#[test]
fn zero_budget_single_edge_vertex() {
    let one_edge = SimpleGraph { n: 3, edges: vec![(0, 1)] };
    assert!(!vertex_cover_exists(3, &one_edge.edges, 0));
    let r = solve_connected(&reduce_vertex_cover_to_connected(&one_edge, 0).unwrap().instance);
    assert!(r.feasible);
    assert_eq!(r.witness, Some(vec![6]));
    assert!(!partial_vertex_cover_exists(3, &one_edge.edges, 0, 1));
    assert!(solve_connected(&reduce_partial_vc_to_connected(&one_edge, 0, 1).unwrap().instance).feasible);
}

#[test]
fn partial_vertex_cover_preserved() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..30 {
        let n = rng.gen_range(1..=6);
        let g = random_graph(&mut rng, n, 0.5, n);
        let k = rng.gen_range(1..=n as u64);
        let l = rng.gen_range(0..=g.edges.len() as u64);
        let out = reduce_partial_vc_to_connected(&g, k, l).unwrap();
        assert_eq!(solve_connected(&out.instance).feasible, partial_vertex_cover_exists(g.n, &g.edges, k, l));
    }
}

#[test]
fn star_preserved() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let items = random_items(&mut rng);
        let out = reduce_knapsack_to_star_connected(&items).unwrap();
        let want = knapsack_exists(&items.sizes, &items.values, items.capacity, items.target);
        assert_eq!(solve_connected(&out.instance).feasible, want, "{items:?}");
    }
}

#[test]
fn hamiltonian_preserved() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        let n = rng.gen_range(2..=7);
        let g = random_graph(&mut rng, n, 0.6, 3);
        let (x, y) = (0, n - 1);
        let out = reduce_hamiltonian_to_path(&g, x, y).unwrap();
        assert!(out.instance.edges().len() == g.edges.len());
        let got = solve_path_treewidth_with(&out.instance, 0).unwrap().feasible;
        assert_eq!(got, hamiltonian_path_exists(g.n, &g.edges, x, y), "{g:?}");
    }
}

#[test]
fn ladder_preserved_and_audited() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..40 {
        let items = random_items(&mut rng);
        let want = knapsack_exists(&items.sizes, &items.values, items.capacity, items.target);
        for variant in [Variant::Path, Variant::ShortestPath] {
            let out = reduce_knapsack_to_path_gadget(&items, variant).unwrap();
            let inst = &out.instance;
            let got = match variant {
                Variant::Path => solve_path_treewidth_with(inst, 0).unwrap().feasible,
                _ => solve_shortest_path(inst).feasible,
            };
            assert_eq!(got, want, "{variant} {items:?}");

            let bags = out.provenance.path_decomposition.clone().unwrap();
            let parent: Vec<Option<usize>> = (0..bags.len()).map(|i| (i + 1 < bags.len()).then_some(i + 1)).collect();
            let nd = from_tree_decomposition(inst, &bags, &parent, &[]).unwrap();
            validate_nice_decomposition(inst, &nd).unwrap();
            assert!(nd.width <= 2);

            let n = items.sizes.len();
            if 3 * n < 12 {
                let paths = enumerate_simple_paths(inst).unwrap();
                assert_eq!(paths.len(), 1 << n);
                assert!(paths.iter().all(|p| p.vertices.len() == 2 * n + 1));
            }
        }
    }
}

#[test]
fn ladder_example() {
    let items = KnapsackItems { sizes: vec![2, 3], values: vec![3, 4], capacity: 5, target: 7 };
    let out = reduce_knapsack_to_path_gadget(&items, Variant::Path).unwrap();
    let r = solve_path_treewidth_with(&out.instance, 0).unwrap();
    assert!(r.feasible);
    assert_eq!(r.witness, Some(vec![0, 1, 2, 3, 4]));
    let too_much = KnapsackItems { target: 8, ..items };
    let out = reduce_knapsack_to_path_gadget(&too_much, Variant::Path).unwrap();
    assert!(!solve_path_treewidth_with(&out.instance, 0).unwrap().feasible);
}

#[test]
fn hamiltonian_examples() {
    let p3 = SimpleGraph { n: 3, edges: vec![(0, 1), (1, 2)] };
    let star = SimpleGraph { n: 4, edges: vec![(0, 1), (0, 2), (0, 3)] };
    let k4 = SimpleGraph { n: 4, edges: vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)] };
    let solve = |g: &SimpleGraph, x, y| {
        solve_path_treewidth_with(&reduce_hamiltonian_to_path(g, x, y).unwrap().instance, 0).unwrap().feasible
    };
    assert!(solve(&p3, 0, 2));
    assert!(!solve(&star, 1, 2));
    for x in 0..4 {
        for y in 0..4 {
            if x != y {
                assert!(solve(&k4, x, y));
            }
        }
    }
}
