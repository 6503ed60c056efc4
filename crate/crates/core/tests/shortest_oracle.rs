use graph_knapsack::generate::{random_instance, GraphFamily, RandomSpec};
use graph_knapsack::model::graph::shortest_distances;
use graph_knapsack::oracle::{enumerate_shortest_paths_opt, OracleError};
use graph_knapsack::shortest::{solve_shortest_path, solve_shortest_path_seeded, solve_shortest_path_traced};
use graph_knapsack::{verify_solution, Variant};
use proptest::prelude::*;

fn family() -> impl Strategy<Value = GraphFamily> {
    prop_oneof![
        Just(GraphFamily::Tree),
        Just(GraphFamily::Gnp(0.3)),
        Just(GraphFamily::Gnp(0.6)),
        Just(GraphFamily::Grid),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn frontier_matches_enumeration(fam in family(), n in 1usize..=11, s in 0u64..=30, seed in any::<u64>()) {
        let mut spec = RandomSpec::new(fam, Variant::ShortestPath, n);
        spec.s = Some(s);
        let inst = random_instance(&spec, seed);
        let report = solve_shortest_path(&inst);
        match enumerate_shortest_paths_opt(&inst) {
            Ok(truth) => prop_assert_eq!(&report.frontier, &truth),
            Err(OracleError::Unreachable) => {
                prop_assert!(report.stats.unreachable);
                prop_assert!(report.frontier.is_empty());
            }
            Err(e) => panic!("{e}"),
        }
        if let Some(w) = &report.witness {
            prop_assert!(verify_solution(&inst, w).ok);
        }
    }

    #[test]
    fn distances_match_plain_dijkstra(fam in family(), n in 1usize..=12, seed in any::<u64>(), tie in any::<u64>()) {
        let inst = random_instance(&RandomSpec::new(fam, Variant::ShortestPath, n), seed);
        let (x, _) = inst.terminals().unwrap();
        let (report, state) = solve_shortest_path_seeded(&inst, tie);
        prop_assert_eq!(state.dist, shortest_distances(&inst, x));
        prop_assert_eq!(report.frontier, solve_shortest_path(&inst).frontier);
    }

    #[test]
    fn settled_frontiers_are_final(fam in family(), n in 1usize..=8, seed in any::<u64>()) {
        let mut spec = RandomSpec::new(fam, Variant::ShortestPath, n);
        spec.s = Some(25);
        let inst = random_instance(&spec, seed);
        let (x, _) = inst.terminals().unwrap();
        let mut checks = 0;
        solve_shortest_path_traced(&inst, 0, |_, state| {
            for v in (0..inst.n()).filter(|&v| state.settled[v]) {
                let truth = enumerate_shortest_paths_opt(&inst.with_terminals(x, v)).unwrap();
                assert_eq!(state.labels[v], truth, "vertex {v}");
                assert!(state.labels[v].is_canonical());
                checks += 1;
            }
        });
        prop_assert!(checks >= 1);
    }
}
