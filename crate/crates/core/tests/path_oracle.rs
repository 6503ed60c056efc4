use graph_knapsack::generate::{random_instance, GraphFamily, RandomSpec};
use graph_knapsack::oracle::enumerate_paths_opt;
use graph_knapsack::path::{solve_path_color_coding, solve_path_tree, solve_path_treewidth_with};
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
    fn treewidth_matches_enumeration(fam in family(), n in 1usize..=9, s in 0u64..=30, seed in any::<u64>()) {
        let mut spec = RandomSpec::new(fam, Variant::Path, n);
        spec.s = Some(s);
        let inst = random_instance(&spec, seed);
        let report = solve_path_treewidth_with(&inst, 0).unwrap();
        prop_assert_eq!(&report.frontier, &enumerate_paths_opt(&inst).unwrap());
        if let Some(w) = &report.witness {
            let check = verify_solution(&inst, w);
            prop_assert!(check.ok, "{:?}", check);
            prop_assert_eq!(Some(check.value), report.best_value);
        }
    }

    #[test]
    fn solvers_agree_on_trees(n in 1usize..=9, s in 0u64..=30, seed in any::<u64>()) {
        let mut spec = RandomSpec::new(GraphFamily::Tree, Variant::Path, n);
        spec.s = Some(s);
        let inst = random_instance(&spec, seed);
        let tree = solve_path_tree(&inst).unwrap();
        let tw = solve_path_treewidth_with(&inst, 0).unwrap();
        prop_assert_eq!(&tree.frontier, &tw.frontier);
        let len = tree.witness.as_ref().map(Vec::len);
        if let Some(k) = len {
            let color = solve_path_color_coding(&inst, k, 200, seed).unwrap();
            prop_assert_eq!(&color.frontier, &tw.frontier);
        }
    }

    #[test]
    fn color_coding_witnesses_verify(fam in family(), n in 2usize..=8, k in 1usize..=6, seed in any::<u64>()) {
        let mut spec = RandomSpec::new(fam, Variant::Path, n);
        spec.s = Some(40);
        let inst = random_instance(&spec, seed);
        let k = k.min(n);
        let report = solve_path_color_coding(&inst, k, 20, seed).unwrap();
        if let Some(w) = &report.witness {
            prop_assert_eq!(w.len(), k);
            prop_assert!(verify_solution(&inst, w).ok);
        }
        // everything found is a genuine path frontier pair or dominated by one
        let truth = enumerate_paths_opt(&inst).unwrap();
        for p in report.frontier.iter() {
            prop_assert!(truth.iter().any(|t| t == p || t.dominates(p)));
        }
    }
}
