//! Exact Connected Knapsack over a nice tree decomposition.
//!
//! For a guessed vertex `v` pinned into every bag, a state at node `t` is a
//! partition of the bag: label 0 marks vertices outside the partial solution,
//! labels `1..` mark which bag vertices share a connected component of the
//! partial solution inside the subtree below `t`. Each state keeps the Pareto
//! frontier of `(weight, value)` over all partial solutions tracing it.

use crate::decomposition::{
    build_nice_decomposition, elimination_order_minfill, DecompositionError, NiceDecomposition,
};
use crate::dp::{self, Labels, Rules, Tables};
use crate::model::{Instance, Pair, ParetoSet, SolveReport, SolveStats, Variant};
use std::collections::BTreeMap;
use std::time::Instant;

/// Options for [`solve_connected_with`].
#[derive(Clone, Copy, Debug, Default)]
pub struct ConnectedOptions {
    /// Seed for the elimination ordering (0 = lowest-id tie-breaking).
    pub seed: u64,
    /// Restrict join nodes to identical child partitions. This is incomplete
    /// (it misses solutions whose components split differently in the two
    /// subtrees) and exists only for comparison.
    pub identical_join_only: bool,
}

/// Relabels blocks by order of first appearance; 0 (outside) is kept.
pub fn canonicalize(labels: &mut [u8]) {
    let mut map = [0u8; 256];
    let mut next = 1u8;
    for l in labels.iter_mut() {
        if *l == 0 {
            continue;
        }
        if map[*l as usize] == 0 {
            map[*l as usize] = next;
            next += 1;
        }
        *l = map[*l as usize];
    }
}

/// Finest partition coarser than both labellings (which must agree on label 0).
pub fn merge_partitions(a: &[u8], b: &[u8]) -> Labels {
    let k = a.len();
    let mut parent: Vec<usize> = (0..k).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for labels in [a, b] {
        let mut first = [usize::MAX; 256];
        for (i, &l) in labels.iter().enumerate().take(k) {
            let l = l as usize;
            if l == 0 {
                continue;
            }
            if first[l] == usize::MAX {
                first[l] = i;
            } else {
                let (ra, rb) = (find(&mut parent, first[l]), find(&mut parent, i));
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
    }
    let mut out: Labels = (0..k).map(|i| if a[i] == 0 { 0 } else { (find(&mut parent, i) + 1) as u8 }).collect();
    canonicalize(&mut out);
    out
}

struct PartitionRules {
    identical_join_only: bool,
}

impl Rules for PartitionRules {
    fn leaf(&self, bag: &[usize]) -> Vec<Labels> {
        // The pinned vertex always belongs to the solution.
        vec![vec![1; bag.len()]]
    }

    fn introduce_vertex(&self, labels: &[u8], pos: usize, _bag: &[usize]) -> Vec<Labels> {
        let mut outside = labels.to_vec();
        outside.insert(pos, 0);
        let mut inside = labels.to_vec();
        inside.insert(pos, u8::MAX);
        canonicalize(&mut inside);
        vec![outside, inside]
    }

    fn introduce_edge(&self, labels: &[u8], a: usize, b: usize, _bag: &[usize]) -> Vec<Labels> {
        let (la, lb) = (labels[a], labels[b]);
        let mut next = labels.to_vec();
        if la != 0 && lb != 0 && la != lb {
            for l in next.iter_mut() {
                if *l == lb {
                    *l = la;
                }
            }
            canonicalize(&mut next);
        }
        vec![next]
    }

    fn forget(&self, labels: &[u8], pos: usize, _child_bag: &[usize]) -> Option<Labels> {
        let l = labels[pos];
        // A component whose last bag vertex is forgotten can never reach the pinned vertex.
        if l != 0 && labels.iter().filter(|&&m| m == l).count() == 1 {
            return None;
        }
        let mut next = labels.to_vec();
        next.remove(pos);
        canonicalize(&mut next);
        Some(next)
    }

    fn join(&self, left: &[u8], right: &[u8], _bag: &[usize]) -> Option<Labels> {
        if self.identical_join_only && left != right {
            return None;
        }
        Some(merge_partitions(left, right))
    }

    fn accept(&self, labels: &[u8], _bag: &[usize]) -> bool {
        labels == [1]
    }
}

/// Runs the DP for solutions containing `root`; `nd` must be pinned at `{root}`.
pub fn solve_connected_rooted_tables<'a>(
    inst: &'a Instance,
    root: usize,
    nd: &'a NiceDecomposition,
    identical_join_only: bool,
) -> Tables<'a> {
    assert_eq!(nd.pinned, vec![root], "decomposition must be pinned at the rooted vertex");
    dp::run(inst, nd, &PartitionRules { identical_join_only })
}

/// Frontier over connected vertex sets containing `root` with weight at most `s`.
pub fn solve_connected_rooted(inst: &Instance, root: usize, nd: &NiceDecomposition) -> ParetoSet {
    solve_connected_rooted_tables(inst, root, nd, false).frontier()
}

/// Exact Connected Knapsack: union of the rooted frontiers over every vertex, plus the empty set.
pub fn solve_connected(inst: &Instance) -> SolveReport {
    solve_connected_with(inst, ConnectedOptions::default()).expect("single pinned vertex is always accepted")
}

pub fn solve_connected_with(inst: &Instance, opts: ConnectedOptions) -> Result<SolveReport, DecompositionError> {
    assert_eq!(inst.variant(), Variant::Connected, "solve_connected needs a connected instance");
    let started = Instant::now();
    let order = elimination_order_minfill(inst, opts.seed);
    let mut stats = SolveStats::new("treewidth");
    let mut frontier = ParetoSet::singleton(Pair::ZERO, inst.s());
    // Root that first produced each frontier pair.
    let mut origin: BTreeMap<Pair, usize> = BTreeMap::new();
    let mut width = 0;
    let mut decompositions = Vec::with_capacity(inst.n());
    for v in 0..inst.n() {
        let nd = build_nice_decomposition(inst, &order, &[v])?;
        width = width.max(nd.width);
        let tables = solve_connected_rooted_tables(inst, v, &nd, opts.identical_join_only);
        stats.nodes_expanded += nd.nodes.len() as u64;
        stats.states_touched += tables.states_touched;
        for pair in tables.frontier().iter() {
            if frontier.insert_in_place(*pair, inst.s()) {
                origin.entry(*pair).or_insert(v);
            }
        }
        decompositions.push(nd);
    }
    stats.width = Some(width);
    stats.set_wall_time(started.elapsed());
    Ok(SolveReport::from_frontier(inst, frontier, stats, |pair| {
        if pair == Pair::ZERO && !origin.contains_key(&pair) {
            return Vec::new();
        }
        let v = origin[&pair];
        let tables = solve_connected_rooted_tables(inst, v, &decompositions[v], opts.identical_join_only);
        tables.reconstruct(pair).expect("frontier pair is realised at its root")
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::validate_nice_decomposition;
    use crate::model::{verify_solution, InstanceBuilder};

    fn rooted(inst: &Instance, v: usize) -> ParetoSet {
        let order = elimination_order_minfill(inst, 0);
        let nd = build_nice_decomposition(inst, &order, &[v]).unwrap();
        validate_nice_decomposition(inst, &nd).unwrap();
        solve_connected_rooted(inst, v, &nd)
    }

    fn set(pairs: &[(u64, u64)]) -> ParetoSet {
        ParetoSet::from_pairs(pairs.iter().map(|&p| p.into()), u64::MAX)
    }

    fn abc(s: u64) -> InstanceBuilder {
        InstanceBuilder::new(Variant::Connected, 3)
            .edges([(0, 1), (1, 2)])
            .weights(vec![1, 5, 1])
            .values(vec![2, 1, 2])
            .capacity(s)
    }

    #[test]
    fn canonical_labels() {
        let mut l = vec![3, 0, 1, 3, 2];
        canonicalize(&mut l);
        assert_eq!(l, vec![1, 0, 2, 1, 3]);
        assert_eq!(merge_partitions(&[1, 2, 0, 3], &[1, 1, 0, 2]), vec![1, 1, 0, 2]);
        assert_eq!(merge_partitions(&[1, 2, 0, 2], &[1, 2, 0, 1]), vec![1, 1, 0, 1]);
    }

    #[test]
    fn single_vertex_rooted() {
        let inst =
            InstanceBuilder::new(Variant::Connected, 1).weights(vec![2]).values(vec![7]).capacity(2).build().unwrap();
        assert_eq!(rooted(&inst, 0), set(&[(2, 7)]));
    }

    #[test]
    fn rooted_path_with_heavy_middle() {
        // connected supersets of a: {a}, {a,b}, {a,b,c}; only {a} fits s=2
        assert_eq!(rooted(&abc(2).build().unwrap(), 0), set(&[(1, 2)]));
    }

    #[test]
    fn rooted_triangle() {
        let inst = InstanceBuilder::new(Variant::Connected, 3)
            .edges([(0, 1), (1, 2), (0, 2)])
            .weights(vec![1, 1, 1])
            .values(vec![1, 2, 3])
            .capacity(2)
            .build()
            .unwrap();
        assert_eq!(rooted(&inst, 0), set(&[(1, 1), (2, 4)]));
    }

    #[test]
    fn whole_path_fits() {
        let inst = abc(7).target(5).build().unwrap();
        let report = solve_connected(&inst);
        assert!(report.feasible);
        assert_eq!(report.best_value, Some(5));
        assert_eq!(report.witness, Some(vec![0, 1, 2]));
    }

    #[test]
    fn endpoints_alone_are_disconnected() {
        let inst = abc(2).target(4).build().unwrap();
        let report = solve_connected(&inst);
        assert!(!report.feasible);
        assert_eq!(report.witness, None);
        assert_eq!(report.best_value, Some(2));
    }

    #[test]
    fn zero_target_is_met_by_the_empty_set() {
        let inst = abc(0).target(0).build().unwrap();
        let report = solve_connected(&inst);
        assert!(report.feasible);
        assert_eq!(report.witness, Some(vec![]));
        assert_eq!(report.frontier, set(&[(0, 0)]));
    }

    #[test]
    fn general_join_finds_split_components() {
        // 4-cycle 0-1-2-3-0 with 0 pinned: the solution {0,1,2,3} minus nothing,
        // and {1,0,3} etc. A cycle forces joins where components split per side.
        let inst = InstanceBuilder::new(Variant::Connected, 6)
            .edges([(0, 1), (1, 2), (2, 3), (3, 0), (1, 4), (4, 5), (5, 3)])
            .weights(vec![1, 1, 1, 1, 1, 1])
            .values(vec![1, 1, 1, 1, 1, 1])
            .capacity(6)
            .build()
            .unwrap();
        let report = solve_connected(&inst);
        assert_eq!(report.best_value, Some(6));
        let w = report.witness.unwrap();
        assert!(verify_solution(&inst, &w).ok);
    }
}
