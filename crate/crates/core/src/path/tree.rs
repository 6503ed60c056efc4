use super::PathError;
use crate::model::graph::bfs_parents;
use crate::model::{Instance, Pair, ParetoSet, SolveReport, SolveStats};
use std::time::Instant;

/// On a forest there is at most one `x`–`y` path; walk it from the BFS tree.
pub fn solve_path_tree(inst: &Instance) -> Result<SolveReport, PathError> {
    let started = Instant::now();
    let (x, y) = inst.terminals().ok_or(PathError::NoTerminals)?;
    if !inst.is_forest() {
        return Err(PathError::NotATree);
    }
    let parents = bfs_parents(inst, x);
    let mut path = vec![y];
    let mut cur = y;
    while cur != x {
        cur = parents[cur].ok_or(PathError::NoPath)?;
        path.push(cur);
    }
    let pair = Pair::new(inst.weight_of(&path), inst.value_of(&path));
    let frontier = ParetoSet::singleton(pair, inst.s());
    let mut stats = SolveStats::new("tree");
    stats.nodes_expanded = inst.n() as u64;
    stats.states_touched = path.len() as u64;
    stats.set_wall_time(started.elapsed());
    Ok(SolveReport::from_frontier(inst, frontier, stats, |_| path))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{InstanceBuilder, Variant};

    fn abc(s: u64) -> Instance {
        InstanceBuilder::new(Variant::Path, 3)
            .edges([(0, 1), (1, 2)])
            .weights(vec![1, 1, 1])
            .values(vec![1, 1, 1])
            .terminals(0, 2)
            .capacity(s)
            .target(3)
            .build()
            .unwrap()
    }

    #[test]
    fn unique_path() {
        let r = solve_path_tree(&abc(3)).unwrap();
        assert!(r.feasible);
        assert_eq!(r.witness, Some(vec![0, 1, 2]));
        let r = solve_path_tree(&abc(2)).unwrap();
        assert!(!r.feasible);
        assert!(r.frontier.is_empty());
    }

    #[test]
    fn star_leaves() {
        let inst = InstanceBuilder::new(Variant::Path, 4)
            .edges([(0, 1), (0, 2), (0, 3)])
            .terminals(1, 2)
            .capacity(0)
            .build()
            .unwrap();
        assert_eq!(solve_path_tree(&inst).unwrap().witness, Some(vec![0, 1, 2]));
    }

    #[test]
    fn errors() {
        let cyc = InstanceBuilder::new(Variant::Path, 3)
            .edges([(0, 1), (1, 2), (0, 2)])
            .terminals(0, 2)
            .capacity(3)
            .build()
            .unwrap();
        assert_eq!(solve_path_tree(&cyc), Err(PathError::NotATree));
        let split = InstanceBuilder::new(Variant::Path, 3).edge(0, 1).terminals(0, 2).capacity(3).build().unwrap();
        assert_eq!(solve_path_tree(&split), Err(PathError::NoPath));
    }
}
