//! Small graph routines shared by verification, solvers and tests.

use super::Instance;
use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

/// Plain single-criterion Dijkstra from `source` using the instance's edge costs.
/// `None` marks unreachable vertices.
pub fn shortest_distances(inst: &Instance, source: usize) -> Vec<Option<u64>> {
    let mut dist: Vec<Option<u64>> = vec![None; inst.n()];
    let mut heap = BinaryHeap::new();
    dist[source] = Some(0);
    heap.push(Reverse((0u64, source)));
    while let Some(Reverse((d, u))) = heap.pop() {
        if dist[u] != Some(d) {
            continue;
        }
        for &(v, e) in inst.incident(u) {
            let nd = d + inst.edge_cost(e);
            if dist[v].is_none_or(|old| nd < old) {
                dist[v] = Some(nd);
                heap.push(Reverse((nd, v)));
            }
        }
    }
    dist
}

/// BFS parents from `source`; `parent[source] == Some(source)`.
pub fn bfs_parents(inst: &Instance, source: usize) -> Vec<Option<usize>> {
    let mut parent = vec![None; inst.n()];
    parent[source] = Some(source);
    let mut queue = VecDeque::from([source]);
    while let Some(u) = queue.pop_front() {
        for v in inst.neighbors(u) {
            if parent[v].is_none() {
                parent[v] = Some(u);
                queue.push_back(v);
            }
        }
    }
    parent
}

/// Whether `set` (membership mask) induces a connected subgraph. The empty set counts as connected.
pub fn induces_connected(inst: &Instance, members: &[bool]) -> bool {
    let Some(start) = members.iter().position(|&m| m) else {
        return true;
    };
    let mut seen = vec![false; inst.n()];
    seen[start] = true;
    let mut stack = vec![start];
    let mut count = 1;
    while let Some(u) = stack.pop() {
        for v in inst.neighbors(u) {
            if members[v] && !seen[v] {
                seen[v] = true;
                count += 1;
                stack.push(v);
            }
        }
    }
    count == members.iter().filter(|&&m| m).count()
}

/// Finds an ordering of `members` forming a simple path from `x` to `y` in the induced subgraph.
pub fn hamiltonian_path(inst: &Instance, members: &[bool], x: usize, y: usize) -> Option<Vec<usize>> {
    let total = members.iter().filter(|&&m| m).count();
    if !members[x] || !members[y] {
        return None;
    }
    if x == y {
        return (total == 1).then(|| vec![x]);
    }
    let mut on_path = vec![false; inst.n()];
    let mut path = vec![x];
    on_path[x] = true;

    fn extend(
        inst: &Instance,
        members: &[bool],
        y: usize,
        total: usize,
        on_path: &mut [bool],
        path: &mut Vec<usize>,
    ) -> bool {
        let last = *path.last().unwrap();
        if last == y {
            return path.len() == total;
        }
        for v in inst.neighbors(last) {
            if members[v] && !on_path[v] && (v != y || path.len() + 1 == total) {
                on_path[v] = true;
                path.push(v);
                if extend(inst, members, y, total, on_path, path) {
                    return true;
                }
                path.pop();
                on_path[v] = false;
            }
        }
        false
    }

    extend(inst, members, y, total, &mut on_path, &mut path).then_some(path)
}
