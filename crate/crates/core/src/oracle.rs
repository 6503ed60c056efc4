//! Brute-force reference solvers for small instances.

use crate::model::graph::induces_connected;
use crate::model::{Instance, Pair, ParetoSet};
use thiserror::Error;

pub const MAX_CONNECTED_N: usize = 20;
pub const MAX_PATH_N: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("instance has {n} vertices, the oracle accepts at most {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("y is not reachable from x")]
    Unreachable,
}

fn guard(inst: &Instance, limit: usize) -> Result<(), OracleError> {
    if inst.n() > limit {
        Err(OracleError::TooLarge { n: inst.n(), limit })
    } else {
        Ok(())
    }
}

/// Frontier over every connected vertex subset (the empty set included) with weight at most `s`.
pub fn enumerate_connected_subsets_opt(inst: &Instance) -> Result<ParetoSet, OracleError> {
    guard(inst, MAX_CONNECTED_N)?;
    let n = inst.n();
    let mut frontier = ParetoSet::new();
    let mut members = vec![false; n];
    for mask in 0u32..(1u32 << n) {
        for (u, m) in members.iter_mut().enumerate() {
            *m = mask >> u & 1 == 1;
        }
        let (w, a) =
            (0..n).filter(|&u| members[u]).fold((0u64, 0u64), |(w, a), u| (w + inst.weight(u), a + inst.value(u)));
        if w <= inst.s() && induces_connected(inst, &members) {
            frontier.insert_in_place(Pair::new(w, a), inst.s());
        }
    }
    Ok(frontier)
}

/// A simple `x`–`y` path as its vertex sequence together with its edge cost.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplePath {
    pub vertices: Vec<usize>,
    pub cost: u64,
}

/// Every simple `x`–`y` path, in DFS order (neighbours by increasing id).
pub fn enumerate_simple_paths(inst: &Instance) -> Result<Vec<SimplePath>, OracleError> {
    guard(inst, MAX_PATH_N)?;
    let (x, y) = inst.terminals().expect("path variants carry terminals");
    let mut out = Vec::new();
    if x == y {
        out.push(SimplePath { vertices: vec![x], cost: 0 });
        return Ok(out);
    }
    let mut on_path = vec![false; inst.n()];
    let mut stack = vec![x];
    on_path[x] = true;
    extend(inst, y, &mut on_path, &mut stack, 0, &mut out);
    Ok(out)
}

fn extend(
    inst: &Instance,
    y: usize,
    on_path: &mut [bool],
    stack: &mut Vec<usize>,
    cost: u64,
    out: &mut Vec<SimplePath>,
) {
    let u = *stack.last().expect("nonempty");
    for &(v, e) in inst.incident(u) {
        if on_path[v] {
            continue;
        }
        let c = cost + inst.edge_cost(e);
        stack.push(v);
        if v == y {
            out.push(SimplePath { vertices: stack.clone(), cost: c });
        } else {
            on_path[v] = true;
            extend(inst, y, on_path, stack, c, out);
            on_path[v] = false;
        }
        stack.pop();
    }
}

fn frontier_of<'a>(inst: &Instance, paths: impl IntoIterator<Item = &'a SimplePath>) -> ParetoSet {
    ParetoSet::from_pairs(
        paths.into_iter().map(|p| Pair::new(inst.weight_of(&p.vertices), inst.value_of(&p.vertices))),
        inst.s(),
    )
}

/// Frontier over every simple `x`–`y` path with weight at most `s`.
pub fn enumerate_paths_opt(inst: &Instance) -> Result<ParetoSet, OracleError> {
    Ok(frontier_of(inst, &enumerate_simple_paths(inst)?))
}

/// Frontier over the minimum-cost simple `x`–`y` paths with weight at most `s`.
pub fn enumerate_shortest_paths_opt(inst: &Instance) -> Result<ParetoSet, OracleError> {
    let paths = enumerate_simple_paths(inst)?;
    let best = paths.iter().map(|p| p.cost).min().ok_or(OracleError::Unreachable)?;
    Ok(frontier_of(inst, paths.iter().filter(|p| p.cost == best)))
}

/// Vertex set of some path realising `pair` (the first one in DFS order), for witness output.
pub fn path_witness(inst: &Instance, pair: Pair, shortest_only: bool) -> Result<Option<Vec<usize>>, OracleError> {
    let paths = enumerate_simple_paths(inst)?;
    let best = paths.iter().map(|p| p.cost).min();
    Ok(paths
        .into_iter()
        .filter(|p| !shortest_only || Some(p.cost) == best)
        .find(|p| inst.weight_of(&p.vertices) == pair.weight && inst.value_of(&p.vertices) == pair.value)
        .map(|p| p.vertices))
}

/// Lowest-mask connected subset realising `pair`.
pub fn connected_witness(inst: &Instance, pair: Pair) -> Result<Option<Vec<usize>>, OracleError> {
    guard(inst, MAX_CONNECTED_N)?;
    let n = inst.n();
    let mut members = vec![false; n];
    for mask in 0u32..(1u32 << n) {
        for (u, m) in members.iter_mut().enumerate() {
            *m = mask >> u & 1 == 1;
        }
        let set: Vec<usize> = (0..n).filter(|&u| members[u]).collect();
        if inst.weight_of(&set) == pair.weight && inst.value_of(&set) == pair.value && induces_connected(inst, &members)
        {
            return Ok(Some(set));
        }
    }
    Ok(None)
}

/// Some set of at most `k` vertices touches every edge.
pub fn vertex_cover_exists(n: usize, edges: &[(usize, usize)], k: u64) -> bool {
    partial_vertex_cover_exists(n, edges, k, edges.len() as u64)
}

/// Some set of at most `k` vertices touches at least `l` edges.
pub fn partial_vertex_cover_exists(n: usize, edges: &[(usize, usize)], k: u64, l: u64) -> bool {
    assert!(n <= MAX_CONNECTED_N);
    (0u32..1 << n).any(|mask| {
        mask.count_ones() as u64 <= k
            && edges.iter().filter(|&&(u, v)| mask >> u & 1 == 1 || mask >> v & 1 == 1).count() as u64 >= l
    })
}

/// Some simple `x`–`y` path visits all `n` vertices.
pub fn hamiltonian_path_exists(n: usize, edges: &[(usize, usize)], x: usize, y: usize) -> bool {
    assert!(n <= MAX_PATH_N);
    let mut adj = vec![0u32; n];
    for &(u, v) in edges {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    // reach[mask][v]: a path from x covering exactly `mask` ends at v
    let full = (1usize << n) - 1;
    let mut reach = vec![0u32; 1 << n];
    reach[1 << x] = 1 << x;
    for mask in 1..=full {
        let ends = reach[mask];
        if ends == 0 {
            continue;
        }
        for v in (0..n).filter(|&v| ends >> v & 1 == 1) {
            let mut next = adj[v] & !(mask as u32);
            while next != 0 {
                let u = next.trailing_zeros() as usize;
                next &= next - 1;
                reach[mask | 1 << u] |= 1 << u;
            }
        }
    }
    reach[full] >> y & 1 == 1
}

/// Some item subset fits in `capacity` and reaches `target`.
pub fn knapsack_exists(sizes: &[u64], values: &[u64], capacity: u64, target: u64) -> bool {
    assert!(sizes.len() <= MAX_CONNECTED_N && sizes.len() == values.len());
    (0u32..1 << sizes.len()).any(|mask| {
        let pick = |xs: &[u64]| xs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x).sum::<u64>();
        pick(sizes) <= capacity && pick(values) >= target
    })
}
