//! Shortest-Path Knapsack by a label-setting Dijkstra that carries, for every
//! vertex, the Pareto frontier over all shortest paths from `x`.

use crate::model::{retain_undominated, Instance, Pair, ParetoSet, SolveReport, SolveStats, Variant};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::time::Instant;

#[derive(Clone, Copy, Debug)]
struct Label {
    pair: Pair,
    pred: u32,
    pred_idx: u32,
}

const NO_PRED: u32 = u32::MAX;

/// Snapshot of the search: settled flags, tentative distances and frontiers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelState {
    pub settled: Vec<bool>,
    pub dist: Vec<Option<u64>>,
    pub labels: Vec<ParetoSet>,
}

struct Search<'a> {
    inst: &'a Instance,
    settled: Vec<bool>,
    dist: Vec<Option<u64>>,
    labels: Vec<Vec<Label>>,
}

impl Search<'_> {
    fn snapshot(&self) -> LabelState {
        LabelState {
            settled: self.settled.clone(),
            dist: self.dist.clone(),
            labels: self.labels.iter().map(|ls| ParetoSet::from_pairs(ls.iter().map(|l| l.pair), u64::MAX)).collect(),
        }
    }

    fn path(&self, mut v: usize, mut idx: usize) -> Vec<usize> {
        let mut out = vec![v];
        while self.labels[v][idx].pred != NO_PRED {
            let l = self.labels[v][idx];
            v = l.pred as usize;
            idx = l.pred_idx as usize;
            out.push(v);
        }
        out
    }
}

/// Tie-breaking rank among vertices at equal distance: vertex id for seed 0,
/// otherwise a seeded random permutation.
fn tie_ranks(n: usize, seed: u64) -> Vec<usize> {
    let mut ranks: Vec<usize> = (0..n).collect();
    if seed != 0 {
        ranks.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    ranks
}

pub fn solve_shortest_path(inst: &Instance) -> SolveReport {
    run(inst, 0, None).0
}

/// `seed` only reorders vertices settled at equal distance.
pub fn solve_shortest_path_seeded(inst: &Instance, seed: u64) -> (SolveReport, LabelState) {
    run(inst, seed, None)
}

/// Like [`solve_shortest_path_seeded`], calling `on_settle(z, state)` after
/// vertex `z` is settled and its neighbours relaxed.
pub fn solve_shortest_path_traced<F>(inst: &Instance, seed: u64, mut on_settle: F) -> (SolveReport, LabelState)
where
    F: FnMut(usize, &LabelState),
{
    run(inst, seed, Some(&mut on_settle))
}

type SettleHook<'h> = Option<&'h mut dyn FnMut(usize, &LabelState)>;

fn run(inst: &Instance, seed: u64, mut on_settle: SettleHook<'_>) -> (SolveReport, LabelState) {
    assert_eq!(inst.variant(), Variant::ShortestPath, "labels solver needs a shortest_path instance");
    let started = Instant::now();
    let (x, y) = inst.terminals().expect("validated shortest_path instance");
    let n = inst.n();
    let ranks = tie_ranks(n, seed);
    let mut search = Search { inst, settled: vec![false; n], dist: vec![None; n], labels: vec![Vec::new(); n] };
    let mut stats = SolveStats::new("labels");

    search.dist[x] = Some(0);
    let start = Pair::new(inst.weight(x), inst.value(x));
    if start.weight <= inst.s() {
        search.labels[x].push(Label { pair: start, pred: NO_PRED, pred_idx: 0 });
    }
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u64, ranks[x], x)));

    while let Some(Reverse((d, _, z))) = heap.pop() {
        if search.settled[z] || search.dist[z] != Some(d) {
            continue;
        }
        search.settled[z] = true;
        stats.nodes_expanded += 1;
        for &(u, e) in inst.incident(z) {
            if search.settled[u] {
                continue;
            }
            let through = d + search.inst.edge_cost(e);
            match search.dist[u] {
                Some(cur) if cur < through => continue,
                Some(cur) if cur == through => {}
                _ => {
                    search.dist[u] = Some(through);
                    search.labels[u].clear();
                    heap.push(Reverse((through, ranks[u], u)));
                }
            }
            let (wu, au) = (inst.weight(u), inst.value(u));
            let extended: Vec<Label> = search.labels[z]
                .iter()
                .enumerate()
                .map(|(i, l)| Label { pair: l.pair.add(wu, au), pred: z as u32, pred_idx: i as u32 })
                .filter(|l| l.pair.weight <= inst.s())
                .collect();
            stats.states_touched += extended.len() as u64;
            let cell = &mut search.labels[u];
            cell.extend(extended);
            retain_undominated(cell, |l| l.pair);
        }
        if let Some(hook) = on_settle.as_mut() {
            hook(z, &search.snapshot());
        }
    }

    stats.set_wall_time(started.elapsed());
    let final_state = search.snapshot();
    if search.dist[y].is_none() {
        stats.unreachable = true;
        return (SolveReport::infeasible(stats), final_state);
    }
    let frontier = final_state.labels[y].clone();
    let report = SolveReport::from_frontier(inst, frontier, stats, |pair| {
        let idx = search.labels[y].iter().position(|l| l.pair == pair).expect("pair present at y");
        search.path(y, idx)
    });
    (report, final_state)
}
