use super::PathError;
use crate::model::{retain_undominated, Instance, Pair, ParetoSet, SolveReport, SolveStats};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::time::Instant;

/// Largest supported palette; tables hold `2^k · n` cells.
pub const MAX_PALETTE: usize = 16;

/// `⌈3·e^k⌉` trials.
pub fn default_trials(k: usize) -> u64 {
    (3.0 * (k as f64).exp()).ceil() as u64
}

#[derive(Clone, Copy, Debug)]
struct Entry {
    pair: Pair,
    pred: u32,
    pred_entry: u32,
}

const NO_PRED: u32 = u32::MAX;

/// Frontiers of colourful paths from `x`: cell `(S, v)` holds the undominated
/// pairs over paths from `x` to `v` using exactly one vertex of each colour in `S`.
pub struct ColorTable {
    n: usize,
    coloring: Vec<u8>,
    cells: Vec<Vec<Entry>>,
}

impl ColorTable {
    pub fn coloring(&self) -> &[u8] {
        &self.coloring
    }

    pub fn path(&self, colors: u32, v: usize) -> bool {
        !self.cells[colors as usize * self.n + v].is_empty()
    }

    pub fn cell(&self, colors: u32, v: usize) -> ParetoSet {
        ParetoSet::from_pairs(self.cells[colors as usize * self.n + v].iter().map(|e| e.pair), u64::MAX)
    }

    /// Vertices of the path behind entry `idx` of cell `(colors, v)`, from `x` to `v`.
    fn walk(&self, mut colors: u32, mut v: usize, mut idx: usize) -> Vec<usize> {
        let mut out = vec![v];
        loop {
            let e = self.cells[colors as usize * self.n + v][idx];
            if e.pred == NO_PRED {
                break;
            }
            colors &= !(1u32 << self.coloring[v]);
            v = e.pred as usize;
            idx = e.pred_entry as usize;
            out.push(v);
        }
        out.reverse();
        out
    }
}

/// Fills the table for a fixed colouring with `k` colours.
pub fn color_table(inst: &Instance, k: usize, coloring: &[u8]) -> ColorTable {
    let n = inst.n();
    assert_eq!(coloring.len(), n);
    assert!((1..=MAX_PALETTE).contains(&k) && coloring.iter().all(|&c| (c as usize) < k));
    let (x, _) = inst.terminals().expect("path instance");
    let full = 1usize << k;
    let mut cells: Vec<Vec<Entry>> = vec![Vec::new(); full * n];
    let start = Pair::new(inst.weight(x), inst.value(x));
    if start.weight <= inst.s() {
        cells[(1usize << coloring[x]) * n + x].push(Entry { pair: start, pred: NO_PRED, pred_entry: 0 });
    }
    let x_bit = 1usize << coloring[x];
    for colors in 1..full {
        if colors & x_bit == 0 || colors.count_ones() < 2 {
            continue;
        }
        for v in 0..n {
            let bit = 1usize << coloring[v];
            if colors & bit == 0 || v == x {
                continue;
            }
            let prev = colors & !bit;
            let mut entries = Vec::new();
            for u in inst.neighbors(v) {
                for (i, e) in cells[prev * n + u].iter().enumerate() {
                    let pair = e.pair.add(inst.weight(v), inst.value(v));
                    if pair.weight <= inst.s() {
                        entries.push(Entry { pair, pred: u as u32, pred_entry: i as u32 });
                    }
                }
            }
            retain_undominated(&mut entries, |e| e.pair);
            cells[colors * n + v] = entries;
        }
    }
    ColorTable { n, coloring: coloring.to_vec(), cells }
}

fn trial_rng(seed: u64, k: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(k as u64);
    rng
}

struct Search {
    frontier: ParetoSet,
    witnesses: BTreeMap<Pair, Vec<usize>>,
    stats: SolveStats,
}

impl Search {
    fn meets_target(&self, inst: &Instance) -> bool {
        inst.d().is_some() && SolveReport::target_pair(inst, &self.frontier).is_some()
    }

    fn run_length(&mut self, inst: &Instance, k: usize, trials: u64, seed: u64) {
        let (_, y) = inst.terminals().expect("path instance");
        let mut rng = trial_rng(seed, k);
        let full = (1u32 << k) - 1;
        for _ in 0..trials {
            let coloring: Vec<u8> = (0..inst.n()).map(|_| rng.gen_range(0..k) as u8).collect();
            let table = color_table(inst, k, &coloring);
            *self.stats.trials.get_or_insert(0) += 1;
            self.stats.nodes_expanded += (1u64 << k) * inst.n() as u64;
            self.stats.states_touched += table.cells.iter().map(|c| c.len() as u64).sum::<u64>();
            for (i, e) in table.cells[full as usize * inst.n() + y].iter().enumerate() {
                if self.frontier.insert_in_place(e.pair, inst.s()) {
                    self.witnesses.insert(e.pair, table.walk(full, y, i));
                }
            }
            // In decision mode one success settles the question.
            if self.meets_target(inst) {
                return;
            }
        }
    }

    fn report(self, inst: &Instance, started: Instant) -> SolveReport {
        let Search { frontier, mut witnesses, mut stats } = self;
        stats.set_wall_time(started.elapsed());
        SolveReport::from_frontier(inst, frontier, stats, |pair| {
            witnesses.remove(&pair).expect("every frontier pair has a witness")
        })
    }
}

fn check_length(inst: &Instance, k: usize) -> Result<(), PathError> {
    let max = inst.n().min(MAX_PALETTE);
    if k == 0 || k > max {
        Err(PathError::BadLength { k, max })
    } else {
        Ok(())
    }
}

/// Randomised search for `x`–`y` paths on exactly `k` vertices. Positive
/// answers are always backed by a verified witness; negative answers are
/// probabilistic. With a target `d`, trials stop at the first success.
pub fn solve_path_color_coding(inst: &Instance, k: usize, trials: u64, seed: u64) -> Result<SolveReport, PathError> {
    inst.terminals().ok_or(PathError::NoTerminals)?;
    check_length(inst, k)?;
    if trials == 0 {
        return Err(PathError::NoTrials);
    }
    let started = Instant::now();
    let mut search = Search { frontier: ParetoSet::new(), witnesses: BTreeMap::new(), stats: SolveStats::new("color") };
    search.run_length(inst, k, trials, seed);
    Ok(search.report(inst, started))
}

/// Runs every path length `k = 1..=min(n, MAX_PALETTE)` and merges the frontiers.
/// `trials` of `None` uses [`default_trials`] per length.
pub fn solve_path_color_sweep(inst: &Instance, trials: Option<u64>, seed: u64) -> Result<SolveReport, PathError> {
    inst.terminals().ok_or(PathError::NoTerminals)?;
    if trials == Some(0) {
        return Err(PathError::NoTrials);
    }
    let started = Instant::now();
    let mut search = Search { frontier: ParetoSet::new(), witnesses: BTreeMap::new(), stats: SolveStats::new("color") };
    for k in 1..=inst.n().min(MAX_PALETTE) {
        search.run_length(inst, k, trials.unwrap_or_else(|| default_trials(k)), seed);
        if search.meets_target(inst) {
            break;
        }
    }
    Ok(search.report(inst, started))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{verify_solution, InstanceBuilder, Variant};

    fn abc() -> Instance {
        InstanceBuilder::new(Variant::Path, 3)
            .edges([(0, 1), (1, 2)])
            .weights(vec![1, 1, 1])
            .values(vec![1, 1, 1])
            .terminals(0, 2)
            .capacity(3)
            .build()
            .unwrap()
    }

    #[test]
    fn single_colour_cells() {
        let inst = abc();
        let table = color_table(&inst, 3, &[2, 0, 1]);
        for c in 0..3u32 {
            for v in 0..3 {
                let expected = v == 0 && c == 2;
                assert_eq!(table.path(1 << c, v), expected, "colour {c} vertex {v}");
            }
        }
        assert_eq!(table.cell(1 << 2, 0).pairs(), &[Pair::new(1, 1)]);
        assert!(table.path(0b111, 2));
        assert_eq!(table.walk(0b111, 2, 0), vec![0, 1, 2]);
    }

    #[test]
    fn rainbow_colouring_finds_the_path() {
        let r = solve_path_color_coding(&abc(), 3, default_trials(3), 1).unwrap();
        assert!(r.feasible);
        assert_eq!(r.witness, Some(vec![0, 1, 2]));
    }

    #[test]
    fn direct_edge_needs_two_colours() {
        let inst = InstanceBuilder::new(Variant::Path, 3).edge(0, 2).terminals(0, 2).capacity(5).build().unwrap();
        assert!(!solve_path_color_coding(&inst, 3, 100, 5).unwrap().feasible);
        assert!(solve_path_color_coding(&inst, 2, 100, 5).unwrap().feasible);
    }

    #[test]
    fn diamond_prefers_the_valuable_side() {
        // x=0, a=1, b=2, y=3
        let inst = InstanceBuilder::new(Variant::Path, 4)
            .edges([(0, 1), (1, 3), (0, 2), (2, 3)])
            .weights(vec![0, 0, 0, 0])
            .values(vec![0, 5, 1, 0])
            .terminals(0, 3)
            .capacity(0)
            .target(5)
            .build()
            .unwrap();
        let r = solve_path_color_coding(&inst, 3, default_trials(3), 11).unwrap();
        assert!(r.feasible);
        assert_eq!(r.witness, Some(vec![0, 1, 3]));
        assert!(verify_solution(&inst, r.witness.as_ref().unwrap()).ok);
    }

    #[test]
    fn length_and_trial_guards() {
        assert_eq!(solve_path_color_coding(&abc(), 4, 1, 0), Err(PathError::BadLength { k: 4, max: 3 }));
        assert_eq!(solve_path_color_coding(&abc(), 0, 1, 0), Err(PathError::BadLength { k: 0, max: 3 }));
        assert_eq!(solve_path_color_coding(&abc(), 2, 0, 0), Err(PathError::NoTrials));
        assert_eq!(default_trials(3), 61);
    }

    #[test]
    fn one_vertex_path() {
        let inst = abc().with_terminals(1, 1);
        let r = solve_path_color_coding(&inst, 1, 1, 0).unwrap();
        assert_eq!(r.witness, Some(vec![1]));
    }
}
