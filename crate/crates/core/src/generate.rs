//! Seeded random instance generators.

use crate::model::{Instance, InstanceBuilder, Variant};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GraphFamily {
    /// Uniform random recursive tree.
    Tree,
    /// Erdős–Rényi graph with edge probability `p`.
    Gnp(f64),
    /// Row-major grid with `⌈√n⌉` columns (last row possibly partial).
    Grid,
}

#[derive(Clone, Debug)]
pub struct RandomSpec {
    pub family: GraphFamily,
    pub variant: Variant,
    pub n: usize,
    pub max_weight: u64,
    pub max_value: u64,
    /// Largest edge cost for shortest-path instances (costs drawn from `1..=max_cost`).
    pub max_cost: u64,
    /// Capacity; drawn from `0..=Σw` when absent.
    pub s: Option<u64>,
    pub d: Option<u64>,
}

impl RandomSpec {
    pub fn new(family: GraphFamily, variant: Variant, n: usize) -> Self {
        RandomSpec { family, variant, n, max_weight: 8, max_value: 8, max_cost: 5, s: None, d: None }
    }
}

pub fn random_edges(family: GraphFamily, n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    match family {
        GraphFamily::Tree => {
            for v in 1..n {
                edges.push((rng.gen_range(0..v), v));
            }
        }
        GraphFamily::Gnp(p) => {
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
        }
        GraphFamily::Grid => {
            let cols = (n as f64).sqrt().ceil().max(1.0) as usize;
            for v in 0..n {
                if v % cols + 1 < cols && v + 1 < n {
                    edges.push((v, v + 1));
                }
                if v + cols < n {
                    edges.push((v, v + cols));
                }
            }
        }
    }
    edges
}

/// Deterministic for a fixed `(spec, seed)`.
pub fn random_instance(spec: &RandomSpec, seed: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = spec.n.max(1);
    let edges = random_edges(spec.family, n, &mut rng);
    let weights: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=spec.max_weight)).collect();
    let values: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=spec.max_value)).collect();
    let s = spec.s.unwrap_or_else(|| rng.gen_range(0..=weights.iter().sum::<u64>()));
    let mut b = InstanceBuilder::new(spec.variant, n).weights(weights).values(values).capacity(s);
    for (u, v) in edges {
        b = match spec.variant {
            Variant::ShortestPath => b.costed_edge(u, v, rng.gen_range(1..=spec.max_cost.max(1))),
            _ => b.edge(u, v),
        };
    }
    if spec.variant.needs_terminals() {
        let mut ids: Vec<usize> = (0..n).collect();
        ids.shuffle(&mut rng);
        let (x, y) = if n == 1 { (0, 0) } else { (ids[0], ids[1]) };
        b = b.terminals(x, y);
    }
    if let Some(d) = spec.d {
        b = b.target(d);
    }
    b.build().expect("generated instances are valid")
}
