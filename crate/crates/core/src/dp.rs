//! Table engine shared by the decomposition DPs.
//!
//! A state is a per-bag-position label vector where label 0 means "outside the
//! partial solution". Each state carries a Pareto frontier whose entries keep
//! one back-pointer, so any root pair can be turned into a vertex set.

use crate::decomposition::{NiceDecomposition, NodeKind};
use crate::model::{retain_undominated, Instance, Pair, ParetoSet};
use indexmap::IndexMap;
use std::collections::BTreeMap;

pub type Labels = Vec<u8>;

/// Problem-specific transitions. Positions index the sorted bag of the node
/// being built (or of the child, for forget).
pub trait Rules {
    /// Initial states at a leaf, whose bag is the pinned set.
    fn leaf(&self, bag: &[usize]) -> Vec<Labels>;
    /// Successor labellings after inserting the vertex at `pos`.
    fn introduce_vertex(&self, labels: &[u8], pos: usize, bag: &[usize]) -> Vec<Labels>;
    /// Successor labellings after the edge between positions `a` and `b` appears.
    fn introduce_edge(&self, labels: &[u8], a: usize, b: usize, bag: &[usize]) -> Vec<Labels>;
    /// Labelling after dropping position `pos`, or `None` if the state dies.
    fn forget(&self, labels: &[u8], pos: usize, child_bag: &[usize]) -> Option<Labels>;
    /// Combination of two child labellings with the same support, if compatible.
    fn join(&self, left: &[u8], right: &[u8], bag: &[usize]) -> Option<Labels>;
    /// Whether a root labelling counts as a complete solution.
    fn accept(&self, labels: &[u8], bag: &[usize]) -> bool;
}

#[derive(Clone, Copy, Debug)]
enum Origin {
    Leaf,
    Child { state: u32, entry: u32 },
    Join { left: (u32, u32), right: (u32, u32) },
}

#[derive(Clone, Copy, Debug)]
struct Entry {
    pair: Pair,
    origin: Origin,
}

#[derive(Clone, Debug)]
struct State {
    labels: Labels,
    entries: Vec<Entry>,
}

pub struct Tables<'a> {
    inst: &'a Instance,
    nd: &'a NiceDecomposition,
    tables: Vec<Vec<State>>,
    accepted: Vec<usize>,
    pub states_touched: u64,
}

struct Collector {
    cells: IndexMap<Labels, Vec<Entry>>,
    cap: u64,
}

impl Collector {
    fn add(&mut self, labels: Labels, pair: Pair, origin: Origin) {
        if pair.weight <= self.cap {
            self.cells.entry(labels).or_default().push(Entry { pair, origin });
        }
    }

    fn finish(self) -> Vec<State> {
        self.cells
            .into_iter()
            .map(|(labels, mut entries)| {
                retain_undominated(&mut entries, |e| e.pair);
                State { labels, entries }
            })
            .collect()
    }
}

fn inside_total(inst: &Instance, bag: &[usize], labels: &[u8]) -> Pair {
    bag.iter().zip(labels).filter(|(_, &l)| l != 0).fold(Pair::ZERO, |p, (&v, _)| p.add(inst.weight(v), inst.value(v)))
}

pub fn run<'a, R: Rules>(inst: &'a Instance, nd: &'a NiceDecomposition, rules: &R) -> Tables<'a> {
    let mut tables: Vec<Vec<State>> = vec![Vec::new(); nd.nodes.len()];
    let mut touched = 0u64;
    for t in nd.bottom_up_order() {
        let node = &nd.nodes[t];
        let bag = &node.bag;
        let mut out = Collector { cells: IndexMap::new(), cap: inst.s() };
        let child = |i: usize| &tables[node.children[i]];
        let from = |si: usize, ei: usize| Origin::Child { state: si as u32, entry: ei as u32 };
        match node.kind {
            NodeKind::Leaf => {
                for labels in rules.leaf(bag) {
                    let pair = inside_total(inst, bag, &labels);
                    out.add(labels, pair, Origin::Leaf);
                }
            }
            NodeKind::IntroduceVertex { vertex } => {
                let pos = bag.binary_search(&vertex).expect("vertex in bag");
                for (si, st) in child(0).iter().enumerate() {
                    for labels in rules.introduce_vertex(&st.labels, pos, bag) {
                        let (dw, da) =
                            if labels[pos] != 0 { (inst.weight(vertex), inst.value(vertex)) } else { (0, 0) };
                        for (ei, e) in st.entries.iter().enumerate() {
                            out.add(labels.clone(), e.pair.add(dw, da), from(si, ei));
                        }
                    }
                }
            }
            NodeKind::IntroduceEdge { u, v } => {
                let a = bag.binary_search(&u).expect("edge endpoint in bag");
                let b = bag.binary_search(&v).expect("edge endpoint in bag");
                for (si, st) in child(0).iter().enumerate() {
                    for labels in rules.introduce_edge(&st.labels, a, b, bag) {
                        for (ei, e) in st.entries.iter().enumerate() {
                            out.add(labels.clone(), e.pair, from(si, ei));
                        }
                    }
                }
            }
            NodeKind::ForgetVertex { vertex } => {
                let child_bag = &nd.nodes[node.children[0]].bag;
                let pos = child_bag.binary_search(&vertex).expect("vertex in child bag");
                for (si, st) in child(0).iter().enumerate() {
                    if let Some(labels) = rules.forget(&st.labels, pos, child_bag) {
                        for (ei, e) in st.entries.iter().enumerate() {
                            out.add(labels.clone(), e.pair, from(si, ei));
                        }
                    }
                }
            }
            NodeKind::Join => {
                let (left, right) = (child(0), child(1));
                let mut by_support: BTreeMap<Vec<bool>, Vec<usize>> = BTreeMap::new();
                for (si, st) in left.iter().enumerate() {
                    by_support.entry(support(&st.labels)).or_default().push(si);
                }
                for (rj, rs) in right.iter().enumerate() {
                    let Some(partners) = by_support.get(&support(&rs.labels)) else { continue };
                    let shared = inside_total(inst, bag, &rs.labels);
                    for &li in partners {
                        let ls = &left[li];
                        let Some(labels) = rules.join(&ls.labels, &rs.labels, bag) else { continue };
                        for (lei, le) in ls.entries.iter().enumerate() {
                            for (rei, re) in rs.entries.iter().enumerate() {
                                let pair = Pair::new(
                                    le.pair.weight + re.pair.weight - shared.weight,
                                    le.pair.value + re.pair.value - shared.value,
                                );
                                let origin =
                                    Origin::Join { left: (li as u32, lei as u32), right: (rj as u32, rei as u32) };
                                out.add(labels.clone(), pair, origin);
                            }
                        }
                    }
                }
            }
        }
        tables[t] = out.finish();
        touched += tables[t].len() as u64;
    }
    let root_bag = &nd.nodes[nd.root].bag;
    let accepted =
        tables[nd.root].iter().enumerate().filter(|(_, s)| rules.accept(&s.labels, root_bag)).map(|(i, _)| i).collect();
    Tables { inst, nd, tables, accepted, states_touched: touched }
}

fn support(labels: &[u8]) -> Vec<bool> {
    labels.iter().map(|&l| l != 0).collect()
}

impl Tables<'_> {
    /// Undominated pairs over all accepted root states.
    pub fn frontier(&self) -> ParetoSet {
        let root = &self.tables[self.nd.root];
        ParetoSet::from_pairs(self.accepted.iter().flat_map(|&i| root[i].entries.iter().map(|e| e.pair)), self.inst.s())
    }

    pub fn state_counts(&self) -> Vec<usize> {
        self.tables.iter().map(Vec::len).collect()
    }

    pub fn states_at(&self, t: usize) -> Vec<Labels> {
        self.tables[t].iter().map(|s| s.labels.clone()).collect()
    }

    /// Vertex set of a solution realising `pair` at an accepted root state.
    pub fn reconstruct(&self, pair: Pair) -> Option<Vec<usize>> {
        let root = self.nd.root;
        let (state, entry) = self
            .accepted
            .iter()
            .find_map(|&si| self.tables[root][si].entries.iter().position(|e| e.pair == pair).map(|ei| (si, ei)))?;
        let mut chosen = Vec::new();
        let mut stack = vec![(root, state, entry)];
        while let Some((t, si, ei)) = stack.pop() {
            let node = &self.nd.nodes[t];
            let state = &self.tables[t][si];
            match node.kind {
                NodeKind::Leaf => {
                    chosen.extend(node.bag.iter().zip(&state.labels).filter(|(_, &l)| l != 0).map(|(&v, _)| v))
                }
                NodeKind::IntroduceVertex { vertex } => {
                    let pos = node.bag.binary_search(&vertex).expect("vertex in bag");
                    if state.labels[pos] != 0 {
                        chosen.push(vertex);
                    }
                }
                _ => {}
            }
            match state.entries[ei].origin {
                Origin::Leaf => {}
                Origin::Child { state, entry } => stack.push((node.children[0], state as usize, entry as usize)),
                Origin::Join { left, right } => {
                    stack.push((node.children[0], left.0 as usize, left.1 as usize));
                    stack.push((node.children[1], right.0 as usize, right.1 as usize));
                }
            }
        }
        chosen.sort_unstable();
        chosen.dedup();
        Some(chosen)
    }
}
