//! Rooted nice edge tree decompositions with pinned vertices.
//!
//! Decompositions are built from a min-fill elimination ordering and then
//! normalised: leaves and root carry exactly the pinned set, every node is a
//! leaf, vertex introduction, edge introduction, vertex forget or binary join,
//! and every graph edge is introduced exactly once.

use crate::model::Instance;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum NodeKind {
    Leaf,
    IntroduceVertex { vertex: usize },
    IntroduceEdge { u: usize, v: usize },
    ForgetVertex { vertex: usize },
    Join,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NiceNode {
    #[serde(flatten)]
    pub kind: NodeKind,
    /// Sorted vertex ids.
    pub bag: Vec<usize>,
    pub children: Vec<usize>,
}

/// Nodes are stored children-first, so index order is a valid bottom-up order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NiceDecomposition {
    pub nodes: Vec<NiceNode>,
    pub root: usize,
    pub pinned: Vec<usize>,
    pub width: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DecompositionError {
    #[error("at most two pinned vertices are supported, got {0}")]
    PinnedTooLarge(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("elimination order is not a permutation of the vertices")]
    BadOrder,
    #[error("node {0}: decomposition is not a tree rooted at the root node")]
    BadTreeStructure(usize),
    #[error("node {0}: wrong number of children for its kind")]
    BadNodeArity(usize),
    #[error("node {0}: bag does not match its kind and children")]
    BadTransition(usize),
    #[error("node {0}: bag is not a sorted set of valid vertex ids")]
    BadBag(usize),
    #[error("root bag differs from the pinned set")]
    RootNotPinnedBag,
    #[error("leaf {0} bag differs from the pinned set")]
    LeafNotPinnedBag(usize),
    #[error("node {0} is missing a pinned vertex")]
    PinnedMissing(usize),
    #[error("vertex {0} appears in no bag")]
    VertexNotCovered(usize),
    #[error("bags containing vertex {0} do not form a connected subtree")]
    BrokenSubtreeConnectivity(usize),
    #[error("node {node} introduces {{{u}, {v}}}, which is not an edge")]
    UnknownEdge { node: usize, u: usize, v: usize },
    #[error("edge {{{0}, {1}}} is never introduced")]
    EdgeNeverIntroduced(usize, usize),
    #[error("edge {{{0}, {1}}} is introduced more than once")]
    EdgeIntroducedTwice(usize, usize),
    #[error("recorded width {recorded} differs from actual width {actual}")]
    WidthMismatch { recorded: usize, actual: usize },
    #[error("bag list and parent list disagree in length")]
    ShapeMismatch,
}

/// Greedy min-fill elimination ordering.
///
/// Ties go to the lowest vertex id when `seed == 0`; any other seed assigns a
/// random priority per vertex that only decides exact ties.
pub fn elimination_order_minfill(inst: &Instance, seed: u64) -> Vec<usize> {
    let n = inst.n();
    let mut priority: Vec<usize> = (0..n).collect();
    if seed != 0 {
        priority.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|u| inst.neighbors(u).collect()).collect();
    let mut alive = vec![true; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<(usize, usize, usize)> = None; // (fill, priority, vertex)
        for u in (0..n).filter(|&u| alive[u]) {
            let fill = fill_in(&adj, u);
            let key = (fill, priority[u], u);
            if best.is_none_or(|b| (key.0, key.1) < (b.0, b.1)) {
                best = Some(key);
            }
        }
        let (_, _, u) = best.expect("a live vertex remains");
        eliminate(&mut adj, u);
        alive[u] = false;
        order.push(u);
    }
    order
}

fn fill_in(adj: &[BTreeSet<usize>], u: usize) -> usize {
    let nbrs: Vec<usize> = adj[u].iter().copied().collect();
    let mut missing = 0;
    for (i, &a) in nbrs.iter().enumerate() {
        missing += nbrs[i + 1..].iter().filter(|&&b| !adj[a].contains(&b)).count();
    }
    missing
}

fn eliminate(adj: &mut [BTreeSet<usize>], u: usize) {
    let nbrs: Vec<usize> = adj[u].iter().copied().collect();
    for (i, &a) in nbrs.iter().enumerate() {
        for &b in &nbrs[i + 1..] {
            adj[a].insert(b);
            adj[b].insert(a);
        }
        adj[a].remove(&u);
    }
    adj[u].clear();
}

/// Tree decomposition induced by an elimination ordering: one bag per vertex,
/// `{v} ∪ later neighbours`, hung below the earliest-eliminated later neighbour.
pub type TreeDecomposition = (Vec<Vec<usize>>, Vec<Option<usize>>);

/// Returns `(bags, parent)`.
pub fn elimination_tree_decomposition(
    inst: &Instance,
    order: &[usize],
) -> Result<TreeDecomposition, DecompositionError> {
    let n = inst.n();
    let mut position = vec![usize::MAX; n];
    for (i, &v) in order.iter().enumerate() {
        if v >= n || position[v] != usize::MAX {
            return Err(DecompositionError::BadOrder);
        }
        position[v] = i;
    }
    if order.len() != n {
        return Err(DecompositionError::BadOrder);
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|u| inst.neighbors(u).collect()).collect();
    let mut bags = Vec::with_capacity(n);
    let mut parent = Vec::with_capacity(n);
    for &v in order {
        let later: Vec<usize> = adj[v].iter().copied().collect();
        let next = later.iter().copied().min_by_key(|&u| position[u]);
        let mut bag = later.clone();
        bag.push(v);
        bag.sort_unstable();
        bags.push(bag);
        parent.push(next.map(|u| position[u]));
        eliminate(&mut adj, v);
    }
    // Hang every component root below the last root so the result is one tree.
    let roots: Vec<usize> = (0..n).filter(|&i| parent[i].is_none()).collect();
    if let Some((&last, rest)) = roots.split_last() {
        for &r in rest {
            parent[r] = Some(last);
        }
    }
    Ok((bags, parent))
}

/// Width of the elimination-order decomposition (largest bag minus one).
pub fn elimination_width(inst: &Instance, order: &[usize]) -> Result<usize, DecompositionError> {
    let (bags, _) = elimination_tree_decomposition(inst, order)?;
    Ok(bags.iter().map(Vec::len).max().unwrap_or(1).saturating_sub(1))
}

/// Normalises the decomposition of `order` into nice form with `pinned` in every bag.
pub fn build_nice_decomposition(
    inst: &Instance,
    order: &[usize],
    pinned: &[usize],
) -> Result<NiceDecomposition, DecompositionError> {
    let (bags, parent) = elimination_tree_decomposition(inst, order)?;
    from_tree_decomposition(inst, &bags, &parent, pinned)
}

/// Normalises an arbitrary rooted tree decomposition (exactly one `None` parent
/// unless the graph is empty) into a nice decomposition pinned at `pinned`.
pub fn from_tree_decomposition(
    inst: &Instance,
    bags: &[Vec<usize>],
    parent: &[Option<usize>],
    pinned: &[usize],
) -> Result<NiceDecomposition, DecompositionError> {
    let mut pinned: Vec<usize> = pinned.to_vec();
    pinned.sort_unstable();
    pinned.dedup();
    if pinned.len() > 2 {
        return Err(DecompositionError::PinnedTooLarge(pinned.len()));
    }
    if let Some(&v) = pinned.iter().find(|&&v| v >= inst.n()) {
        return Err(DecompositionError::VertexOutOfRange(v));
    }
    if bags.len() != parent.len() {
        return Err(DecompositionError::ShapeMismatch);
    }
    let pinned_set: BTreeSet<usize> = pinned.iter().copied().collect();
    let bags: Vec<BTreeSet<usize>> =
        bags.iter().map(|b| b.iter().copied().chain(pinned.iter().copied()).collect()).collect();

    let mut builder = NiceBuilder { inst, nodes: Vec::new(), introduced: vec![false; inst.edges().len()] };

    let mut children = vec![Vec::new(); bags.len()];
    let mut root = None;
    for (i, p) in parent.iter().enumerate() {
        match p {
            Some(p) if *p < bags.len() && *p != i => children[*p].push(i),
            Some(_) => return Err(DecompositionError::ShapeMismatch),
            None if root.is_none() => root = Some(i),
            None => return Err(DecompositionError::ShapeMismatch),
        }
    }

    let top = match root {
        None => {
            if !bags.is_empty() {
                return Err(DecompositionError::ShapeMismatch);
            }
            builder.push(NodeKind::Leaf, &pinned_set, vec![])
        }
        Some(root) => {
            // Iterative post-order over the raw tree.
            let mut built: Vec<Option<usize>> = vec![None; bags.len()];
            let mut stack = vec![(root, false)];
            while let Some((t, expanded)) = stack.pop() {
                if !expanded {
                    stack.push((t, true));
                    for &c in children[t].iter().rev() {
                        stack.push((c, false));
                    }
                    continue;
                }
                let target = &bags[t];
                let mut branches = Vec::with_capacity(children[t].len().max(1));
                if children[t].is_empty() {
                    let leaf = builder.push(NodeKind::Leaf, &pinned_set, vec![]);
                    branches.push(builder.transition(leaf, &pinned_set, target));
                }
                for &c in &children[t] {
                    let child_top = built[c].ok_or(DecompositionError::ShapeMismatch)?;
                    branches.push(builder.transition(child_top, &bags[c], target));
                }
                let mut acc = branches[0];
                for &b in &branches[1..] {
                    acc = builder.push(NodeKind::Join, target, vec![acc, b]);
                }
                built[t] = Some(acc);
            }
            let root_top = built[root].ok_or(DecompositionError::ShapeMismatch)?;
            builder.transition(root_top, &bags[root], &pinned_set)
        }
    };
    // Edges among pinned vertices are never forgotten; introduce them last.
    let mut top = top;
    for i in 0..inst.edges().len() {
        let (u, v) = inst.edges()[i];
        if !builder.introduced[i] && pinned_set.contains(&u) && pinned_set.contains(&v) {
            builder.introduced[i] = true;
            top = builder.push(NodeKind::IntroduceEdge { u, v }, &pinned_set, vec![top]);
        }
    }
    let width = builder.nodes.iter().map(|n| n.bag.len()).max().unwrap_or(1).saturating_sub(1);
    Ok(NiceDecomposition { nodes: builder.nodes, root: top, pinned, width })
}

struct NiceBuilder<'a> {
    inst: &'a Instance,
    nodes: Vec<NiceNode>,
    introduced: Vec<bool>,
}

impl NiceBuilder<'_> {
    fn push(&mut self, kind: NodeKind, bag: &BTreeSet<usize>, children: Vec<usize>) -> usize {
        self.nodes.push(NiceNode { kind, bag: bag.iter().copied().collect(), children });
        self.nodes.len() - 1
    }

    /// Chain of forgets (each preceded by the edges it closes) then introduces,
    /// turning the bag `from` at node `top` into `to`.
    fn transition(&mut self, mut top: usize, from: &BTreeSet<usize>, to: &BTreeSet<usize>) -> usize {
        let mut bag = from.clone();
        for &u in from.difference(to) {
            for &(v, e) in self.inst.incident(u) {
                if !self.introduced[e] && bag.contains(&v) {
                    self.introduced[e] = true;
                    let (a, b) = self.inst.edges()[e];
                    top = self.push(NodeKind::IntroduceEdge { u: a, v: b }, &bag, vec![top]);
                }
            }
            bag.remove(&u);
            top = self.push(NodeKind::ForgetVertex { vertex: u }, &bag, vec![top]);
        }
        for &u in to.difference(from) {
            bag.insert(u);
            top = self.push(NodeKind::IntroduceVertex { vertex: u }, &bag, vec![top]);
        }
        top
    }
}

impl NiceDecomposition {
    /// Distance from the root for every node.
    pub fn depths(&self) -> Vec<usize> {
        let mut depth = vec![0; self.nodes.len()];
        let mut stack = vec![self.root];
        while let Some(t) = stack.pop() {
            for &c in &self.nodes[t].children {
                depth[c] = depth[t] + 1;
                stack.push(c);
            }
        }
        depth
    }

    /// Nodes ordered by decreasing depth (deepest level first), ties by index.
    pub fn bottom_up_order(&self) -> Vec<usize> {
        let depth = self.depths();
        let mut order: Vec<usize> = (0..self.nodes.len()).collect();
        order.sort_by_key(|&t| (std::cmp::Reverse(depth[t]), t));
        order
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("decomposition serialises")
    }
}

/// Checks every structural invariant of a nice edge tree decomposition against `inst`.
pub fn validate_nice_decomposition(inst: &Instance, nd: &NiceDecomposition) -> Result<(), DecompositionError> {
    let n = inst.n();
    let count = nd.nodes.len();
    if nd.root >= count {
        return Err(DecompositionError::BadTreeStructure(nd.root));
    }
    // Tree shape: every node reached exactly once from the root.
    let mut parent: Vec<Option<usize>> = vec![None; count];
    let mut seen = vec![false; count];
    seen[nd.root] = true;
    let mut stack = vec![nd.root];
    while let Some(t) = stack.pop() {
        for &c in &nd.nodes[t].children {
            if c >= count || seen[c] {
                return Err(DecompositionError::BadTreeStructure(t));
            }
            seen[c] = true;
            parent[c] = Some(t);
            stack.push(c);
        }
    }
    if let Some(t) = seen.iter().position(|&s| !s) {
        return Err(DecompositionError::BadTreeStructure(t));
    }

    let pinned: BTreeSet<usize> = nd.pinned.iter().copied().collect();
    for (t, node) in nd.nodes.iter().enumerate() {
        if node.bag.windows(2).any(|w| w[0] >= w[1]) || node.bag.iter().any(|&v| v >= n) {
            return Err(DecompositionError::BadBag(t));
        }
        let expected_children = match node.kind {
            NodeKind::Leaf => 0,
            NodeKind::Join => 2,
            _ => 1,
        };
        if node.children.len() != expected_children {
            return Err(DecompositionError::BadNodeArity(t));
        }
        if !pinned.iter().all(|p| node.bag.binary_search(p).is_ok()) {
            return Err(DecompositionError::PinnedMissing(t));
        }
        let child_bag = |i: usize| &nd.nodes[node.children[i]].bag;
        let consistent = match node.kind {
            NodeKind::Leaf => {
                if node.bag != nd.pinned {
                    return Err(DecompositionError::LeafNotPinnedBag(t));
                }
                true
            }
            NodeKind::IntroduceVertex { vertex } => {
                let c = child_bag(0);
                c.binary_search(&vertex).is_err() && with_vertex(c, vertex) == node.bag
            }
            NodeKind::ForgetVertex { vertex } => {
                let c = child_bag(0);
                c.binary_search(&vertex).is_ok() && with_vertex(&node.bag, vertex) == *c
            }
            NodeKind::IntroduceEdge { u, v } => {
                if inst.edge_index(u, v).is_none() {
                    return Err(DecompositionError::UnknownEdge { node: t, u, v });
                }
                *child_bag(0) == node.bag && node.bag.binary_search(&u).is_ok() && node.bag.binary_search(&v).is_ok()
            }
            NodeKind::Join => *child_bag(0) == node.bag && *child_bag(1) == node.bag,
        };
        if !consistent {
            return Err(DecompositionError::BadTransition(t));
        }
    }
    if nd.nodes[nd.root].bag != nd.pinned {
        return Err(DecompositionError::RootNotPinnedBag);
    }

    // Each vertex: exactly one topmost node containing it.
    let mut tops = vec![0usize; n];
    for (t, node) in nd.nodes.iter().enumerate() {
        for &v in &node.bag {
            let parent_has = parent[t].is_some_and(|p| nd.nodes[p].bag.binary_search(&v).is_ok());
            if !parent_has {
                tops[v] += 1;
            }
        }
    }
    for (v, &k) in tops.iter().enumerate() {
        match k {
            0 => return Err(DecompositionError::VertexNotCovered(v)),
            1 => {}
            _ => return Err(DecompositionError::BrokenSubtreeConnectivity(v)),
        }
    }

    let mut introduced = vec![0usize; inst.edges().len()];
    for node in &nd.nodes {
        if let NodeKind::IntroduceEdge { u, v } = node.kind {
            introduced[inst.edge_index(u, v).expect("checked above")] += 1;
        }
    }
    for (e, &k) in introduced.iter().enumerate() {
        let (u, v) = inst.edges()[e];
        match k {
            0 => return Err(DecompositionError::EdgeNeverIntroduced(u, v)),
            1 => {}
            _ => return Err(DecompositionError::EdgeIntroducedTwice(u, v)),
        }
    }

    let actual = nd.nodes.iter().map(|n| n.bag.len()).max().unwrap_or(1).saturating_sub(1);
    if actual != nd.width {
        return Err(DecompositionError::WidthMismatch { recorded: nd.width, actual });
    }
    Ok(())
}

fn with_vertex(bag: &[usize], v: usize) -> Vec<usize> {
    let mut out = bag.to_vec();
    let pos = out.partition_point(|&u| u < v);
    out.insert(pos, v);
    out
}
