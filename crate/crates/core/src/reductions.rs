//! Hardness gadgets as instance generators.
//!
//! Vertex numbering is fixed so generated files are reproducible:
//!
//! * vertex cover: `u_0..u_{n-1}`, then the spine `g_0..g_{n-1}`, then one
//!   `h_e` per source edge in sorted edge order;
//! * knapsack on a star: centre `0`, then one leaf per item;
//! * partial vertex cover: `u_0..u_{n-1}`, hub `g = n`, then the `h_e`;
//! * Hamiltonian path: the source graph unchanged;
//! * ladder: `u_0..u_n`, then `v_1..v_n`, then `w_1..w_n`.

use crate::model::{Instance, InstanceBuilder, InstanceError, Variant};
use serde::{Deserialize, Serialize};
use std::collections::BTreeSet;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReductionError {
    #[error("source graph: {0}")]
    BadGraph(String),
    #[error("at least one item is required")]
    NoItems,
    #[error("{sizes} sizes but {values} values")]
    ItemMismatch { sizes: usize, values: usize },
    #[error("terminals must differ")]
    SameTerminals,
    #[error("terminal {0} out of range")]
    TerminalOutOfRange(usize),
    #[error("variant {0} has no ladder gadget")]
    WrongVariant(Variant),
    #[error("gadget failed validation: {0}")]
    Gadget(#[from] InstanceError),
}

/// Undirected simple graph used as a reduction source.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimpleGraph {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl SimpleGraph {
    /// Edges as `(min, max)`, sorted, after checking the graph is simple.
    pub fn normalized_edges(&self) -> Result<Vec<(usize, usize)>, ReductionError> {
        if self.n == 0 {
            return Err(ReductionError::BadGraph("no vertices".into()));
        }
        let mut seen = BTreeSet::new();
        for &(u, v) in &self.edges {
            if u >= self.n || v >= self.n {
                return Err(ReductionError::BadGraph(format!("edge ({u}, {v}) out of range")));
            }
            if u == v {
                return Err(ReductionError::BadGraph(format!("self-loop at {u}")));
            }
            if !seen.insert((u.min(v), u.max(v))) {
                return Err(ReductionError::BadGraph(format!("duplicate edge ({u}, {v})")));
            }
        }
        Ok(seen.into_iter().collect())
    }

    pub fn max_degree(&self) -> usize {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg.into_iter().max().unwrap_or(0)
    }
}

/// A 0/1 knapsack instance: sizes `θ`, values `p`, capacity `b`, target `q`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct KnapsackItems {
    pub sizes: Vec<u64>,
    pub values: Vec<u64>,
    pub capacity: u64,
    pub target: u64,
}

impl KnapsackItems {
    fn check(&self) -> Result<usize, ReductionError> {
        if self.sizes.len() != self.values.len() {
            return Err(ReductionError::ItemMismatch { sizes: self.sizes.len(), values: self.values.len() });
        }
        if self.sizes.is_empty() {
            return Err(ReductionError::NoItems);
        }
        Ok(self.sizes.len())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ReductionKind {
    Vc,
    Star,
    Pvc,
    Ham,
    Ladder,
}

impl fmt::Display for ReductionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ReductionKind::Vc => "vc",
            ReductionKind::Star => "star",
            ReductionKind::Pvc => "pvc",
            ReductionKind::Ham => "ham",
            ReductionKind::Ladder => "ladder",
        };
        f.write_str(s)
    }
}

/// What a gadget vertex stands for in the source instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "role", rename_all = "snake_case")]
pub enum Role {
    /// Copy of source vertex `index`.
    Vertex {
        index: usize,
    },
    /// Spine vertex attached to source vertex `index`.
    Spine {
        index: usize,
    },
    Hub,
    /// Stands for the source edge `{u, v}`.
    Edge {
        u: usize,
        v: usize,
    },
    Center,
    /// Selecting this vertex selects item `index`.
    Item {
        index: usize,
    },
    /// Ladder junction `u_index`.
    Junction {
        index: usize,
    },
    /// Ladder rung skipping item `index`.
    Skip {
        index: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Provenance {
    pub reduction: ReductionKind,
    pub source: serde_json::Value,
    /// One entry per gadget vertex.
    pub roles: Vec<Role>,
    /// Path decomposition bags, for gadgets that come with one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub path_decomposition: Option<Vec<Vec<usize>>>,
}

#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub instance: Instance,
    pub provenance: Provenance,
}

fn source_json<T: Serialize>(value: &T) -> serde_json::Value {
    serde_json::to_value(value).expect("source types serialise")
}

/// Vertex cover of size `k` becomes a connected set of weight `k` covering every edge vertex.
pub fn reduce_vertex_cover_to_connected(g: &SimpleGraph, k: u64) -> Result<ReductionOutput, ReductionError> {
    let edges = g.normalized_edges()?;
    let (n, m) = (g.n, edges.len());
    let mut weights = vec![1; n];
    weights.extend(vec![0; n + m]);
    let mut values = vec![0; 2 * n];
    values.extend(vec![1; m]);
    let mut b = InstanceBuilder::new(Variant::Connected, 2 * n + m)
        .weights(weights)
        .values(values)
        .capacity(k)
        .target(m as u64);
    let mut roles: Vec<Role> = (0..n).map(|index| Role::Vertex { index }).collect();
    roles.extend((0..n).map(|index| Role::Spine { index }));
    for i in 0..n {
        b = b.edge(i, n + i);
        if i + 1 < n {
            b = b.edge(n + i, n + i + 1);
        }
    }
    for (j, &(u, v)) in edges.iter().enumerate() {
        b = b.edge(u, 2 * n + j).edge(v, 2 * n + j);
        roles.push(Role::Edge { u, v });
    }
    let source = serde_json::json!({ "graph": source_json(g), "k": k });
    Ok(ReductionOutput {
        instance: b.build()?,
        provenance: Provenance { reduction: ReductionKind::Vc, source, roles, path_decomposition: None },
    })
}

/// Knapsack items become the leaves of a star around a free centre.
pub fn reduce_knapsack_to_star_connected(items: &KnapsackItems) -> Result<ReductionOutput, ReductionError> {
    let n = items.check()?;
    let mut weights = vec![0];
    weights.extend(&items.sizes);
    let mut values = vec![0];
    values.extend(&items.values);
    let b = InstanceBuilder::new(Variant::Connected, n + 1)
        .edges((1..=n).map(|i| (0, i)))
        .weights(weights)
        .values(values)
        .capacity(items.capacity)
        .target(items.target);
    let mut roles = vec![Role::Center];
    roles.extend((0..n).map(|index| Role::Item { index }));
    Ok(ReductionOutput {
        instance: b.build()?,
        provenance: Provenance {
            reduction: ReductionKind::Star,
            source: source_json(items),
            roles,
            path_decomposition: None,
        },
    })
}

/// Partial vertex cover (`k` vertices covering `l` edges) with a single hub in place of the spine.
pub fn reduce_partial_vc_to_connected(g: &SimpleGraph, k: u64, l: u64) -> Result<ReductionOutput, ReductionError> {
    let edges = g.normalized_edges()?;
    let (n, m) = (g.n, edges.len());
    let hub = n;
    let mut weights = vec![1; n];
    weights.extend(vec![0; m + 1]);
    let mut values = vec![0; n + 1];
    values.extend(vec![1; m]);
    let mut b =
        InstanceBuilder::new(Variant::Connected, n + 1 + m).weights(weights).values(values).capacity(k).target(l);
    let mut roles: Vec<Role> = (0..n).map(|index| Role::Vertex { index }).collect();
    roles.push(Role::Hub);
    for i in 0..n {
        b = b.edge(i, hub);
    }
    for (j, &(u, v)) in edges.iter().enumerate() {
        b = b.edge(u, n + 1 + j).edge(v, n + 1 + j);
        roles.push(Role::Edge { u, v });
    }
    let source = serde_json::json!({ "graph": source_json(g), "k": k, "l": l });
    Ok(ReductionOutput {
        instance: b.build()?,
        provenance: Provenance { reduction: ReductionKind::Pvc, source, roles, path_decomposition: None },
    })
}

/// Hamiltonian `x`–`y` path: free vertices of value one, target `n`.
pub fn reduce_hamiltonian_to_path(g: &SimpleGraph, x: usize, y: usize) -> Result<ReductionOutput, ReductionError> {
    let edges = g.normalized_edges()?;
    if let Some(&t) = [x, y].iter().find(|&&t| t >= g.n) {
        return Err(ReductionError::TerminalOutOfRange(t));
    }
    if x == y {
        return Err(ReductionError::SameTerminals);
    }
    let b = InstanceBuilder::new(Variant::Path, g.n)
        .edges(edges)
        .weights(vec![0; g.n])
        .values(vec![1; g.n])
        .capacity(0)
        .target(g.n as u64)
        .terminals(x, y);
    let source = serde_json::json!({ "graph": source_json(g), "x": x, "y": y });
    Ok(ReductionOutput {
        instance: b.build()?,
        provenance: Provenance {
            reduction: ReductionKind::Ham,
            source,
            roles: (0..g.n).map(|index| Role::Vertex { index }).collect(),
            path_decomposition: None,
        },
    })
}

/// Ladder of `n` diamonds `u_{i-1} – {v_i, w_i} – u_i`; `v_i` carries item `i`.
/// Shortest-path gadgets get unit edge costs.
pub fn reduce_knapsack_to_path_gadget(
    items: &KnapsackItems,
    variant: Variant,
) -> Result<ReductionOutput, ReductionError> {
    if variant == Variant::Connected {
        return Err(ReductionError::WrongVariant(variant));
    }
    let n = items.check()?;
    let u = |i: usize| i;
    let v = |i: usize| n + i;
    let w = |i: usize| 2 * n + i;
    let mut weights = vec![0; 3 * n + 1];
    let mut values = vec![0; 3 * n + 1];
    for i in 1..=n {
        weights[v(i)] = items.sizes[i - 1];
        values[v(i)] = items.values[i - 1];
    }
    let mut b = InstanceBuilder::new(variant, 3 * n + 1)
        .weights(weights)
        .values(values)
        .capacity(items.capacity)
        .target(items.target)
        .terminals(u(0), u(n));
    let mut bags = Vec::with_capacity(2 * n);
    for i in 1..=n {
        for (a, c) in [(u(i - 1), v(i)), (u(i - 1), w(i)), (u(i), v(i)), (u(i), w(i))] {
            b = match variant {
                Variant::ShortestPath => b.costed_edge(a, c, 1),
                _ => b.edge(a, c),
            };
        }
        let mut first = vec![u(i - 1), v(i), w(i)];
        let mut second = vec![v(i), w(i), u(i)];
        first.sort_unstable();
        second.sort_unstable();
        bags.push(first);
        bags.push(second);
    }
    let mut roles: Vec<Role> = (0..=n).map(|index| Role::Junction { index }).collect();
    roles.extend((0..n).map(|index| Role::Item { index }));
    roles.extend((0..n).map(|index| Role::Skip { index }));
    Ok(ReductionOutput {
        instance: b.build()?,
        provenance: Provenance {
            reduction: ReductionKind::Ladder,
            source: source_json(items),
            roles,
            path_decomposition: Some(bags),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> SimpleGraph {
        SimpleGraph { n: 3, edges: vec![(0, 1), (1, 2), (0, 2)] }
    }

    #[test]
    fn vertex_cover_gadget_shape() {
        let out = reduce_vertex_cover_to_connected(&k3(), 2).unwrap();
        let inst = &out.instance;
        assert_eq!(inst.n(), 9);
        assert_eq!((inst.s(), inst.d()), (2, Some(3)));
        assert_eq!(out.provenance.roles.len(), 9);
        assert_eq!(out.provenance.roles[8], Role::Edge { u: 1, v: 2 });
        assert!((0..9).all(|x| inst.degree(x) <= 4));
    }

    #[test]
    fn edgeless_source() {
        let out = reduce_vertex_cover_to_connected(&SimpleGraph { n: 2, edges: vec![] }, 0).unwrap();
        assert_eq!(out.instance.d(), Some(0));
    }

    #[test]
    fn star_and_ladder_shapes() {
        let items = KnapsackItems { sizes: vec![2, 3], values: vec![3, 4], capacity: 5, target: 7 };
        let star = reduce_knapsack_to_star_connected(&items).unwrap();
        assert_eq!(star.instance.n(), 3);
        assert_eq!(star.instance.edges(), &[(0, 1), (0, 2)]);
        let ladder = reduce_knapsack_to_path_gadget(&items, Variant::Path).unwrap();
        assert_eq!(ladder.instance.n(), 7);
        assert_eq!(ladder.instance.edges().len(), 8);
        assert_eq!(ladder.instance.terminals(), Some((0, 2)));
        let sp = reduce_knapsack_to_path_gadget(&items, Variant::ShortestPath).unwrap();
        assert!(sp.instance.costs().unwrap().iter().all(|&c| c == 1));
        let bags = ladder.provenance.path_decomposition.unwrap();
        assert_eq!(bags.len(), 4);
        assert!(bags.iter().all(|b| b.len() == 3));
    }

    #[test]
    fn pvc_and_ham_shapes() {
        let pvc = reduce_partial_vc_to_connected(&k3(), 1, 2).unwrap();
        assert_eq!(pvc.instance.n(), 7);
        assert_eq!(pvc.instance.degree(3), 3);
        let ham = reduce_hamiltonian_to_path(&k3(), 0, 2).unwrap();
        assert_eq!((ham.instance.s(), ham.instance.d()), (0, Some(3)));
        assert_eq!(reduce_hamiltonian_to_path(&k3(), 1, 1).unwrap_err(), ReductionError::SameTerminals);
    }

    #[test]
    fn bad_sources() {
        let loopy = SimpleGraph { n: 2, edges: vec![(1, 1)] };
        assert!(matches!(reduce_vertex_cover_to_connected(&loopy, 1), Err(ReductionError::BadGraph(_))));
        let empty = KnapsackItems { sizes: vec![], values: vec![], capacity: 0, target: 0 };
        assert_eq!(reduce_knapsack_to_star_connected(&empty).unwrap_err(), ReductionError::NoItems);
    }
}
