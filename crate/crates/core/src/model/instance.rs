use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::{SerializeSeq, Serializer};
use serde::{Deserialize, Serialize};
use std::fmt;
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Connected,
    Path,
    ShortestPath,
}

impl Variant {
    pub fn needs_terminals(self) -> bool {
        !matches!(self, Variant::Connected)
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Variant::Connected => "connected",
            Variant::Path => "path",
            Variant::ShortestPath => "shortest_path",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("unsupported schema version {0}")]
    UnsupportedVersion(u32),
    #[error("{field} has {found} entries, expected {expected}")]
    LengthMismatch { field: &'static str, expected: usize, found: usize },
    #[error("vertex id {id} out of range (n = {n})")]
    IdOutOfRange { id: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(usize, usize),
    #[error("edge {{{0}, {1}}} has zero cost")]
    ZeroEdgeCost(usize, usize),
    #[error("edge {{{0}, {1}}} has no cost")]
    MissingEdgeCost(usize, usize),
    #[error("edge {{{0}, {1}}} carries a cost but only shortest_path instances use edge costs")]
    UnexpectedEdgeCost(usize, usize),
    #[error("{0} instances need both terminals x and y")]
    MissingTerminal(Variant),
    #[error("connected instances take no terminals")]
    UnexpectedTerminal,
    #[error("malformed instance JSON: {0}")]
    Json(String),
}

/// An undirected edge as written in instance files: `[u, v]` or `[u, v, cost]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RawEdge {
    pub u: usize,
    pub v: usize,
    pub cost: Option<u64>,
}

impl RawEdge {
    pub fn new(u: usize, v: usize) -> Self {
        RawEdge { u, v, cost: None }
    }

    pub fn with_cost(u: usize, v: usize, cost: u64) -> Self {
        RawEdge { u, v, cost: Some(cost) }
    }
}

impl Serialize for RawEdge {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let len = if self.cost.is_some() { 3 } else { 2 };
        let mut seq = serializer.serialize_seq(Some(len))?;
        seq.serialize_element(&self.u)?;
        seq.serialize_element(&self.v)?;
        if let Some(c) = self.cost {
            seq.serialize_element(&c)?;
        }
        seq.end()
    }
}

impl<'de> Deserialize<'de> for RawEdge {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        struct EdgeVisitor;

        impl<'de> Visitor<'de> for EdgeVisitor {
            type Value = RawEdge;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                f.write_str("an edge [u, v] or [u, v, cost]")
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<RawEdge, A::Error> {
                let u = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(0, &self))?;
                let v = seq.next_element()?.ok_or_else(|| de::Error::invalid_length(1, &self))?;
                let cost = seq.next_element()?;
                if seq.next_element::<de::IgnoredAny>()?.is_some() {
                    return Err(de::Error::invalid_length(4, &self));
                }
                Ok(RawEdge { u, v, cost })
            }
        }

        deserializer.deserialize_seq(EdgeVisitor)
    }
}

/// Unvalidated instance, exactly as stored on disk.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RawInstance {
    pub version: u32,
    pub variant: Variant,
    pub n: usize,
    pub weights: Vec<u64>,
    pub values: Vec<u64>,
    pub edges: Vec<RawEdge>,
    pub s: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub x: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub y: Option<usize>,
}

impl RawInstance {
    pub fn from_json(text: &str) -> Result<RawInstance, InstanceError> {
        serde_json::from_str(text).map_err(|e| InstanceError::Json(e.to_string()))
    }

    pub fn validate(self) -> Result<Instance, InstanceError> {
        Instance::validate(self)
    }
}

/// A validated instance. Edges are stored with `u < v`, sorted, and indexed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Instance {
    variant: Variant,
    weights: Vec<u64>,
    values: Vec<u64>,
    edges: Vec<(usize, usize)>,
    costs: Option<Vec<u64>>,
    s: u64,
    d: Option<u64>,
    terminals: Option<(usize, usize)>,
    // (neighbour, edge index), sorted by neighbour
    adjacency: Vec<Vec<(usize, usize)>>,
}

impl Instance {
    pub fn validate(raw: RawInstance) -> Result<Instance, InstanceError> {
        if raw.version != SCHEMA_VERSION {
            return Err(InstanceError::UnsupportedVersion(raw.version));
        }
        let n = raw.n;
        for (field, len) in [("weights", raw.weights.len()), ("values", raw.values.len())] {
            if len != n {
                return Err(InstanceError::LengthMismatch { field, expected: n, found: len });
            }
        }
        let wants_costs = raw.variant == Variant::ShortestPath;
        let mut edges = Vec::with_capacity(raw.edges.len());
        for e in &raw.edges {
            for id in [e.u, e.v] {
                if id >= n {
                    return Err(InstanceError::IdOutOfRange { id, n });
                }
            }
            if e.u == e.v {
                return Err(InstanceError::SelfLoop(e.u));
            }
            let (a, b) = (e.u.min(e.v), e.u.max(e.v));
            let cost = match (wants_costs, e.cost) {
                (true, None) => return Err(InstanceError::MissingEdgeCost(a, b)),
                (true, Some(0)) => return Err(InstanceError::ZeroEdgeCost(a, b)),
                (false, Some(_)) => return Err(InstanceError::UnexpectedEdgeCost(a, b)),
                (_, c) => c,
            };
            edges.push(((a, b), cost));
        }
        edges.sort_by_key(|&(e, _)| e);
        if let Some(w) = edges.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(InstanceError::DuplicateEdge(w[0].0 .0, w[0].0 .1));
        }
        let terminals = match (raw.variant.needs_terminals(), raw.x, raw.y) {
            (true, Some(x), Some(y)) => {
                for id in [x, y] {
                    if id >= n {
                        return Err(InstanceError::IdOutOfRange { id, n });
                    }
                }
                Some((x, y))
            }
            (true, _, _) => return Err(InstanceError::MissingTerminal(raw.variant)),
            (false, None, None) => None,
            (false, _, _) => return Err(InstanceError::UnexpectedTerminal),
        };
        let costs = wants_costs.then(|| edges.iter().map(|&(_, c)| c.unwrap_or(1)).collect());
        let edges: Vec<(usize, usize)> = edges.into_iter().map(|(e, _)| e).collect();
        Ok(Instance::assemble(raw.variant, raw.weights, raw.values, edges, costs, raw.s, raw.d, terminals))
    }

    #[allow(clippy::too_many_arguments)]
    fn assemble(
        variant: Variant,
        weights: Vec<u64>,
        values: Vec<u64>,
        edges: Vec<(usize, usize)>,
        costs: Option<Vec<u64>>,
        s: u64,
        d: Option<u64>,
        terminals: Option<(usize, usize)>,
    ) -> Instance {
        let mut adjacency = vec![Vec::new(); weights.len()];
        for (i, &(a, b)) in edges.iter().enumerate() {
            adjacency[a].push((b, i));
            adjacency[b].push((a, i));
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        Instance { variant, weights, values, edges, costs, s, d, terminals, adjacency }
    }

    pub fn from_json(text: &str) -> Result<Instance, InstanceError> {
        RawInstance::from_json(text)?.validate()
    }

    pub fn to_raw(&self) -> RawInstance {
        let edges = self
            .edges
            .iter()
            .enumerate()
            .map(|(i, &(u, v))| RawEdge { u, v, cost: self.costs.as_ref().map(|c| c[i]) })
            .collect();
        RawInstance {
            version: SCHEMA_VERSION,
            variant: self.variant,
            n: self.n(),
            weights: self.weights.clone(),
            values: self.values.clone(),
            edges,
            s: self.s,
            d: self.d,
            x: self.terminals.map(|t| t.0),
            y: self.terminals.map(|t| t.1),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&self.to_raw()).expect("instance serialises")
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    pub fn n(&self) -> usize {
        self.weights.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn weights(&self) -> &[u64] {
        &self.weights
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn weight(&self, u: usize) -> u64 {
        self.weights[u]
    }

    pub fn value(&self, u: usize) -> u64 {
        self.values[u]
    }

    pub fn s(&self) -> u64 {
        self.s
    }

    pub fn d(&self) -> Option<u64> {
        self.d
    }

    pub fn terminals(&self) -> Option<(usize, usize)> {
        self.terminals
    }

    /// Edge costs aligned with [`Instance::edges`]; present only for shortest-path instances.
    pub fn costs(&self) -> Option<&[u64]> {
        self.costs.as_deref()
    }

    /// Cost of the `i`-th edge; 1 when the instance carries no costs.
    pub fn edge_cost(&self, i: usize) -> u64 {
        self.costs.as_ref().map_or(1, |c| c[i])
    }

    pub fn neighbors(&self, u: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[u].iter().map(|&(v, _)| v)
    }

    /// `(neighbour, edge index)` pairs of `u`, sorted by neighbour.
    pub fn incident(&self, u: usize) -> &[(usize, usize)] {
        &self.adjacency[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adjacency[u].len()
    }

    pub fn edge_index(&self, u: usize, v: usize) -> Option<usize> {
        let list = self.adjacency.get(u)?;
        list.binary_search_by_key(&v, |&(w, _)| w).ok().map(|i| list[i].1)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.edge_index(u, v).is_some()
    }

    pub fn total_value(&self) -> u64 {
        self.values.iter().sum()
    }

    pub fn weight_of(&self, set: &[usize]) -> u64 {
        set.iter().map(|&u| self.weights[u]).sum()
    }

    pub fn value_of(&self, set: &[usize]) -> u64 {
        set.iter().map(|&u| self.values[u]).sum()
    }

    /// Acyclic (every component is a tree).
    pub fn is_forest(&self) -> bool {
        let mut parent: Vec<usize> = (0..self.n()).collect();
        fn find(parent: &mut [usize], mut a: usize) -> usize {
            while parent[a] != a {
                parent[a] = parent[parent[a]];
                a = parent[a];
            }
            a
        }
        for &(a, b) in &self.edges {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return false;
            }
            parent[ra] = rb;
        }
        true
    }

    pub fn with_values(&self, values: Vec<u64>) -> Instance {
        assert_eq!(values.len(), self.n());
        Instance { values, ..self.clone() }
    }

    pub fn with_weights(&self, weights: Vec<u64>) -> Instance {
        assert_eq!(weights.len(), self.n());
        Instance { weights, ..self.clone() }
    }

    pub fn with_target(&self, d: Option<u64>) -> Instance {
        Instance { d, ..self.clone() }
    }

    pub fn with_capacity(&self, s: u64) -> Instance {
        Instance { s, ..self.clone() }
    }

    pub fn with_terminals(&self, x: usize, y: usize) -> Instance {
        assert!(self.variant.needs_terminals() && x < self.n() && y < self.n());
        Instance { terminals: Some((x, y)), ..self.clone() }
    }
}

/// Convenience constructor for instances built in code.
#[derive(Clone, Debug)]
pub struct InstanceBuilder {
    raw: RawInstance,
}

impl InstanceBuilder {
    pub fn new(variant: Variant, n: usize) -> Self {
        InstanceBuilder {
            raw: RawInstance {
                version: SCHEMA_VERSION,
                variant,
                n,
                weights: vec![0; n],
                values: vec![0; n],
                edges: Vec::new(),
                s: 0,
                d: None,
                x: None,
                y: None,
            },
        }
    }

    pub fn edge(mut self, u: usize, v: usize) -> Self {
        self.raw.edges.push(RawEdge::new(u, v));
        self
    }

    pub fn edges<I: IntoIterator<Item = (usize, usize)>>(mut self, edges: I) -> Self {
        self.raw.edges.extend(edges.into_iter().map(|(u, v)| RawEdge::new(u, v)));
        self
    }

    pub fn costed_edge(mut self, u: usize, v: usize, cost: u64) -> Self {
        self.raw.edges.push(RawEdge::with_cost(u, v, cost));
        self
    }

    pub fn weights(mut self, weights: Vec<u64>) -> Self {
        self.raw.weights = weights;
        self
    }

    pub fn values(mut self, values: Vec<u64>) -> Self {
        self.raw.values = values;
        self
    }

    pub fn capacity(mut self, s: u64) -> Self {
        self.raw.s = s;
        self
    }

    pub fn target(mut self, d: u64) -> Self {
        self.raw.d = Some(d);
        self
    }

    pub fn terminals(mut self, x: usize, y: usize) -> Self {
        self.raw.x = Some(x);
        self.raw.y = Some(y);
        self
    }

    pub fn raw(self) -> RawInstance {
        self.raw
    }

    pub fn build(self) -> Result<Instance, InstanceError> {
        self.raw.validate()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(variant: Variant, n: usize, edges: Vec<RawEdge>) -> RawInstance {
        RawInstance {
            version: 1,
            variant,
            n,
            weights: vec![1; n],
            values: vec![1; n],
            edges,
            s: 0,
            d: Some(0),
            x: variant.needs_terminals().then_some(0),
            y: variant.needs_terminals().then_some(n.saturating_sub(1)),
        }
    }

    #[test]
    fn single_vertex_is_valid() {
        let inst = raw(Variant::Connected, 1, vec![]).validate().unwrap();
        assert_eq!(inst.n(), 1);
        assert!(inst.edges().is_empty());
    }

    #[test]
    fn zero_cost_rejected_for_shortest_path() {
        let r = raw(Variant::ShortestPath, 3, vec![RawEdge::with_cost(0, 1, 2), RawEdge::with_cost(1, 2, 0)]);
        assert_eq!(r.validate(), Err(InstanceError::ZeroEdgeCost(1, 2)));
    }

    #[test]
    fn self_loop_rejected() {
        let r = raw(Variant::Connected, 4, vec![RawEdge::new(3, 3)]);
        assert_eq!(r.validate(), Err(InstanceError::SelfLoop(3)));
    }

    #[test]
    fn duplicate_edges_detected_in_either_orientation() {
        let r = raw(Variant::Connected, 3, vec![RawEdge::new(0, 1), RawEdge::new(1, 0)]);
        assert_eq!(r.validate(), Err(InstanceError::DuplicateEdge(0, 1)));
    }

    #[test]
    fn out_of_range_ids() {
        let r = raw(Variant::Connected, 2, vec![RawEdge::new(0, 2)]);
        assert_eq!(r.validate(), Err(InstanceError::IdOutOfRange { id: 2, n: 2 }));
        let mut r = raw(Variant::Path, 2, vec![]);
        r.y = Some(5);
        assert_eq!(r.validate(), Err(InstanceError::IdOutOfRange { id: 5, n: 2 }));
    }

    #[test]
    fn terminals_required_for_path_variants() {
        let mut r = raw(Variant::Path, 2, vec![]);
        r.x = None;
        assert_eq!(r.validate(), Err(InstanceError::MissingTerminal(Variant::Path)));
    }

    #[test]
    fn edge_order_is_normalised() {
        let r = raw(Variant::Connected, 3, vec![RawEdge::new(2, 1), RawEdge::new(1, 0)]);
        let inst = r.validate().unwrap();
        assert_eq!(inst.edges(), &[(0, 1), (1, 2)]);
        assert_eq!(inst.neighbors(1).collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(inst.edge_index(2, 1), Some(1));
    }

    #[test]
    fn json_roundtrip_and_unknown_fields() {
        let text = r#"{"version":1,"variant":"shortest_path","n":3,"weights":[0,1,0],"values":[0,2,0],
            "edges":[[0,1,2],[1,2,1]],"s":4,"x":0,"y":2}"#;
        let inst = Instance::from_json(text).unwrap();
        assert_eq!(inst.costs(), Some(&[2, 1][..]));
        assert_eq!(Instance::from_json(&inst.to_json()).unwrap(), inst);

        let bad = r#"{"version":1,"variant":"connected","n":1,"weights":[0],"values":[0],"edges":[],"s":0,"color":3}"#;
        assert!(matches!(Instance::from_json(bad), Err(InstanceError::Json(_))));
    }

    #[test]
    fn cost_presence_must_match_variant() {
        let r = raw(Variant::Connected, 2, vec![RawEdge::with_cost(0, 1, 1)]);
        assert_eq!(r.validate(), Err(InstanceError::UnexpectedEdgeCost(0, 1)));
        let r = raw(Variant::ShortestPath, 2, vec![RawEdge::new(0, 1)]);
        assert_eq!(r.validate(), Err(InstanceError::MissingEdgeCost(0, 1)));
    }

    #[test]
    fn forest_detection() {
        let tree = raw(Variant::Connected, 3, vec![RawEdge::new(0, 1), RawEdge::new(1, 2)]);
        assert!(tree.validate().unwrap().is_forest());
        let tri = raw(Variant::Connected, 3, vec![RawEdge::new(0, 1), RawEdge::new(1, 2), RawEdge::new(0, 2)]);
        assert!(!tri.validate().unwrap().is_forest());
    }
}
