use super::graph::{hamiltonian_path, induces_connected, shortest_distances};
use super::{Instance, Variant};
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerifyFailure {
    UnknownVertex,
    Disconnected,
    MissingTerminal,
    NotAPath,
    NotShortest,
    OverCapacity,
    BelowTarget,
}

impl fmt::Display for VerifyFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text = match self {
            VerifyFailure::UnknownVertex => "unknown_vertex",
            VerifyFailure::Disconnected => "disconnected",
            VerifyFailure::MissingTerminal => "missing_terminal",
            VerifyFailure::NotAPath => "not_a_path",
            VerifyFailure::NotShortest => "not_shortest",
            VerifyFailure::OverCapacity => "over_capacity",
            VerifyFailure::BelowTarget => "below_target",
        };
        f.write_str(text)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub weight: u64,
    pub value: u64,
    pub ok: bool,
    pub reason: Option<VerifyFailure>,
}

/// Checks `set` against the instance's structural constraint, the capacity,
/// and (when the instance carries one) the target value. Duplicates in `set` are ignored.
pub fn verify_solution(inst: &Instance, set: &[usize]) -> Verification {
    let n = inst.n();
    if set.iter().any(|&u| u >= n) {
        return Verification { weight: 0, value: 0, ok: false, reason: Some(VerifyFailure::UnknownVertex) };
    }
    let mut members = vec![false; n];
    for &u in set {
        members[u] = true;
    }
    let chosen: Vec<usize> = (0..n).filter(|&u| members[u]).collect();
    let weight = inst.weight_of(&chosen);
    let value = inst.value_of(&chosen);

    let structural = match inst.variant() {
        Variant::Connected => check_connected(inst, &members),
        Variant::Path => check_path(inst, &members, &chosen),
        Variant::ShortestPath => check_shortest_path(inst, &members, &chosen),
    };
    let reason = structural.err().or_else(|| {
        if weight > inst.s() {
            Some(VerifyFailure::OverCapacity)
        } else if inst.d().is_some_and(|d| value < d) {
            Some(VerifyFailure::BelowTarget)
        } else {
            None
        }
    });
    Verification { weight, value, ok: reason.is_none(), reason }
}

fn check_connected(inst: &Instance, members: &[bool]) -> Result<(), VerifyFailure> {
    if induces_connected(inst, members) {
        Ok(())
    } else {
        Err(VerifyFailure::Disconnected)
    }
}

fn terminals(inst: &Instance, members: &[bool]) -> Result<(usize, usize), VerifyFailure> {
    let (x, y) = inst.terminals().expect("validated path instance has terminals");
    if members[x] && members[y] {
        Ok((x, y))
    } else {
        Err(VerifyFailure::MissingTerminal)
    }
}

fn check_path(inst: &Instance, members: &[bool], chosen: &[usize]) -> Result<(), VerifyFailure> {
    let (x, y) = terminals(inst, members)?;
    let induced_degree = |u: usize| inst.neighbors(u).filter(|&v| members[v]).count();
    let chain_shaped =
        x != y && induced_degree(x) == 1 && induced_degree(y) == 1 && chosen.iter().all(|&u| induced_degree(u) <= 2);
    let found = if chain_shaped {
        walk_chain(inst, members, chosen.len(), x, y)
    } else {
        hamiltonian_path(inst, members, x, y).is_some()
    };
    if found {
        Ok(())
    } else {
        Err(VerifyFailure::NotAPath)
    }
}

// Terminals of induced degree one and everything else at most two: the only
// candidate is the chain starting at x.
fn walk_chain(inst: &Instance, members: &[bool], total: usize, x: usize, y: usize) -> bool {
    let (mut prev, mut cur, mut len) = (usize::MAX, x, 1);
    while cur != y {
        let Some(next) = inst.neighbors(cur).find(|&v| members[v] && v != prev) else {
            return false;
        };
        if next == x {
            return false;
        }
        prev = cur;
        cur = next;
        len += 1;
    }
    len == total
}

fn check_shortest_path(inst: &Instance, members: &[bool], chosen: &[usize]) -> Result<(), VerifyFailure> {
    let (x, y) = terminals(inst, members)?;
    let dist = shortest_distances(inst, x);
    if dist[y].is_none() {
        return Err(VerifyFailure::NotAPath);
    }
    // Positive costs: a shortest path visits vertices in strictly increasing distance from x
    // along tight edges only.
    let mut order: Vec<(u64, usize)> = Vec::with_capacity(chosen.len());
    for &u in chosen {
        match dist[u] {
            Some(d) => order.push((d, u)),
            None => return Err(VerifyFailure::NotAPath),
        }
    }
    order.sort_unstable();
    if order.first().map(|p| p.1) != Some(x) || order.last().map(|p| p.1) != Some(y) {
        return Err(VerifyFailure::NotShortest);
    }
    for pair in order.windows(2) {
        let ((da, a), (db, b)) = (pair[0], pair[1]);
        match inst.edge_index(a, b) {
            Some(e) if da + inst.edge_cost(e) == db => {}
            Some(_) => return Err(VerifyFailure::NotShortest),
            None => {
                return Err(if hamiltonian_path(inst, members, x, y).is_some() {
                    VerifyFailure::NotShortest
                } else {
                    VerifyFailure::NotAPath
                })
            }
        }
    }
    Ok(())
}
