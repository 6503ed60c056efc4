use super::PathError;
use crate::decomposition::{build_nice_decomposition, elimination_order_minfill, NiceDecomposition};
use crate::dp::{self, Labels, Rules};
use crate::model::{Instance, Pair, ParetoSet, SolveReport, SolveStats, Variant};
use std::time::Instant;

// Per-position codes.
const OUT: u8 = 0;
const ISOLATED: u8 = 1;
const INTERIOR: u8 = 2;
const END: u8 = 3; // END + p: segment endpoint whose other end sits at position p

fn degree(code: u8) -> u8 {
    match code {
        OUT | ISOLATED => 0,
        INTERIOR => 2,
        _ => 1,
    }
}

fn with_degree_one(partner: usize) -> u8 {
    END + partner as u8
}

/// Segment states for `x`–`y` paths. The partial solution below a node is a
/// disjoint union of paths whose endpoints all lie in the bag; each in-solution
/// bag vertex records its degree and, for degree one, the opposite endpoint.
pub struct PathRules {
    pub x: usize,
    pub y: usize,
}

impl PathRules {
    fn capacity(&self, v: usize) -> u8 {
        if v == self.x || v == self.y {
            1
        } else {
            2
        }
    }
}

fn shift_partners(labels: &mut [u8], from: usize, up: bool) {
    for l in labels.iter_mut() {
        if *l >= END && (*l - END) as usize >= from {
            if up {
                *l += 1;
            } else {
                *l -= 1;
            }
        }
    }
}

impl Rules for PathRules {
    fn leaf(&self, bag: &[usize]) -> Vec<Labels> {
        vec![vec![ISOLATED; bag.len()]]
    }

    fn introduce_vertex(&self, labels: &[u8], pos: usize, _bag: &[usize]) -> Vec<Labels> {
        let mut base = labels.to_vec();
        shift_partners(&mut base, pos, true);
        let mut outside = base.clone();
        outside.insert(pos, OUT);
        base.insert(pos, ISOLATED);
        vec![outside, base]
    }

    fn introduce_edge(&self, labels: &[u8], a: usize, b: usize, bag: &[usize]) -> Vec<Labels> {
        let mut out = vec![labels.to_vec()];
        let (la, lb) = (labels[a], labels[b]);
        if la == OUT || lb == OUT || degree(la) >= self.capacity(bag[a]) || degree(lb) >= self.capacity(bag[b]) {
            return out;
        }
        let end_of = |p: usize, l: u8| if l == ISOLATED { p } else { (l - END) as usize };
        let (ea, eb) = (end_of(a, la), end_of(b, lb));
        if ea == b {
            return out;
        }
        let mut next = labels.to_vec();
        if la != ISOLATED {
            next[a] = INTERIOR;
        }
        if lb != ISOLATED {
            next[b] = INTERIOR;
        }
        next[ea] = with_degree_one(eb);
        next[eb] = with_degree_one(ea);
        out.push(next);
        out
    }

    fn forget(&self, labels: &[u8], pos: usize, _child_bag: &[usize]) -> Option<Labels> {
        // Vertices of degree below two could never be completed once gone.
        if labels[pos] != OUT && labels[pos] != INTERIOR {
            return None;
        }
        let mut next = labels.to_vec();
        next.remove(pos);
        shift_partners(&mut next, pos, false);
        Some(next)
    }

    fn join(&self, left: &[u8], right: &[u8], bag: &[usize]) -> Option<Labels> {
        let k = left.len();
        let mut next = vec![OUT; k];
        let mut pending = vec![false; k];
        // Each child segment becomes a virtual edge between its endpoints.
        let mut virt: Vec<Vec<usize>> = vec![Vec::new(); k];
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        for i in 0..k {
            if left[i] == OUT {
                continue;
            }
            let d = degree(left[i]) + degree(right[i]);
            if d > self.capacity(bag[i]) {
                return None;
            }
            next[i] = match d {
                0 => ISOLATED,
                2 => INTERIOR,
                _ => {
                    pending[i] = true;
                    OUT
                }
            };
            for side in [left, right] {
                if side[i] >= END {
                    let p = (side[i] - END) as usize;
                    if p > i {
                        let (ri, rp) = (find(&mut parent, i), find(&mut parent, p));
                        if ri == rp {
                            return None;
                        }
                        parent[ri] = rp;
                        virt[i].push(p);
                        virt[p].push(i);
                    }
                }
            }
        }
        for i in 0..k {
            if !pending[i] {
                continue;
            }
            let (mut prev, mut cur) = (i, virt[i][0]);
            while virt[cur].len() == 2 {
                let step = if virt[cur][0] == prev { virt[cur][1] } else { virt[cur][0] };
                prev = cur;
                cur = step;
            }
            next[i] = with_degree_one(cur);
            next[cur] = with_degree_one(i);
            pending[cur] = false;
        }
        Some(next)
    }

    fn accept(&self, labels: &[u8], bag: &[usize]) -> bool {
        let px = bag.binary_search(&self.x).expect("x pinned");
        let py = bag.binary_search(&self.y).expect("y pinned");
        labels[px] == with_degree_one(py) && labels[py] == with_degree_one(px)
    }
}

/// Exact frontier over all `x`–`y` paths; `nd` must be pinned at `{x, y}`.
pub fn solve_path_treewidth(inst: &Instance, nd: &NiceDecomposition) -> Result<SolveReport, PathError> {
    let started = Instant::now();
    let (x, y) = inst.terminals().ok_or(PathError::NoTerminals)?;
    if inst.variant() != Variant::Path {
        return Err(PathError::WrongVariant(inst.variant()));
    }
    let mut pinned = vec![x, y];
    pinned.sort_unstable();
    pinned.dedup();
    assert_eq!(nd.pinned, pinned, "decomposition must be pinned at the terminals");
    let mut stats = SolveStats::new("treewidth");
    stats.width = Some(nd.width);
    stats.nodes_expanded = nd.nodes.len() as u64;
    if x == y {
        let frontier = ParetoSet::singleton(Pair::new(inst.weight(x), inst.value(x)), inst.s());
        stats.set_wall_time(started.elapsed());
        return Ok(SolveReport::from_frontier(inst, frontier, stats, |_| vec![x]));
    }
    let tables = dp::run(inst, nd, &PathRules { x, y });
    stats.states_touched = tables.states_touched;
    stats.set_wall_time(started.elapsed());
    let frontier = tables.frontier();
    Ok(SolveReport::from_frontier(inst, frontier, stats, |pair| {
        tables.reconstruct(pair).expect("frontier pair has a back-pointer chain")
    }))
}

/// Builds a min-fill decomposition pinned at the terminals and runs the DP.
pub fn solve_path_treewidth_with(inst: &Instance, seed: u64) -> Result<SolveReport, PathError> {
    let (x, y) = inst.terminals().ok_or(PathError::NoTerminals)?;
    let order = elimination_order_minfill(inst, seed);
    let nd = build_nice_decomposition(inst, &order, &[x, y])?;
    solve_path_treewidth(inst, &nd)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::InstanceBuilder;

    #[test]
    fn introduce_edge_links_segments() {
        let r = PathRules { x: 0, y: 9 };
        let bag = [0, 1, 2, 9];
        // 1 and 2 isolated: linking makes them partners
        let next = r.introduce_edge(&[ISOLATED, ISOLATED, ISOLATED, ISOLATED], 1, 2, &bag);
        assert_eq!(next[1], vec![ISOLATED, END + 2, END + 1, ISOLATED]);
        // closing a segment into a cycle is refused
        let next = r.introduce_edge(&[ISOLATED, END + 2, END + 1, ISOLATED], 1, 2, &bag);
        assert_eq!(next.len(), 1);
        // terminals take at most one edge
        let next = r.introduce_edge(&[END + 1, END, ISOLATED, ISOLATED], 0, 2, &bag);
        assert_eq!(next.len(), 1);
    }

    #[test]
    fn join_rejects_cycles_and_merges_segments() {
        let r = PathRules { x: 0, y: 3 };
        let bag = [0, 1, 2, 3];
        // left: 0-1 segment; right: 1-3 segment → 0..3 via 1
        let left = [END + 1, END, ISOLATED, ISOLATED];
        let right = [ISOLATED, END + 3, ISOLATED, END + 1];
        assert_eq!(r.join(&left, &right, &bag), Some(vec![END + 3, INTERIOR, ISOLATED, END]));
        // both children connect 1 and 2: cycle
        let both = [ISOLATED, END + 2, END + 1, ISOLATED];
        assert_eq!(r.join(&both, &both, &bag), None);
    }

    fn solve(inst: &Instance) -> SolveReport {
        solve_path_treewidth_with(inst, 0).unwrap()
    }

    #[test]
    fn path_graph_and_edgeless_pair() {
        let inst = InstanceBuilder::new(Variant::Path, 3)
            .edges([(0, 1), (1, 2)])
            .weights(vec![1, 1, 1])
            .values(vec![1, 1, 1])
            .terminals(0, 2)
            .capacity(3)
            .build()
            .unwrap();
        let r = solve(&inst);
        assert_eq!(r.frontier.pairs(), &[Pair::new(3, 3)]);
        assert_eq!(r.witness, Some(vec![0, 1, 2]));
        let lonely = InstanceBuilder::new(Variant::Path, 2).terminals(0, 1).capacity(5).build().unwrap();
        assert!(!solve(&lonely).feasible);
    }

    #[test]
    fn two_item_ladder() {
        // u0=0, u1=1, u2=2, v1=3, v2=4, w1=5, w2=6; v-rungs carry the items
        let inst = InstanceBuilder::new(Variant::Path, 7)
            .edges([(0, 3), (0, 5), (1, 3), (1, 5), (1, 4), (1, 6), (2, 4), (2, 6)])
            .weights(vec![0, 0, 0, 2, 3, 0, 0])
            .values(vec![0, 0, 0, 3, 4, 0, 0])
            .terminals(0, 2)
            .capacity(5)
            .target(7)
            .build()
            .unwrap();
        let r = solve(&inst);
        assert!(r.feasible);
        assert_eq!(r.witness, Some(vec![0, 1, 2, 3, 4]));
        assert_eq!(r.frontier.len(), 4);
    }
}
