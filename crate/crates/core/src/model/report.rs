use super::{Instance, Pair, ParetoSet};
use serde::{Deserialize, Serialize};
use std::time::Duration;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub engine: String,
    /// Decomposition nodes, settled vertices or colour-table cells processed.
    pub nodes_expanded: u64,
    /// DP states / labels materialised.
    pub states_touched: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_us: Option<u64>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub unreachable: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<u64>,
}

impl SolveStats {
    pub fn new(engine: &str) -> Self {
        SolveStats { engine: engine.to_string(), ..SolveStats::default() }
    }

    pub fn set_wall_time(&mut self, elapsed: Duration) {
        self.wall_time_us = Some(elapsed.as_micros() as u64);
    }
}

/// Outcome of a solver run.
///
/// `feasible` answers the decision question when the instance has a target `d`;
/// without one it reports whether any solution exists.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveReport {
    pub feasible: bool,
    pub best_value: Option<u64>,
    pub witness: Option<Vec<usize>>,
    pub frontier: ParetoSet,
    pub stats: SolveStats,
}

impl SolveReport {
    /// The frontier pair a witness should realise: the most valuable one,
    /// provided it meets the target.
    pub fn target_pair(inst: &Instance, frontier: &ParetoSet) -> Option<Pair> {
        let best = frontier.best()?;
        match inst.d() {
            Some(d) if best.value < d => None,
            _ => Some(best),
        }
    }

    /// Builds a report from a frontier, asking `realise` for a witness of the chosen pair.
    pub fn from_frontier<F>(inst: &Instance, frontier: ParetoSet, stats: SolveStats, realise: F) -> SolveReport
    where
        F: FnOnce(Pair) -> Vec<usize>,
    {
        let target = SolveReport::target_pair(inst, &frontier);
        let witness = target.map(|pair| {
            let mut set = realise(pair);
            set.sort_unstable();
            set
        });
        SolveReport {
            feasible: target.is_some(),
            best_value: frontier.best().map(|p| p.value),
            witness,
            frontier,
            stats,
        }
    }

    pub fn infeasible(stats: SolveStats) -> SolveReport {
        SolveReport { feasible: false, best_value: None, witness: None, frontier: ParetoSet::new(), stats }
    }
}
