//! Value-scaling approximation on top of any exact solver.
//!
//! Values are rescaled to `⌊n·α(u)/(ε·α_max)⌋`, the exact solver runs on the
//! rescaled instance, and its witness is re-evaluated with the original values.
//!
//! For connected sets the largest usable value is a lower bound on the optimum.
//! For the path variants it need not be (the most valuable vertex may sit on no
//! feasible path), so those run once per candidate threshold `τ` taken from the
//! distinct usable values, with scaled values capped at `⌊n/ε⌋`, and keep the
//! best witness found.

use crate::model::{Instance, Pair, ParetoSet, SolveReport, SolveStats, Variant};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ApproxError {
    #[error("epsilon must be a rational NUM/DEN in (0, 1], got {0:?}")]
    BadEpsilon(String),
    #[error("exact solver failed: {0}")]
    Solver(String),
}

/// An exact rational in `(0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Epsilon {
    num: u64,
    den: u64,
}

impl Epsilon {
    pub fn new(num: u64, den: u64) -> Result<Self, ApproxError> {
        if num == 0 || den == 0 || num > den {
            return Err(ApproxError::BadEpsilon(format!("{num}/{den}")));
        }
        Ok(Epsilon { num, den })
    }

    pub fn num(self) -> u64 {
        self.num
    }

    pub fn den(self) -> u64 {
        self.den
    }

    /// `⌈n²/ε⌉`.
    pub fn scaled_sum_bound(self, n: usize) -> u128 {
        let top = (n as u128).pow(2) * self.den as u128;
        top.div_ceil(self.num as u128)
    }

    /// `(1 − ε)·opt ≤ value`, decided exactly.
    pub fn within(self, value: u64, opt: u64) -> bool {
        (value as u128) * self.den as u128 >= (opt as u128) * (self.den - self.num) as u128
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Epsilon {
    type Err = ApproxError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ApproxError::BadEpsilon(s.to_string());
        let (num, den) = match s.split_once('/') {
            Some((a, b)) => (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?),
            None => (s.trim().parse().map_err(|_| bad())?, 1),
        };
        Epsilon::new(num, den).map_err(|_| bad())
    }
}

/// An instance whose values were rescaled for the approximation.
#[derive(Clone, Debug)]
pub struct ScaledInstance {
    pub instance: Instance,
    pub epsilon: Epsilon,
    pub alpha_max: u64,
    /// All original values were zero; `instance` is the input unchanged.
    pub zero_value: bool,
}

impl ScaledInstance {
    pub fn scaled_values(&self) -> &[u64] {
        self.instance.values()
    }

    pub fn scaled_sum(&self) -> u64 {
        self.instance.values().iter().sum()
    }
}

fn scaled(n: usize, alpha: u64, eps: Epsilon, alpha_max: u64) -> u64 {
    let v = (n as u128 * alpha as u128 * eps.den as u128) / (eps.num as u128 * alpha_max as u128);
    v as u64
}

/// `α′(u) = ⌊n·α(u)/(ε·α_max)⌋` with `α_max` the largest value.
pub fn scale_values(inst: &Instance, eps: Epsilon) -> ScaledInstance {
    let alpha_max = inst.values().iter().copied().max().unwrap_or(0);
    if alpha_max == 0 {
        return ScaledInstance { instance: inst.clone(), epsilon: eps, alpha_max, zero_value: true };
    }
    let n = inst.n();
    let values = inst.values().iter().map(|&a| scaled(n, a, eps, alpha_max)).collect();
    ScaledInstance { instance: inst.with_values(values), epsilon: eps, alpha_max, zero_value: false }
}

/// Like [`scale_values`] against threshold `tau`, capping each scaled value at `⌊n/ε⌋`.
pub fn scale_values_capped(inst: &Instance, eps: Epsilon, tau: u64) -> ScaledInstance {
    assert!(tau > 0);
    let n = inst.n();
    let cap = scaled(n, 1, eps, 1);
    let values = inst.values().iter().map(|&a| scaled(n, a, eps, tau).min(cap)).collect();
    ScaledInstance { instance: inst.with_values(values), epsilon: eps, alpha_max: tau, zero_value: false }
}

/// One exact run on a rescaled instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScaledRun {
    pub alpha_max: u64,
    pub scaled_sum: u64,
    pub scaled_sum_bound: u128,
    pub scaled_value: Option<u64>,
    pub original_value: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ApproxReport {
    #[serde(flatten)]
    pub report: SolveReport,
    pub epsilon: Epsilon,
    /// Scaled value of the returned witness in the run that produced it.
    pub scaled_value: Option<u64>,
    pub runs: Vec<ScaledRun>,
}

/// Approximates the best value to within a factor `1 − ε`. `solver` must be
/// an exact solver for the instance's variant; it is called on rescaled
/// copies without a target.
pub fn fptas_optimize<F, E>(inst: &Instance, eps: Epsilon, mut solver: F) -> Result<ApproxReport, ApproxError>
where
    F: FnMut(&Instance) -> Result<SolveReport, E>,
    E: fmt::Display,
{
    // Vertices heavier than the knapsack can never be used; their value is dropped.
    let usable: Vec<u64> = (0..inst.n()).map(|u| if inst.weight(u) <= inst.s() { inst.value(u) } else { 0 }).collect();
    let pruned = inst.with_values(usable.clone()).with_target(None);
    let candidates: Vec<ScaledInstance> = match inst.variant() {
        Variant::Connected => vec![scale_values(&pruned, eps)],
        Variant::Path | Variant::ShortestPath => {
            let mut taus: Vec<u64> = usable.iter().copied().filter(|&a| a > 0).collect();
            taus.sort_unstable();
            taus.dedup();
            if taus.is_empty() {
                vec![scale_values(&pruned, eps)]
            } else {
                taus.into_iter().map(|t| scale_values_capped(&pruned, eps, t)).collect()
            }
        }
    };

    let mut stats = SolveStats::new("fptas");
    let mut runs = Vec::with_capacity(candidates.len());
    let mut best: Option<(Vec<usize>, u64, u64)> = None;
    for cand in &candidates {
        let r = solver(&cand.instance).map_err(|e| ApproxError::Solver(e.to_string()))?;
        stats.engine = format!("fptas+{}", r.stats.engine);
        stats.nodes_expanded += r.stats.nodes_expanded;
        stats.states_touched += r.stats.states_touched;
        stats.width = stats.width.max(r.stats.width);
        stats.unreachable |= r.stats.unreachable;
        let original_value = r.witness.as_ref().map(|w| inst.value_of(w));
        runs.push(ScaledRun {
            alpha_max: cand.alpha_max,
            scaled_sum: cand.scaled_sum(),
            scaled_sum_bound: eps.scaled_sum_bound(inst.n()),
            scaled_value: r.best_value,
            original_value,
        });
        if let (Some(w), Some(v)) = (r.witness, original_value) {
            if best.as_ref().is_none_or(|(_, _, b)| v > *b) {
                best = Some((w, r.best_value.unwrap_or(0), v));
            }
        }
    }

    let Some((witness, scaled_value, _)) = best else {
        return Ok(ApproxReport { report: SolveReport::infeasible(stats), epsilon: eps, scaled_value: None, runs });
    };
    let pair = Pair::new(inst.weight_of(&witness), inst.value_of(&witness));
    let report = SolveReport {
        feasible: inst.d().is_none_or(|d| pair.value >= d),
        best_value: Some(pair.value),
        witness: Some(witness),
        frontier: ParetoSet::singleton(pair, inst.s()),
        stats,
    };
    Ok(ApproxReport { report, epsilon: eps, scaled_value: Some(scaled_value), runs })
}
