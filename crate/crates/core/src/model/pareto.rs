use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Total weight and total value of a partial or complete solution.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Pair {
    pub weight: u64,
    pub value: u64,
}

impl Pair {
    pub const ZERO: Pair = Pair { weight: 0, value: 0 };

    pub const fn new(weight: u64, value: u64) -> Self {
        Pair { weight, value }
    }

    /// `self` is at most as heavy and at least as valuable as `other`.
    pub fn dominates(&self, other: &Pair) -> bool {
        self.weight <= other.weight && self.value >= other.value
    }

    pub fn add(&self, weight: u64, value: u64) -> Pair {
        Pair::new(self.weight + weight, self.value + value)
    }
}

impl From<(u64, u64)> for Pair {
    fn from((weight, value): (u64, u64)) -> Self {
        Pair::new(weight, value)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParetoError {
    #[error("combined pair ({weight}, {value}) minus offset ({offset_weight}, {offset_value}) is negative")]
    NegativeCombined { weight: u64, value: u64, offset_weight: u64, offset_value: u64 },
}

/// Mutually undominated `(weight, value)` pairs, kept strictly increasing in
/// both coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ParetoSet {
    pairs: Vec<Pair>,
}

impl ParetoSet {
    pub fn new() -> Self {
        ParetoSet { pairs: Vec::new() }
    }

    pub fn singleton(pair: Pair, cap: u64) -> Self {
        let mut set = ParetoSet::new();
        set.insert_in_place(pair, cap);
        set
    }

    /// Undominated closure of `pairs`, dropping every pair heavier than `cap`.
    pub fn from_pairs<I>(pairs: I, cap: u64) -> Self
    where
        I: IntoIterator<Item = Pair>,
    {
        let mut pairs: Vec<Pair> = pairs.into_iter().filter(|p| p.weight <= cap).collect();
        retain_undominated(&mut pairs, |p| *p);
        ParetoSet { pairs }
    }

    pub fn pairs(&self) -> &[Pair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Pair> {
        self.pairs.iter()
    }

    /// Returns a new set; `self` is left untouched.
    pub fn insert(&self, pair: Pair, cap: u64) -> ParetoSet {
        let mut out = self.clone();
        out.insert_in_place(pair, cap);
        out
    }

    /// Inserts `pair` unless it is heavier than `cap` or already dominated.
    /// Returns whether the set changed.
    pub fn insert_in_place(&mut self, pair: Pair, cap: u64) -> bool {
        if pair.weight > cap {
            return false;
        }
        // First index with weight >= pair.weight.
        let pos = self.pairs.partition_point(|p| p.weight < pair.weight);
        if pos > 0 && self.pairs[pos - 1].value >= pair.value {
            return false;
        }
        if pos < self.pairs.len() && self.pairs[pos].weight == pair.weight && self.pairs[pos].value >= pair.value {
            return false;
        }
        let end = pos + self.pairs[pos..].iter().take_while(|p| p.value <= pair.value).count();
        self.pairs.splice(pos..end, std::iter::once(pair));
        true
    }

    pub fn union(&self, other: &ParetoSet, cap: u64) -> ParetoSet {
        ParetoSet::from_pairs(self.pairs.iter().chain(other.pairs.iter()).copied(), cap)
    }

    /// Pairwise sums of `a` and `b`, minus the doubly counted offset.
    pub fn join(
        a: &ParetoSet,
        b: &ParetoSet,
        offset_weight: u64,
        offset_value: u64,
        cap: u64,
    ) -> Result<ParetoSet, ParetoError> {
        let mut combined = Vec::with_capacity(a.len() * b.len());
        for p in &a.pairs {
            for q in &b.pairs {
                let weight = p.weight + q.weight;
                let value = p.value + q.value;
                if weight < offset_weight || value < offset_value {
                    return Err(ParetoError::NegativeCombined { weight, value, offset_weight, offset_value });
                }
                combined.push(Pair::new(weight - offset_weight, value - offset_value));
            }
        }
        Ok(ParetoSet::from_pairs(combined, cap))
    }

    /// The most valuable pair; with strictly increasing coordinates it is the last one.
    pub fn best(&self) -> Option<Pair> {
        self.pairs.last().copied()
    }

    /// Lightest pair reaching at least `target` value.
    pub fn lightest_reaching(&self, target: u64) -> Option<Pair> {
        self.pairs.iter().find(|p| p.value >= target).copied()
    }

    pub fn is_canonical(&self) -> bool {
        self.pairs.windows(2).all(|w| w[0].weight < w[1].weight && w[0].value < w[1].value)
    }
}

impl<'a> IntoIterator for &'a ParetoSet {
    type Item = &'a Pair;
    type IntoIter = std::slice::Iter<'a, Pair>;

    fn into_iter(self) -> Self::IntoIter {
        self.pairs.iter()
    }
}

/// Reduces `items` to its undominated members, sorted by increasing weight.
///
/// Equal weights keep the largest value; among exact duplicates the earliest
/// item survives, so the result only depends on the input order through ties.
pub fn retain_undominated<T, F>(items: &mut Vec<T>, key: F)
where
    F: Fn(&T) -> Pair,
{
    items.sort_by(|a, b| {
        let (ka, kb) = (key(a), key(b));
        ka.weight.cmp(&kb.weight).then(kb.value.cmp(&ka.value))
    });
    let mut best: Option<u64> = None;
    items.retain(|item| {
        let value = key(item).value;
        match best {
            Some(b) if value <= b => false,
            _ => {
                best = Some(value);
                true
            }
        }
    });
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(pairs: &[(u64, u64)]) -> ParetoSet {
        ParetoSet::from_pairs(pairs.iter().map(|&p| Pair::from(p)), u64::MAX)
    }

    #[test]
    fn insert_without_dominance() {
        let s = set(&[(1, 5), (3, 8)]).insert(Pair::new(2, 6), 100);
        assert_eq!(s, set(&[(1, 5), (2, 6), (3, 8)]));
    }

    #[test]
    fn insert_dominated_pair_is_dropped() {
        let base = set(&[(1, 5)]);
        let s = base.insert(Pair::new(2, 4), 100);
        assert_eq!(s, base);
    }

    #[test]
    fn insert_dominating_pair_clears_everything() {
        let s = set(&[(1, 5), (3, 8)]).insert(Pair::new(0, 9), 100);
        assert_eq!(s, set(&[(0, 9)]));
    }

    #[test]
    fn insert_leaves_input_untouched() {
        let base = set(&[(1, 5), (3, 8)]);
        let before = base.clone();
        let _ = base.insert(Pair::new(0, 9), 100);
        assert_eq!(base, before);
    }

    #[test]
    fn insert_respects_cap() {
        let s = set(&[(1, 5)]).insert(Pair::new(4, 9), 3);
        assert_eq!(s, set(&[(1, 5)]));
    }

    #[test]
    fn insert_equal_weight_keeps_larger_value() {
        let s = set(&[(2, 3)]).insert(Pair::new(2, 7), 10);
        assert_eq!(s, set(&[(2, 7)]));
        let s = set(&[(2, 7)]).insert(Pair::new(2, 3), 10);
        assert_eq!(s, set(&[(2, 7)]));
    }

    #[test]
    fn join_over_shared_bag() {
        let a = set(&[(2, 3)]);
        let j = ParetoSet::join(&a, &a, 2, 3, 10).unwrap();
        assert_eq!(j, set(&[(2, 3)]));
    }

    #[test]
    fn join_with_neutral_element() {
        let j = ParetoSet::join(&set(&[(0, 0)]), &set(&[(4, 7)]), 0, 0, 10).unwrap();
        assert_eq!(j, set(&[(4, 7)]));
    }

    #[test]
    fn join_drops_products_over_cap() {
        // (1,1)+(1,2) = (2,3) kept; (2,5)+(1,2) = (3,7) exceeds cap 2.
        let j = ParetoSet::join(&set(&[(1, 1), (2, 5)]), &set(&[(1, 2)]), 0, 0, 2).unwrap();
        assert_eq!(j, set(&[(2, 3)]));
    }

    #[test]
    fn join_reports_negative_offsets() {
        let err = ParetoSet::join(&set(&[(1, 1)]), &set(&[(0, 0)]), 2, 0, 10).unwrap_err();
        assert!(matches!(err, ParetoError::NegativeCombined { .. }));
    }

    fn brute_frontier(pairs: &[(u64, u64)], cap: u64) -> Vec<Pair> {
        let mut out: Vec<Pair> = pairs
            .iter()
            .map(|&p| Pair::from(p))
            .filter(|p| p.weight <= cap)
            .filter(|p| !pairs.iter().map(|&q| Pair::from(q)).any(|q| q.weight <= cap && q != *p && q.dominates(p)))
            .collect();
        out.sort();
        out.dedup();
        out
    }

    proptest! {
        #[test]
        fn insertion_order_does_not_matter(
            pairs in proptest::collection::vec((0u64..12, 0u64..12), 0..24),
            cap in 0u64..14,
            seed in any::<u64>(),
        ) {
            let forward = pairs.iter().fold(ParetoSet::new(), |s, &p| s.insert(p.into(), cap));
            let mut shuffled = pairs.clone();
            // cheap deterministic shuffle
            let mut state = seed | 1;
            for i in (1..shuffled.len()).rev() {
                state ^= state << 13; state ^= state >> 7; state ^= state << 17;
                shuffled.swap(i, (state % (i as u64 + 1)) as usize);
            }
            let backward = shuffled.iter().fold(ParetoSet::new(), |s, &p| s.insert(p.into(), cap));
            prop_assert_eq!(&forward, &backward);
            prop_assert_eq!(&forward, &ParetoSet::from_pairs(pairs.iter().map(|&p| p.into()), cap));
            prop_assert!(forward.is_canonical());
            prop_assert_eq!(forward.pairs().to_vec(), brute_frontier(&pairs, cap));
            // idempotence
            let again = pairs.iter().fold(forward.clone(), |s, &p| s.insert(p.into(), cap));
            prop_assert_eq!(again, forward);
        }

        #[test]
        fn join_matches_enumeration(
            a in proptest::collection::vec((0u64..8, 0u64..8), 0..6),
            b in proptest::collection::vec((0u64..8, 0u64..8), 0..6),
            cap in 0u64..16,
        ) {
            let sa = ParetoSet::from_pairs(a.iter().map(|&p| p.into()), u64::MAX);
            let sb = ParetoSet::from_pairs(b.iter().map(|&p| p.into()), u64::MAX);
            let joined = ParetoSet::join(&sa, &sb, 0, 0, cap).unwrap();
            let mut products = Vec::new();
            for p in &a { for q in &b { products.push((p.0 + q.0, p.1 + q.1)); } }
            prop_assert_eq!(joined.pairs().to_vec(), brute_frontier(&products, cap));
        }
    }
}
