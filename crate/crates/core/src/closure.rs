//! Closure systems given by binary rules, and enumeration of all their closed sets.
//!
//! A rule `(a, b) -> R` says that any closed set containing `a` and `b` contains every
//! element of `R`. Star operations on a finite ideal lattice are exactly the closed
//! sets (containing a fixed base) of such a system.

use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::budget::Budget;
use crate::error::Result;

#[derive(Clone, Debug)]
pub struct ClosureSystem {
    n: usize,
    /// `rules[a * n + b]`: elements forced by the pair `(a, b)`.
    rules: Vec<FixedBitSet>,
}

impl ClosureSystem {
    pub fn new(n: usize) -> Self {
        ClosureSystem { n, rules: vec![FixedBitSet::with_capacity(n); n * n] }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn add_rule(&mut self, a: usize, b: usize, result: usize) {
        self.rules[a * self.n + b].insert(result);
    }

    pub fn set_rule(&mut self, a: usize, b: usize, results: FixedBitSet) {
        debug_assert_eq!(results.len(), self.n);
        self.rules[a * self.n + b] = results;
    }

    pub fn rule(&self, a: usize, b: usize) -> &FixedBitSet {
        &self.rules[a * self.n + b]
    }

    pub fn set_of<I: IntoIterator<Item = usize>>(&self, items: I) -> FixedBitSet {
        let mut s = FixedBitSet::with_capacity(self.n);
        s.extend(items);
        s
    }

    /// Smallest closed superset of `seed`.
    pub fn close(&self, seed: &FixedBitSet) -> FixedBitSet {
        let mut set = seed.clone();
        let mut work: Vec<usize> = set.ones().collect();
        while let Some(a) = work.pop() {
            let members: Vec<usize> = set.ones().collect();
            for b in members {
                for forced in [self.rule(a, b), self.rule(b, a)] {
                    for r in forced.ones() {
                        if !set.put(r) {
                            work.push(r);
                        }
                    }
                }
            }
        }
        set
    }

    pub fn is_closed(&self, set: &FixedBitSet) -> bool {
        set.ones().all(|a| set.ones().all(|b| self.rule(a, b).is_subset(set)))
    }

    /// All closed sets containing `base`, sorted by size then by members.
    ///
    /// Breadth-first: every closed set other than `close(base)` is `close(C ∪ {x})` for a
    /// smaller closed set `C`, so expanding each closed set by one element at a time
    /// reaches all of them.
    pub fn enumerate_closed(&self, base: &FixedBitSet, budget: &Budget) -> Result<Vec<FixedBitSet>> {
        let start = self.close(base);
        let mut seen: BTreeSet<FixedBitSet> = BTreeSet::new();
        seen.insert(start.clone());
        let mut frontier = vec![start];
        while !frontier.is_empty() {
            budget.check_time()?;
            let expanded: Vec<Vec<FixedBitSet>> = frontier
                .par_iter()
                .map(|set| {
                    (0..self.n)
                        .filter(|&x| !set.contains(x))
                        .map(|x| {
                            let mut seed = set.clone();
                            seed.insert(x);
                            self.close(&seed)
                        })
                        .collect()
                })
                .collect();
            let mut next = Vec::new();
            for candidate in expanded.into_iter().flatten() {
                if seen.insert(candidate.clone()) {
                    next.push(candidate);
                }
            }
            budget.check_families(seen.len())?;
            next.sort();
            frontier = next;
        }
        let mut all: Vec<FixedBitSet> = seen.into_iter().collect();
        all.sort_by_key(family_key);
        Ok(all)
    }
}

/// Sort key: size first, then the sorted member list.
pub fn family_key(s: &FixedBitSet) -> (usize, Vec<usize>) {
    (s.count_ones(..), s.ones().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Closed sets by brute force over all subsets.
    fn brute_force(sys: &ClosureSystem, base: &FixedBitSet) -> usize {
        (0u32..1 << sys.len())
            .filter(|mask| {
                let s = sys.set_of((0..sys.len()).filter(|i| mask >> i & 1 == 1));
                base.is_subset(&s) && sys.is_closed(&s)
            })
            .count()
    }

    #[test]
    fn no_rules_gives_power_set() {
        let sys = ClosureSystem::new(4);
        let base = sys.set_of([0]);
        assert_eq!(sys.enumerate_closed(&base, &Budget::default()).unwrap().len(), 8);
    }

    #[test]
    fn chain_rule() {
        // {0,1} forces 2; 2 with itself forces 3.
        let mut sys = ClosureSystem::new(4);
        sys.add_rule(0, 1, 2);
        sys.add_rule(2, 2, 3);
        let base = sys.set_of([]);
        let closed = sys.enumerate_closed(&base, &Budget::default()).unwrap();
        assert_eq!(closed.len(), brute_force(&sys, &base));
        assert_eq!(sys.close(&sys.set_of([0, 1])), sys.set_of([0, 1, 2, 3]));
    }

    #[test]
    fn random_systems_match_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(2..8);
            let mut sys = ClosureSystem::new(n);
            for _ in 0..rng.gen_range(0..10) {
                sys.add_rule(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
            }
            let base = sys.set_of([0]);
            let closed = sys.enumerate_closed(&base, &Budget::default()).unwrap();
            assert_eq!(closed.len(), brute_force(&sys, &base));
            assert!(closed.iter().all(|s| sys.is_closed(s)));
        }
    }
}
