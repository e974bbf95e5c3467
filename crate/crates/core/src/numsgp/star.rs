use std::collections::HashMap;

use super::{NumericalSemigroup, SemigroupIdeal};
use crate::budget::Budget;
use crate::closure::ClosureSystem;
use crate::error::{Error, Result};

/// Every normalized ideal `S ⊆ E ⊆ N`, sorted.
pub fn enumerate_sgp_ideals(s: &NumericalSemigroup, budget: &Budget) -> Result<Vec<SemigroupIdeal>> {
    let gaps = s.gaps();
    if gaps.len() > 24 {
        return Err(Error::Budget { what: "semigroup gaps", needed: gaps.len() as u128, limit: 24 });
    }
    budget.check_subspaces(1u128 << gaps.len())?;
    let base = SemigroupIdeal::semigroup(s).members();
    let mut out = Vec::new();
    for mask in 0u32..(1 << gaps.len()) {
        let mut members = base.clone();
        members.extend(gaps.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &x)| x));
        if let Ok(e) = SemigroupIdeal::from_members(s, &members) {
            out.push(e);
        }
    }
    out.sort();
    budget.check_ideals(out.len())?;
    Ok(out)
}

/// Star operations on a numerical semigroup, each given by its family of closed
/// normalized ideals (indices into `ideals`).
#[derive(Clone, Debug)]
pub struct SemigroupStars {
    pub ideals: Vec<SemigroupIdeal>,
    pub families: Vec<Vec<usize>>,
}

impl SemigroupStars {
    pub fn count(&self) -> usize {
        self.families.len()
    }
}

/// Closed families are the subsets containing `S` that are stable under
/// `(E, F, k) ↦ normalize(E ∩ (k + F))`.
pub fn enumerate_sgp_stars(s: &NumericalSemigroup, budget: &Budget) -> Result<SemigroupStars> {
    let ideals = enumerate_sgp_ideals(s, budget)?;
    let index: HashMap<&SemigroupIdeal, usize> = ideals.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let n = ideals.len();
    let mut sys = ClosureSystem::new(n);
    for (i, e) in ideals.iter().enumerate() {
        for (j, f) in ideals.iter().enumerate() {
            for k in 0..=s.frobenius() + 1 {
                let r = e.translate_intersect(f, k);
                sys.add_rule(i, j, index[&r]);
            }
        }
    }
    let base = sys.set_of([index[&SemigroupIdeal::semigroup(s)]]);
    let families = sys
        .enumerate_closed(&base, budget)?
        .iter()
        .map(|f| f.ones().collect())
        .collect();
    Ok(SemigroupStars { ideals, families })
}
