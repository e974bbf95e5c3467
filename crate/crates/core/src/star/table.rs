use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::budget::Budget;
use crate::closure::ClosureSystem;
use crate::error::Result;
use crate::fq::{AlgElem, Subspace};
use crate::ring::{IdealLattice, OrbitPartition, RingModel};

/// Finite presentation of translate-intersection closure on orbits: for orbits `i, j`
/// and shift `k ∈ [0, g+1]`, the orbits of `normalize(rep_i ∩ t^k u rep_j)` over all
/// unit classes `u`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClosureTable {
    orbits: usize,
    shifts: usize,
    entries: Vec<Vec<u32>>,
}

impl ClosureTable {
    pub fn build(
        model: &RingModel,
        lattice: &IdealLattice,
        orbits: &OrbitPartition,
        units: &[AlgElem],
        budget: &Budget,
    ) -> Result<ClosureTable> {
        let o = orbits.len();
        let shifts = model.dim() + 1;
        let reps: Vec<&Subspace> = orbits.reps().into_iter().map(|r| lattice.get(r).space()).collect();
        // units fixing rep_j give the same translate; keep one of each
        let translates: Vec<Vec<Subspace>> = reps
            .par_iter()
            .map(|rep| {
                let set: BTreeSet<Subspace> = units.iter().map(|u| model.mul_unit_space(u, rep)).collect();
                set.into_iter().collect()
            })
            .collect();
        let shifted: Vec<Vec<Subspace>> =
            reps.iter().map(|rep| (0..shifts).map(|k| model.shift_down(rep, k)).collect()).collect();
        let rows: Result<Vec<Vec<Vec<u32>>>> = (0..o)
            .into_par_iter()
            .map(|i| {
                budget.check_time()?;
                let mut row = Vec::with_capacity(o * shifts);
                for ys in &translates {
                    for sk in &shifted[i] {
                        let mut hit = BTreeSet::new();
                        for y in ys {
                            let x = model.translate_intersect_spaces(sk, y);
                            hit.insert(orbits.orbit_of(lattice.require(&x)?) as u32);
                        }
                        row.push(hit.into_iter().collect());
                    }
                }
                Ok(row)
            })
            .collect();
        let entries = rows?.into_iter().flatten().collect();
        Ok(ClosureTable { orbits: o, shifts, entries })
    }

    pub fn orbit_count(&self) -> usize {
        self.orbits
    }

    pub fn shift_count(&self) -> usize {
        self.shifts
    }

    /// Orbits reached from `(i, j)` at shift `k`.
    pub fn entry(&self, i: usize, j: usize, k: usize) -> &[u32] {
        &self.entries[(i * self.orbits + j) * self.shifts + k]
    }

    /// The closure system whose closed sets are the families of star-closed orbits.
    pub fn to_system(&self) -> ClosureSystem {
        let mut sys = ClosureSystem::new(self.orbits);
        for i in 0..self.orbits {
            for j in 0..self.orbits {
                let mut set = FixedBitSet::with_capacity(self.orbits);
                for k in 0..self.shifts {
                    for &r in self.entry(i, j, k) {
                        set.insert(r as usize);
                    }
                }
                sys.set_rule(i, j, set);
            }
        }
        sys
    }
}
