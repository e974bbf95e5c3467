use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{IdealLattice, RingModel};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fq::AlgElem;

/// Partition of `F_0` into classes `{uI ∈ F_0 : u ∈ V^*}`.
///
/// Orbit ids follow the order of their representatives, which are the least members.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct OrbitPartition {
    orbit_of: Vec<usize>,
    members: Vec<Vec<usize>>,
}

impl OrbitPartition {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn orbit_of(&self, ideal: usize) -> usize {
        self.orbit_of[ideal]
    }

    pub fn members(&self, orbit: usize) -> &[usize] {
        &self.members[orbit]
    }

    pub fn rep(&self, orbit: usize) -> usize {
        self.members[orbit][0]
    }

    pub fn reps(&self) -> Vec<usize> {
        self.members.iter().map(|m| m[0]).collect()
    }
}

/// Computes the orbits of `V^*` on `F_0`. Since `K^*` and `R^*` act trivially, the unit
/// representatives `units` suffice.
pub fn unit_orbits(model: &RingModel, lattice: &IdealLattice, units: &[AlgElem], budget: &Budget) -> Result<OrbitPartition> {
    let n = lattice.len();
    let mut orbit_of = vec![usize::MAX; n];
    let mut members = Vec::new();
    for i in 0..n {
        if orbit_of[i] != usize::MAX {
            continue;
        }
        budget.check_time()?;
        let ideal = lattice.get(i);
        let found: Result<Vec<usize>> = units
            .par_iter()
            .filter_map(|u| {
                let ui = model.mul_unit(u, ideal).expect("unit representative");
                ui.contains_one().then(|| lattice.require(&ui))
            })
            .collect();
        let mut found = found?;
        found.sort_unstable();
        found.dedup();
        if found[0] != i {
            return Err(Error::Verification(format!("orbit of ideal {i} reaches an earlier ideal")));
        }
        for &m in &found {
            if orbit_of[m] != usize::MAX {
                return Err(Error::Verification("unit orbits overlap".into()));
            }
            orbit_of[m] = members.len();
        }
        members.push(found);
        budget.check_orbits(members.len())?;
    }
    Ok(OrbitPartition { orbit_of, members })
}
