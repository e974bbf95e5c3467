use std::collections::HashMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{RingIdeal, RingModel};
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fq::{for_each_subspace, subspace_count, Subspace};

/// `F_0(R)`: every fractional ideal `R ⊆ I ⊆ V`, sorted.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IdealLattice {
    ideals: Vec<RingIdeal>,
    #[serde(skip)]
    index: HashMap<RingIdeal, usize>,
}

impl IdealLattice {
    pub fn from_ideals(mut ideals: Vec<RingIdeal>) -> Self {
        ideals.sort();
        ideals.dedup();
        let index = ideals.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        IdealLattice { ideals, index }
    }

    /// Rebuilds the lookup table after deserializing.
    pub fn reindex(&mut self) {
        self.index = self.ideals.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
    }

    pub fn len(&self) -> usize {
        self.ideals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
    }

    pub fn ideals(&self) -> &[RingIdeal] {
        &self.ideals
    }

    pub fn get(&self, i: usize) -> &RingIdeal {
        &self.ideals[i]
    }

    pub fn index_of(&self, i: &RingIdeal) -> Option<usize> {
        self.index.get(i).copied()
    }

    pub(crate) fn require(&self, i: &RingIdeal) -> Result<usize> {
        self.index_of(i).ok_or_else(|| Error::Verification("ideal outside F_0".into()))
    }
}

/// Enumerates `F_0(R)`. An `R`-module `R ⊆ W ⊆ V` is `R ⊕ (W ∩ G)` where `G` is spanned by
/// the gap monomials, so the candidates are `R + U` for subspaces `U ⊆ G`.
pub fn enumerate_ideals(model: &RingModel, budget: &Budget) -> Result<IdealLattice> {
    let f = model.field();
    let d = model.dim();
    let gaps: Vec<usize> = model.semigroup().gaps().iter().map(|&g| g as usize).collect();
    budget.check_subspaces(subspace_count(gaps.len() as u32, f.order() as u64))?;
    let mut candidates = Vec::new();
    for_each_subspace(f, gaps.len(), |u| candidates.push(u));
    budget.check_time()?;
    let base = model.basis();
    let ideals: Vec<RingIdeal> = candidates
        .par_iter()
        .filter_map(|u| {
            let mut rows = base.flat().to_vec();
            for r in u.rows() {
                let mut v = vec![0; d];
                for (c, &g) in r.iter().zip(&gaps) {
                    v[g] = *c;
                }
                rows.extend(v);
            }
            let w = Subspace::from_rows_unchecked(f, d, rows);
            model.is_module(&w).then(|| RingIdeal::new_unchecked(w))
        })
        .collect();
    budget.check_ideals(ideals.len())?;
    budget.check_time()?;
    Ok(IdealLattice::from_ideals(ideals))
}

/// Canonical ideals in `F_0`: the members `ω` with `v(ω) = S ∪ {g - s : s ∉ S}` and
/// `(ω : (ω : J)) = J` for every `J ∈ F_0`.
pub fn canonical_ideals(model: &RingModel, lattice: &IdealLattice) -> Result<Vec<usize>> {
    let s = model.semigroup();
    let g = s.frobenius() as i64;
    let target: Vec<u32> = (0..=g).filter(|&x| s.contains(x) || !s.contains(g - x)).map(|x| x as u32).collect();
    let mut out = Vec::new();
    for (idx, w) in lattice.ideals().iter().enumerate() {
        if w.values() != target {
            continue;
        }
        let mut ok = true;
        for j in lattice.ideals() {
            if model.double_colon_exact(w, j)?.as_ref() != Some(j) {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(idx);
        }
    }
    Ok(out)
}
