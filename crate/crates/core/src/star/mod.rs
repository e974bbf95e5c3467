//! Star operations on a ring model, represented by their families of closed `F_0` orbits.

mod table;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;
use serde::Serialize;

pub use table::ClosureTable;

use crate::budget::Budget;
use crate::closure::ClosureSystem;
use crate::error::{Error, Result};
use crate::fq::AlgElem;
use crate::ring::{enumerate_ideals, unit_orbits, IdealLattice, OrbitPartition, RingIdeal, RingModel};

/// A star operation, given by the sorted ids of its closed orbits, together with its
/// action on `F_0` (indices into the lattice).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct StarOperation {
    family: Vec<usize>,
    #[serde(skip)]
    closure: Vec<usize>,
}

impl StarOperation {
    pub fn family(&self) -> &[usize] {
        &self.family
    }

    /// `J ↦ J^⋆` on lattice indices.
    pub fn closure_map(&self) -> &[usize] {
        &self.closure
    }

    pub fn apply(&self, ideal: usize) -> usize {
        self.closure[ideal]
    }

    pub fn closes(&self, ideal: usize) -> bool {
        self.closure[ideal] == ideal
    }
}

/// `F_0(R)` with its unit orbits and closure table.
#[derive(Debug)]
pub struct StarEngine {
    model: RingModel,
    lattice: IdealLattice,
    units: Vec<AlgElem>,
    orbits: OrbitPartition,
    table: ClosureTable,
    system: ClosureSystem,
    v_map: Vec<usize>,
    supersets: Vec<FixedBitSet>,
}

impl StarEngine {
    pub fn new(model: RingModel, budget: &Budget) -> Result<StarEngine> {
        let lattice = enumerate_ideals(&model, budget)?;
        Self::with_lattice(model, lattice, budget)
    }

    pub fn with_lattice(model: RingModel, lattice: IdealLattice, budget: &Budget) -> Result<StarEngine> {
        let units = model.unit_reps(budget)?;
        let orbits = unit_orbits(&model, &lattice, &units, budget)?;
        let table = ClosureTable::build(&model, &lattice, &orbits, &units, budget)?;
        let system = table.to_system();
        let n = lattice.len();
        let v_map = lattice
            .ideals()
            .par_iter()
            .map(|i| lattice.require(&model.v_closure(i)))
            .collect::<Result<Vec<_>>>()?;
        let f = model.field();
        let supersets = (0..n)
            .into_par_iter()
            .map(|j| {
                let mut s = FixedBitSet::with_capacity(n);
                let sj = lattice.get(j).space();
                s.extend((0..n).filter(|&i| lattice.get(i).space().contains(f, sj)));
                s
            })
            .collect();
        Ok(StarEngine { model, lattice, units, orbits, table, system, v_map, supersets })
    }

    pub fn model(&self) -> &RingModel {
        &self.model
    }

    pub fn lattice(&self) -> &IdealLattice {
        &self.lattice
    }

    pub fn units(&self) -> &[AlgElem] {
        &self.units
    }

    pub fn orbits(&self) -> &OrbitPartition {
        &self.orbits
    }

    pub fn table(&self) -> &ClosureTable {
        &self.table
    }

    pub fn system(&self) -> &ClosureSystem {
        &self.system
    }

    /// `I ⊆ J` for lattice indices.
    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.supersets[i].contains(j)
    }

    /// Index of `J^v`.
    pub fn v_of(&self, j: usize) -> usize {
        self.v_map[j]
    }

    pub fn is_divisorial(&self, j: usize) -> bool {
        self.v_map[j] == j
    }

    pub fn index_of(&self, i: &RingIdeal) -> Result<usize> {
        self.lattice.index_of(i).ok_or_else(|| Error::InvalidInput("ideal is not in F_0".into()))
    }

    fn ring_orbit(&self) -> usize {
        self.orbits.orbit_of(self.lattice.require(&self.model.ring_ideal()).expect("R is in F_0"))
    }

    /// Orbits of divisorial ideals.
    pub fn divisorial_orbits(&self) -> Vec<usize> {
        (0..self.orbits.len()).filter(|&o| self.is_divisorial(self.orbits.rep(o))).collect()
    }

    fn bits(&self, orbits: &[usize]) -> FixedBitSet {
        self.system.set_of(orbits.iter().copied())
    }

    /// Builds the operation with closed family `family`, which must be closed and
    /// contain the orbit of `R`.
    pub fn star_from_family(&self, family: &[usize]) -> Result<StarOperation> {
        let bits = self.bits(family);
        if !bits.contains(self.ring_orbit()) {
            return Err(Error::InvalidInput("family must contain R".into()));
        }
        if !self.system.is_closed(&bits) {
            return Err(Error::InvalidInput("family is not closed under translate-intersections".into()));
        }
        let closure = self.closure_of_family(&bits)?;
        Ok(StarOperation { family: bits.ones().collect(), closure })
    }

    /// `J ↦` least closed ideal containing `J`.
    fn closure_of_family(&self, family: &FixedBitSet) -> Result<Vec<usize>> {
        let n = self.lattice.len();
        let mut closed = FixedBitSet::with_capacity(n);
        for o in family.ones() {
            closed.extend(self.orbits.members(o).iter().copied());
        }
        (0..n)
            .map(|j| {
                let mut cand = self.supersets[j].clone();
                cand.intersect_with(&closed);
                let least = cand
                    .ones()
                    .min_by_key(|&i| self.lattice.get(i).dim())
                    .ok_or_else(|| Error::Verification("V is not closed".into()))?;
                if !cand.is_subset(&self.supersets[least]) {
                    return Err(Error::Verification("closed ideals are not intersection-closed".into()));
                }
                Ok(least)
            })
            .collect()
    }

    /// The identity.
    pub fn star_d(&self) -> StarOperation {
        let all: Vec<usize> = (0..self.orbits.len()).collect();
        self.star_from_family(&all).expect("all orbits form a closed family")
    }

    /// The divisorial closure.
    pub fn star_v(&self) -> StarOperation {
        let base = self.system.close(&self.bits(&[self.ring_orbit()]));
        let family: Vec<usize> = base.ones().collect();
        self.star_from_family(&family).expect("closure of R is closed")
    }

    /// Every star operation, smallest family (`v`) first and `d` last.
    pub fn enumerate_stars(&self, budget: &Budget) -> Result<Vec<StarOperation>> {
        let base = self.system.close(&self.bits(&[self.ring_orbit()]));
        let div = self.divisorial_orbits();
        if base.ones().collect::<Vec<_>>() != div {
            return Err(Error::Verification("closure of R differs from the divisorial orbits".into()));
        }
        let families = self.system.enumerate_closed(&base, budget)?;
        families
            .par_iter()
            .map(|f| {
                let closure = self.closure_of_family(f)?;
                Ok(StarOperation { family: f.ones().collect(), closure })
            })
            .collect()
    }

    /// Validates a map on `F_0` and returns it as a star operation; the fixed points must
    /// form a closed, orbit-saturated family whose closure map is exactly `map`.
    pub fn star_from_map(&self, map: &[usize]) -> Result<StarOperation> {
        let n = self.lattice.len();
        if map.len() != n {
            return Err(Error::DimensionMismatch { expected: n, found: map.len() });
        }
        let mut family = Vec::new();
        for o in 0..self.orbits.len() {
            let members = self.orbits.members(o);
            let fixed = members.iter().filter(|&&m| map[m] == m).count();
            if fixed == members.len() {
                family.push(o);
            } else if fixed != 0 {
                return Err(Error::Verification(format!("fixed points of the map split orbit {o}")));
            }
        }
        let star = self.star_from_family(&family)?;
        if star.closure != map {
            return Err(Error::Verification("map differs from the closure of its fixed points".into()));
        }
        Ok(star)
    }

    /// `J ↦ (I : (I : J)) ∩ J^v`.
    pub fn generated_map(&self, i: usize) -> Result<Vec<usize>> {
        let ii = self.lattice.get(i);
        (0..self.lattice.len())
            .into_par_iter()
            .map(|j| {
                let jj = self.lattice.get(j);
                let x = self.model.colon(ii, &self.model.colon(ii, jj));
                let y = self.model.intersect(&x, self.lattice.get(self.v_map[j]));
                self.lattice.require(&y)
            })
            .collect()
    }

    /// The star operation generated by one ideal.
    pub fn star_gen(&self, i: usize) -> Result<StarOperation> {
        let star = self.star_from_map(&self.generated_map(i)?)?;
        self.verify_axioms(&star)?;
        Ok(star)
    }

    /// `J ↦ ⋂_{I ∈ Δ} J^{⋆_I}`; `v` for empty `Δ`.
    pub fn set_map(&self, delta: &[usize]) -> Result<Vec<usize>> {
        let mut acc: Vec<RingIdeal> = self.v_map.iter().map(|&v| self.lattice.get(v).clone()).collect();
        for &i in delta {
            let m = self.generated_map(i)?;
            for (a, &j) in acc.iter_mut().zip(&m) {
                *a = self.model.intersect(a, self.lattice.get(j));
            }
        }
        acc.iter().map(|a| self.lattice.require(a)).collect()
    }

    /// `⋆_Δ`, the largest star operation closing every ideal of `Δ`. Its family is the
    /// closure of `Δ ∪ {R}`; the map `J ↦ ⋂ J^{⋆_I}` is checked against it.
    pub fn star_from_set(&self, delta: &[usize]) -> Result<StarOperation> {
        let mut seed: Vec<usize> = delta.iter().map(|&i| self.orbits.orbit_of(i)).collect();
        seed.push(self.ring_orbit());
        let family: Vec<usize> = self.system.close(&self.bits(&seed)).ones().collect();
        let star = self.star_from_family(&family)?;
        if star.closure != self.set_map(delta)? {
            return Err(Error::Verification("star generated by a set disagrees with its closed family".into()));
        }
        Ok(star)
    }

    /// Independent closure computation: `J^⋆ = J^v ∩ ⋂ (F : (F : J))` over orbit
    /// representatives `F` of the family.
    pub fn closure_by_colons(&self, star: &StarOperation) -> Result<Vec<usize>> {
        let reps: Vec<&RingIdeal> = star.family.iter().map(|&o| self.lattice.get(self.orbits.rep(o))).collect();
        (0..self.lattice.len())
            .into_par_iter()
            .map(|j| {
                let jj = self.lattice.get(j);
                let mut acc = self.lattice.get(self.v_map[j]).clone();
                for f in &reps {
                    let x = self.model.colon(f, &self.model.colon(f, jj));
                    acc = self.model.intersect(&acc, &x);
                }
                self.lattice.require(&acc)
            })
            .collect()
    }

    /// Extensive, monotone, idempotent, fixes `R`, bounded by `v`, and commutes with
    /// units; checked on all of `F_0`.
    pub fn verify_axioms(&self, star: &StarOperation) -> Result<()> {
        let n = self.lattice.len();
        let c = &star.closure;
        let fail = |what: &str, j: usize| Err(Error::Verification(format!("{what} fails at ideal {j}")));
        let r = self.lattice.require(&self.model.ring_ideal())?;
        if c[r] != r {
            return fail("R = R^*", r);
        }
        for j in 0..n {
            if !self.leq(j, c[j]) {
                return fail("extensivity", j);
            }
            if c[c[j]] != c[j] {
                return fail("idempotence", j);
            }
            if !self.leq(c[j], self.v_map[j]) {
                return fail("J^* ⊆ J^v", j);
            }
            for i in self.supersets[j].ones() {
                if !self.leq(c[j], c[i]) {
                    return fail("monotonicity", j);
                }
            }
        }
        let equivariant = (0..n).into_par_iter().all(|j| {
            let jj = self.lattice.get(j);
            let cj = self.lattice.get(c[j]);
            self.units.iter().all(|u| {
                let uj = self.model.mul_unit(u, jj).expect("unit");
                match self.lattice.index_of(&uj) {
                    Some(k) => self.lattice.get(c[k]) == &self.model.mul_unit(u, cj).expect("unit"),
                    None => true,
                }
            })
        });
        if !equivariant {
            return Err(Error::Verification("unit equivariance fails".into()));
        }
        Ok(())
    }

    /// `Ψ`: restriction to the `T`-stable ideals, as an operation on the model of `T`.
    pub fn restrict_psi(&self, star: &StarOperation, t: &StarEngine) -> Result<StarOperation> {
        if star == &self.star_v() || star == &self.star_d() {
            return Err(Error::InvalidInput("d and v lie outside the domain of the restriction".into()));
        }
        let t_ideal = self.model.t_ideal();
        let mut family = std::collections::BTreeSet::new();
        for o in &star.family {
            for &m in self.orbits.members(*o) {
                let i = self.lattice.get(m);
                if &self.model.product(i, &t_ideal) == i {
                    let ti = t.model.from_finer(&self.model, i)?;
                    family.insert(t.orbits.orbit_of(t.index_of(&ti)?));
                }
            }
        }
        let family: Vec<usize> = family.into_iter().collect();
        t.star_from_family(&family)
    }
}
