use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::lab::SubspaceLab;
use super::report::KunzReport;
use super::stari::r_colon_m;
use crate::budget::Budget;
use crate::error::Result;
use crate::fq::{subspace_count, Elem, Subspace};
use crate::ring::{canonical_ideals, enumerate_ideals, unit_orbits, IdealLattice, OrbitPartition, RingIdeal, RingModel};
use crate::star::{StarEngine, StarOperation};

/// Seed for the sampled subsets in the `⋆_Δ` check.
const DELTA_SEED: u64 = 0x5eed_0004;
/// Up to this many orbit representatives every subset is checked.
const EXHAUSTIVE_DELTA: usize = 12;
const SAMPLED_DELTAS: usize = 64;

/// Tags for closed families of the `n = 4` family member.
#[derive(Clone, Debug)]
pub struct Classifier {
    divisorial: BTreeSet<usize>,
    nondivisorial: BTreeSet<usize>,
    canonical: BTreeSet<usize>,
    t_orbit: usize,
    two_dim: BTreeSet<usize>,
    detailed: bool,
}

impl Classifier {
    pub fn new(e: &StarEngine) -> Result<Classifier> {
        let r = e.model();
        let orbits = e.orbits();
        let divisorial: BTreeSet<usize> = e.divisorial_orbits().into_iter().collect();
        let nondivisorial = (0..orbits.len()).filter(|o| !divisorial.contains(o)).collect();
        let canonical =
            canonical_ideals(r, e.lattice())?.into_iter().map(|i| orbits.orbit_of(i)).collect();
        let t_orbit = orbits.orbit_of(e.index_of(&r.t_ideal())?);
        let n = r.semigroup().multiplicity();
        let t = r.t_ideal();
        let two_dim = (0..orbits.len())
            .filter(|&o| {
                let i = e.lattice().get(orbits.rep(o));
                !divisorial.contains(&o)
                    && &r.product(i, &t) == i
                    && i.values().iter().filter(|&&v| v < n).count() == 2
            })
            .collect();
        let detailed = r.semigroup().family_parameter() == Some(4);
        Ok(Classifier { divisorial, nondivisorial, canonical, t_orbit, two_dim, detailed })
    }

    /// `d`, `v`, and for `n = 4` also `delta-minus-canonical` and `lambda-plus-t`;
    /// `unclassified` otherwise (`other` outside the `n = 4` case).
    pub fn tag(&self, star: &StarOperation) -> &'static str {
        let nd: BTreeSet<usize> = star.family().iter().copied().filter(|o| !self.divisorial.contains(o)).collect();
        if nd.is_empty() {
            return "v";
        }
        if nd == self.nondivisorial {
            return "d";
        }
        if !self.detailed {
            return "other";
        }
        let minus_canonical: BTreeSet<usize> = self.nondivisorial.difference(&self.canonical).copied().collect();
        if nd == minus_canonical {
            return "delta-minus-canonical";
        }
        if nd.contains(&self.t_orbit) && nd.iter().all(|o| *o == self.t_orbit || self.two_dim.contains(o)) {
            return "lambda-plus-t";
        }
        "unclassified"
    }

    pub fn two_dim_classes(&self) -> usize {
        self.two_dim.len()
    }
}

/// `I + t^k V`.
fn plus_tail(r: &RingModel, i: &RingIdeal, k: usize) -> RingIdeal {
    let d = r.dim();
    let mut rows = i.space().flat().to_vec();
    for j in k..d {
        let mut v = vec![0; d];
        v[j] = 1;
        rows.extend(v);
    }
    r.ideal(&Subspace::from_rows_unchecked(r.field(), d, rows)).expect("I + t^k V is a module")
}

fn in_some_member(r: &RingModel, lat: &IdealLattice, orbits: &OrbitPartition, i: usize, j: usize) -> bool {
    let ii = lat.get(i);
    orbits.members(orbits.orbit_of(j)).iter().any(|&m| r.is_subset(ii, lat.get(m)))
}

/// Exhaustive checks over `F_0(R)` of the lemmas on `T`, canonical ideals and, for the
/// `⟨n, ..., 2n-3, 2n-1⟩` family, the `T`-stable ideals.
pub fn lemma_reports(r: &RingModel, lat: &IdealLattice, budget: &Budget, timings: bool) -> Result<KunzReport> {
    let mut rep = KunzReport::new(timings);
    let s = r.semigroup();
    let start = Instant::now();
    let units = r.unit_reps(budget)?;
    let orbits = unit_orbits(r, lat, &units, budget)?;
    rep.result("f0", lat.len());
    rep.result("orbits", orbits.len());
    rep.time("lattice", start);

    let start = Instant::now();
    let n = lat.len();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let length_results: Vec<Option<bool>> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let (a, b) = (lat.get(i), lat.get(j));
            r.is_subset(a, b).then(|| r.length(b, a).is_ok())
        })
        .collect();
    let comparable = length_results.iter().flatten().count();
    rep.result("length_identity_pairs", comparable);
    rep.verdict("length_identity", length_results.iter().flatten().all(|&ok| ok));
    rep.time("length_identity", start);

    let start = Instant::now();
    let t_model = r.build_t()?;
    let t = r.t_ideal();
    let rr = r.ring_ideal();
    let g = s.frobenius() as usize;
    let mut tg = vec![0; r.dim()];
    tg[g] = 1;
    let mut one = vec![0; r.dim()];
    one[0] = 1;
    let s_prime = s.with_frobenius_added();
    let def_t = r.t_is_independent_of_generator(budget)?
        && Some(t_model.semigroup()) == s_prime.as_ref()
        && r.length(&t, &rr)? == 1
        && r.generate(&[one, tg])? == t;
    rep.verdict("t_construction", def_t);

    let canonical: BTreeSet<usize> = canonical_ideals(r, lat)?.into_iter().collect();
    let rm = r_colon_m(r);
    let tau = s.tau().unwrap_or(0);
    let mut canon_values: Vec<u32> = (0..=g as u32).filter(|&x| s.contains(x as i64)).collect();
    canon_values.push(tau);
    canon_values.sort_unstable();
    let mut non_t = true;
    let mut canonical_v = true;
    for (idx, i) in lat.ideals().iter().enumerate() {
        if i == &rr {
            continue;
        }
        let c1 = i.values() == canon_values;
        let c2 = !i.values().contains(&(g as u32));
        let c3 = &r.product(i, &t) != i;
        let c4 = canonical.contains(&idx);
        non_t &= c1 == c2 && c2 == c3 && c3 == c4;
        if c4 {
            canonical_v &= r.v_closure(i) == rm;
        }
    }
    rep.result("canonical_ideals", canonical.len());
    rep.verdict("non_t_equivalence", non_t && !canonical.is_empty());
    rep.verdict("canonical_v_is_r_colon_m", canonical_v);
    rep.verdict("nongor_witnesses", s.nongor_witnesses().is_ok());
    rep.time("non_t", start);

    let Some(fam_n) = s.family_parameter() else {
        return Ok(rep);
    };
    let start = Instant::now();
    let fam_n = fam_n as usize;
    let q = r.field().order();
    let stable: Vec<usize> = (0..n).filter(|&i| &r.product(lat.get(i), &t) == lat.get(i)).collect();
    rep.result("t_stable", stable.len());
    rep.verdict(
        "t_stable_subspace_bijection",
        stable.len() as u128 == subspace_count(fam_n as u32 - 1, q as u64),
    );
    let divisorial: Vec<bool> = lat.ideals().par_iter().map(|i| r.is_divisorial(i)).collect();
    let tau_a = stable.iter().all(|&i| divisorial[i] == lat.get(i).values().contains(&(fam_n as u32 - 1)));
    rep.verdict("tau_iv_a", tau_a);
    let tau_b = stable.iter().all(|&i| r.v_closure(lat.get(i)) == plus_tail(r, lat.get(i), fam_n - 1));
    rep.verdict("tau_iv_b", tau_b);

    let nondiv: Vec<usize> = stable.iter().copied().filter(|&i| !divisorial[i]).collect();
    let vmap: BTreeMap<usize, RingIdeal> = nondiv.iter().map(|&i| (i, r.v_closure(lat.get(i)))).collect();
    let star_j = |i: usize, j: usize| {
        let (ii, jj) = (lat.get(i), lat.get(j));
        r.intersect(&r.colon(jj, &r.colon(jj, ii)), &vmap[&i])
    };
    let tau_c = nondiv.par_iter().all(|&j| {
        nondiv.iter().all(|&i| (&star_j(i, j) == lat.get(i)) == in_some_member(r, lat, &orbits, i, j))
    });
    rep.verdict("tau_iv_c", tau_c);

    // ⋆_J depends only on the orbit of J, so Δ ranges over sets of orbit representatives
    let reps: Vec<usize> = {
        let set: BTreeSet<usize> = nondiv.iter().map(|&i| orbits.rep(orbits.orbit_of(i))).collect();
        set.into_iter().collect()
    };
    let table: Vec<Vec<RingIdeal>> =
        nondiv.par_iter().map(|&i| reps.iter().map(|&j| star_j(i, j)).collect()).collect();
    let deltas: Vec<Vec<usize>> = if reps.len() <= EXHAUSTIVE_DELTA {
        (1u32..1 << reps.len()).map(|m| (0..reps.len()).filter(|b| m >> b & 1 == 1).collect()).collect()
    } else {
        let mut out: Vec<Vec<usize>> = (0..reps.len()).map(|a| vec![a]).collect();
        for a in 0..reps.len() {
            for b in a + 1..reps.len() {
                out.push(vec![a, b]);
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(DELTA_SEED);
        let idx: Vec<usize> = (0..reps.len()).collect();
        for k in 0..SAMPLED_DELTAS {
            let size = 3 + k % (reps.len() - 2);
            let mut pick: Vec<usize> = idx.choose_multiple(&mut rng, size).copied().collect();
            pick.sort_unstable();
            out.push(pick);
        }
        out
    };
    let tau_d = deltas.par_iter().all(|delta| {
        nondiv.iter().enumerate().all(|(a, &i)| {
            let mut acc = vmap[&i].clone();
            for &b in delta {
                acc = r.intersect(&acc, &table[a][b]);
            }
            let closed = &acc == lat.get(i);
            let criterion = delta.iter().any(|&b| in_some_member(r, lat, &orbits, i, reps[b]));
            closed == criterion
        })
    });
    rep.result("tau_iv_d_sets", deltas.len());
    rep.result("tau_iv_d_exhaustive", reps.len() <= EXHAUSTIVE_DELTA);
    rep.verdict("tau_iv_d", tau_d);

    let lab = SubspaceLab::new(fam_n, r.field(), budget)?;
    rep.verdict("lab_matches_unit_orbits", lab_matches_orbits(r, lat, &orbits, &lab, fam_n));
    rep.time("family", start);
    Ok(rep)
}

/// The classes of the subspace lab agree with the unit orbits of the corresponding
/// two-dimensional nondivisorial ideals.
fn lab_matches_orbits(r: &RingModel, lat: &IdealLattice, orbits: &OrbitPartition, lab: &SubspaceLab, n: usize) -> bool {
    let t = r.t_ideal();
    let image = |i: &RingIdeal| {
        let rows: Vec<Elem> = i.space().rows().filter(|row| row[..n].iter().any(|&c| c != 0)).flat_map(|row| row[..n].to_vec()).collect();
        Subspace::from_rows_unchecked(r.field(), n, rows)
    };
    let mut ring_classes: BTreeMap<usize, BTreeSet<Subspace>> = BTreeMap::new();
    for (idx, i) in lat.ideals().iter().enumerate() {
        let vals = i.values();
        if &r.product(i, &t) == i && vals.iter().filter(|&&v| (v as usize) < n).count() == 2 && !vals.contains(&(n as u32 - 1)) {
            ring_classes.entry(orbits.orbit_of(idx)).or_default().insert(image(i));
        }
    }
    let ring: BTreeSet<BTreeSet<Subspace>> = ring_classes.into_values().collect();
    let lab_set: BTreeSet<BTreeSet<Subspace>> =
        lab.classes.iter().map(|c| c.iter().map(|&m| lab.x[m].clone()).collect()).collect();
    ring == lab_set
}

/// Checks over every enumerated star operation of `R`.
pub fn star_suite(e: &StarEngine, stars: &[StarOperation], timings: bool) -> Result<KunzReport> {
    let mut rep = KunzReport::new(timings);
    let start = Instant::now();
    rep.result("stars", stars.len());
    let axioms = stars.par_iter().all(|s| e.verify_axioms(s).is_ok());
    rep.verdict("axioms_and_unit_equivariance", axioms);
    let routes = stars.par_iter().all(|s| e.closure_by_colons(s).map(|m| m == s.closure_map()).unwrap_or(false));
    rep.verdict("closure_routes_agree", routes);
    let below_v = stars.iter().all(|s| (0..e.lattice().len()).all(|j| e.leq(s.apply(j), e.v_of(j))));
    rep.verdict("below_v", below_v);
    let roundtrip = stars.par_iter().all(|s| {
        let reps: Vec<usize> = s.family().iter().map(|&o| e.orbits().rep(o)).collect();
        e.star_from_set(&reps).map(|x| &x == s).unwrap_or(false)
    });
    rep.verdict("generated_by_own_family", roundtrip);
    let ti = e.index_of(&e.model().t_ideal())?;
    let v = e.star_v();
    rep.verdict("t_closed_unless_v", stars.iter().all(|s| s.closes(ti) || s == &v));
    rep.time("star_axioms", start);

    let classifier = Classifier::new(e)?;
    let mut tags: BTreeMap<&str, usize> = BTreeMap::new();
    for s in stars {
        *tags.entry(classifier.tag(s)).or_default() += 1;
    }
    if e.model().semigroup().family_parameter() == Some(4) {
        let q = e.model().field().order();
        let lambda = tags.get("lambda-plus-t").copied().unwrap_or(0);
        rep.result("two_dim_classes", classifier.two_dim_classes());
        rep.verdict(
            "closed_family_trichotomy",
            !tags.contains_key("unclassified")
                && tags.get("delta-minus-canonical") == Some(&1)
                && tags.get("d") == Some(&1)
                && tags.get("v") == Some(&1)
                && lambda == 1 << classifier.two_dim_classes()
                && classifier.two_dim_classes() == 2 * q,
        );
    }
    rep.result("tags", &tags);

    Ok(rep)
}

/// `Ψ(⋆)` for every `⋆ ∉ {d, v}`, in the order of `stars`.
pub fn psi_images(e: &StarEngine, stars: &[StarOperation], te: &StarEngine) -> Result<Vec<StarOperation>> {
    let (v, d) = (e.star_v(), e.star_d());
    stars.iter().filter(|s| **s != v && **s != d).map(|s| e.restrict_psi(s, te)).collect()
}

pub fn psi_report(images: &[StarOperation], r_count: usize, tstars: &[StarOperation]) -> KunzReport {
    let mut rep = KunzReport::new(false);
    let distinct: BTreeSet<&StarOperation> = images.iter().collect();
    let tset: BTreeSet<&StarOperation> = tstars.iter().collect();
    rep.result("psi_image", distinct.len());
    rep.verdict("psi_injective", distinct.len() == images.len());
    rep.verdict("psi_lands_in_star_t", distinct.iter().all(|s| tset.contains(s)));
    rep.verdict("star_r_le_star_t_plus_2", r_count <= tstars.len() + 2);
    rep
}

/// Whether the lab classes for `n` match the unit orbits in `F_0` of the family member.
pub fn ring_partition_matches(n: u32, field: &crate::fq::Field, budget: &Budget) -> Result<bool> {
    let s = crate::numsgp::NumericalSemigroup::kunz_family(n)?;
    let r = RingModel::semigroup_ring(&s, field);
    let lat = enumerate_ideals(&r, budget)?;
    let units = r.unit_reps(budget)?;
    let orbits = unit_orbits(&r, &lat, &units, budget)?;
    let lab = SubspaceLab::new(n as usize, field, budget)?;
    Ok(lab_matches_orbits(&r, &lat, &orbits, &lab, n as usize))
}
