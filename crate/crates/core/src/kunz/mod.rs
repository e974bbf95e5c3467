//! Reproducible checks for Kunz domains: the counterexample to star regularity, the
//! `⋆_i` operations on `T`, the subspace laboratory and certified lower bounds.

mod certificate;
mod lab;
mod lemmas;
mod report;
mod stari;

use std::collections::BTreeSet;
use std::time::Instant;

use serde::Serialize;

pub use certificate::{lower_bound_certificate, LowerBoundCertificate};
pub use lab::{mul_subspace, LabChecks, SubspaceLab};
pub use lemmas::{lemma_reports, psi_images, psi_report, ring_partition_matches, star_suite, Classifier};
pub use report::{KunzReport, Verdict, SCHEMA_VERSION};
pub use stari::{build_stari_family, r_colon_m, StariChecks, StariFamily};

use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fq::Field;
use crate::numsgp::NumericalSemigroup;
use crate::ring::{lattice_for, LatticeCache, RingModel};
use crate::star::{StarEngine, StarOperation};

/// Stars are checked one by one only below this many orbits.
const SUITE_MAX_ORBITS: usize = 16;

/// Budget, timing switch and optional lattice cache shared by every report.
#[derive(Clone, Debug, Default)]
pub struct RunContext {
    pub budget: Budget,
    pub timings: bool,
    pub cache: Option<LatticeCache>,
}

impl RunContext {
    pub fn engine(&self, model: RingModel) -> Result<StarEngine> {
        let lattice = lattice_for(&model, self.cache.as_ref(), &self.budget)?;
        StarEngine::with_lattice(model, lattice, &self.budget)
    }
}

/// Hypotheses of the counterexample: pseudo-symmetric with at least four gaps.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Gate {
    pub pseudo_symmetric: bool,
    pub gaps: usize,
    pub passed: bool,
    pub reason: Option<String>,
}

pub fn check_kunz(s: &NumericalSemigroup) -> Gate {
    let pseudo_symmetric = s.is_pseudo_symmetric();
    let gaps = s.genus();
    let reason = if !pseudo_symmetric {
        Some(format!("{s} is not pseudo-symmetric"))
    } else if gaps < 4 {
        Some(format!("{s} has {gaps} gaps; at least 4 required"))
    } else {
        None
    };
    Gate { pseudo_symmetric, gaps, passed: reason.is_none(), reason }
}

fn require_gate(s: &NumericalSemigroup) -> Result<Gate> {
    let gate = check_kunz(s);
    match &gate.reason {
        Some(r) => Err(Error::Gate(r.clone())),
        None => Ok(gate),
    }
}

fn field_input(rep: &mut KunzReport, field: &Field) {
    rep.input("q", field.order());
    if let Some(m) = field.modulus() {
        rep.input("field_poly", m);
    }
}

/// `2^{2q} + 3`.
pub fn star_r_formula(q: usize) -> u128 {
    (1u128 << (2 * q)) + 3
}

/// `2^{2q+1} + 2^{q+1} + 2`.
pub fn star_t_formula(q: usize) -> u128 {
    (1u128 << (2 * q + 1)) + (1u128 << (q + 1)) + 2
}

/// Both engines with their enumerated operations.
pub struct Enumerated {
    pub r: StarEngine,
    pub r_stars: Vec<StarOperation>,
    pub t: StarEngine,
    pub t_stars: Vec<StarOperation>,
}

pub fn enumerate_both(s: &NumericalSemigroup, field: &Field, ctx: &RunContext) -> Result<Enumerated> {
    let budget = &ctx.budget;
    let model = RingModel::semigroup_ring(s, field);
    let t_model = model.build_t()?;
    let r = ctx.engine(model)?;
    let r_stars = r.enumerate_stars(budget)?;
    let t = ctx.engine(t_model)?;
    let t_stars = t.enumerate_stars(budget)?;
    Ok(Enumerated { r, r_stars, t, t_stars })
}

fn count_results(rep: &mut KunzReport, e: &Enumerated) {
    rep.result("f0_r", e.r.lattice().len());
    rep.result("orbits_r", e.r.orbits().len());
    rep.result("star_r", e.r_stars.len());
    rep.result("f0_t", e.t.lattice().len());
    rep.result("orbits_t", e.t.orbits().len());
    rep.result("star_t", e.t_stars.len());
}

fn certificate_into(rep: &mut KunzReport, n: u32, field: &Field, budget: &Budget) -> Result<()> {
    let c = lower_bound_certificate(n, field, budget)?;
    rep.verdict("lower_bound_certificate", c.valid());
    if let Some(b) = c.bijection_holds() {
        rep.verdict("t_stable_subspace_bijection", b);
    }
    rep.result("lower_bound", serde_json::to_value(&c)?);
    Ok(())
}

/// `1 < |Star(R)|`, `|Star(R)| ≤ |Star(T)| - q + 1` and `|Star(R)| < |Star(T)|`, with `Ψ`
/// and the `⋆_i` family. When the enumeration does not fit the budget the comparisons
/// are marked skipped and, for the `⟨n, ..., 2n-3, 2n-1⟩` family, the lower-bound
/// certificate is produced instead.
pub fn verify_counterexample(s: &NumericalSemigroup, field: &Field, ctx: &RunContext) -> Result<KunzReport> {
    let (budget, timings) = (&ctx.budget, ctx.timings);
    let gate = require_gate(s)?;
    let mut rep = KunzReport::new(timings);
    rep.input("generators", s.generators());
    field_input(&mut rep, field);
    rep.result("gate", &gate);
    let q = field.order();
    let start = Instant::now();
    let e = match enumerate_both(s, field, ctx) {
        Ok(e) => e,
        Err(err) if err.is_budget() => {
            rep.result("budget", err.to_string());
            for key in ["star_r_gt_1", "star_r_le_star_t_minus_q_plus_1", "star_r_lt_star_t", "psi_injective"] {
                rep.skipped(key);
            }
            if let Some(n) = s.family_parameter() {
                certificate_into(&mut rep, n, field, budget)?;
            }
            return Ok(rep);
        }
        Err(err) => return Err(err),
    };
    rep.time("enumerate", start);
    count_results(&mut rep, &e);
    let (nr, nt) = (e.r_stars.len(), e.t_stars.len());
    rep.verdict("star_r_gt_1", nr > 1);
    rep.verdict("star_r_le_star_t_minus_q_plus_1", nr + q <= nt + 1);
    rep.verdict("star_r_lt_star_t", nr < nt);
    let ti = e.r.index_of(&e.r.model().t_ideal())?;
    let v = e.r.star_v();
    rep.verdict("t_closed_unless_v", e.r_stars.iter().all(|x| x.closes(ti) || *x == v));

    let start = Instant::now();
    let images = psi_images(&e.r, &e.r_stars, &e.t)?;
    rep.merge("psi", psi_report(&images, nr, &e.t_stars));
    rep.time("psi", start);

    let start = Instant::now();
    let fam = build_stari_family(e.r.model(), &e.t, budget)?;
    let checks = serde_json::to_value(&fam.checks)?;
    if let Some(map) = checks.as_object() {
        for (k, ok) in map {
            rep.verdict(&format!("stari.{k}"), ok.as_bool() == Some(true));
        }
    }
    let image: BTreeSet<&StarOperation> = images.iter().collect();
    rep.verdict("stari.outside_psi_image", fam.ops.iter().all(|o| !image.contains(o)));
    rep.verdict("psi_image_misses_q_plus_1", nt > image.len() + q);
    rep.result("stari", fam.summary(&e.t));
    rep.time("stari", start);

    if s.family_parameter() == Some(4) {
        rep.verdict("star_r_formula", nr as u128 == star_r_formula(q));
        rep.verdict("star_t_formula", nt as u128 == star_t_formula(q));
    }
    Ok(rep)
}

/// Exact counts for `⟨4,5,7⟩` against `2^{2q}+3` and `2^{2q+1}+2^{q+1}+2`, with the
/// closed-family trichotomy. Closed families are dumped when a formula fails.
pub fn formula_check(s: &NumericalSemigroup, field: &Field, ctx: &RunContext) -> Result<KunzReport> {
    let timings = ctx.timings;
    if s.family_parameter() != Some(4) {
        return Err(Error::Gate(format!("{s} is not ⟨4,5,7⟩")));
    }
    let mut rep = KunzReport::new(timings);
    rep.input("generators", s.generators());
    field_input(&mut rep, field);
    let q = field.order();
    let start = Instant::now();
    let e = enumerate_both(s, field, ctx)?;
    rep.time("enumerate", start);
    count_results(&mut rep, &e);
    rep.result("star_r_formula", star_r_formula(q).to_string());
    rep.result("star_t_formula", star_t_formula(q).to_string());
    let r_ok = e.r_stars.len() as u128 == star_r_formula(q);
    let t_ok = e.t_stars.len() as u128 == star_t_formula(q);
    rep.verdict("star_r_formula", r_ok);
    rep.verdict("star_t_formula", t_ok);
    let suite = star_suite(&e.r, &e.r_stars, timings)?;
    let trichotomy = suite.verdicts.get("closed_family_trichotomy") == Some(&Verdict::Verified);
    rep.merge("suite", suite);
    if !(r_ok && trichotomy) {
        let c = Classifier::new(&e.r)?;
        let dump: Vec<serde_json::Value> = e
            .r_stars
            .iter()
            .map(|x| serde_json::json!({"family": x.family(), "tag": c.tag(x)}))
            .collect();
        rep.result("families_r", dump);
    }
    if !t_ok {
        let dump: Vec<&[usize]> = e.t_stars.iter().map(|x| x.family()).collect();
        rep.result("families_t", dump);
    }
    Ok(rep)
}

/// Subspace laboratory for `n`, with the comparison against unit orbits of the ring for
/// `n ∈ {4, 5}`.
pub fn subspace_orbits(n: u32, field: &Field, ctx: &RunContext) -> Result<KunzReport> {
    let (budget, timings) = (&ctx.budget, ctx.timings);
    let mut rep = KunzReport::new(timings);
    rep.input("n", n);
    field_input(&mut rep, field);
    let start = Instant::now();
    let lab = SubspaceLab::new(n as usize, field, budget)?;
    rep.time("lab", start);
    rep.result("lab", lab.summary());
    let checks = serde_json::to_value(lab.checks())?;
    if let Some(map) = checks.as_object() {
        for (k, v) in map {
            if let Some(ok) = v.as_bool() {
                rep.verdict(k, ok);
            }
        }
    }
    if n == 4 || n == 5 {
        let start = Instant::now();
        match ring_partition_matches(n, field, budget) {
            Ok(ok) => rep.verdict("matches_unit_orbits", ok),
            Err(e) if e.is_budget() => rep.skipped("matches_unit_orbits"),
            Err(e) => return Err(e),
        }
        rep.time("ring_orbits", start);
    }
    Ok(rep)
}

pub fn lower_bound(n: u32, field: &Field, ctx: &RunContext) -> Result<KunzReport> {
    let (budget, timings) = (&ctx.budget, ctx.timings);
    let mut rep = KunzReport::new(timings);
    rep.input("n", n);
    field_input(&mut rep, field);
    let start = Instant::now();
    certificate_into(&mut rep, n, field, budget)?;
    rep.time("certificate", start);
    Ok(rep)
}

/// Lemma checks over `F_0(R)`, then the per-operation suite when the orbit count is small.
pub fn lemmas(s: &NumericalSemigroup, field: &Field, ctx: &RunContext) -> Result<KunzReport> {
    let (budget, timings) = (&ctx.budget, ctx.timings);
    let gate = require_gate(s)?;
    let mut rep = KunzReport::new(timings);
    rep.input("generators", s.generators());
    field_input(&mut rep, field);
    rep.result("gate", &gate);
    let model = RingModel::semigroup_ring(s, field);
    let lattice = lattice_for(&model, ctx.cache.as_ref(), budget)?;
    rep.merge("lemmas", lemma_reports(&model, &lattice, budget, timings)?);
    let start = Instant::now();
    let mut small = budget.clone();
    small.max_orbits = small.max_orbits.min(SUITE_MAX_ORBITS);
    let suite = StarEngine::with_lattice(model, lattice, &small).and_then(|e| {
        let stars = e.enumerate_stars(budget)?;
        star_suite(&e, &stars, timings)
    });
    match suite {
        Ok(s) => rep.merge("stars", s),
        Err(e) if e.is_budget() => rep.skipped("stars"),
        Err(e) => return Err(e),
    }
    rep.time("stars", start);
    Ok(rep)
}
