//! Acceptance criteria 1-10. Each test writes one `PASS`/`FAIL` line to stderr, outside
//! the test harness capture, so the lines show up in plain `cargo test` output.

use std::io::Write;
use std::process::Command;
use std::time::Instant;

use starlab_core::fq::Field;
use starlab_core::kunz::{self, build_stari_family, lower_bound_certificate, RunContext, SubspaceLab, Verdict};
use starlab_core::numsgp::NumericalSemigroup;
use starlab_core::ring::RingModel;
use starlab_core::star::StarEngine;
use starlab_core::Budget;

fn field(q: u32) -> Field {
    Field::with_order(q).unwrap()
}

fn sgp(gens: &[u32]) -> NumericalSemigroup {
    NumericalSemigroup::from_generators(gens).unwrap()
}

fn star_count(model: RingModel) -> usize {
    let b = Budget::default();
    StarEngine::new(model, &b).unwrap().enumerate_stars(&b).unwrap().len()
}

fn report(criterion: u32, ok: bool, detail: String, start: Instant) {
    let line = format!(
        "criterion {criterion:>2}: {} ({detail}; {:.2} s)\n",
        if ok { "PASS" } else { "FAIL" },
        start.elapsed().as_secs_f64()
    );
    let _ = std::io::stderr().lock().write_all(line.as_bytes());
    assert!(ok, "criterion {criterion}: {detail}");
}

#[test]
fn criterion_01_star_count_457() {
    let start = Instant::now();
    let got: Vec<usize> = [2, 3, 4].iter().map(|&q| star_count(RingModel::semigroup_ring(&sgp(&[4, 5, 7]), &field(q)))).collect();
    report(1, got == [19, 67, 259], format!("|Star(R)| at q=2,3,4: {got:?}, expected [19, 67, 259]"), start);
}

#[test]
fn criterion_02_star_count_t() {
    let start = Instant::now();
    let mut got = Vec::new();
    let mut built_equals_monomial = true;
    for q in [2, 3] {
        let r = RingModel::semigroup_ring(&sgp(&[4, 5, 7]), &field(q));
        let t = r.build_t().unwrap();
        built_equals_monomial &= t.semigroup().generators() == [4, 5, 6, 7];
        got.push(star_count(t));
        let direct = star_count(RingModel::semigroup_ring(&sgp(&[4, 5, 6, 7]), &field(q)));
        built_equals_monomial &= direct == *got.last().unwrap();
    }
    report(
        2,
        got == [42, 146] && built_equals_monomial,
        format!("|Star(T)| at q=2,3: {got:?}, expected [42, 146]"),
        start,
    );
}

#[test]
fn criterion_03_counterexample_inequalities() {
    let start = Instant::now();
    let mut ok = true;
    let mut detail = Vec::new();
    for q in [2, 3, 4] {
        let r = kunz::verify_counterexample(&sgp(&[4, 5, 7]), &field(q), &RunContext::default()).unwrap();
        let (nr, nt) = (r.results["star_r"].as_u64().unwrap(), r.results["star_t"].as_u64().unwrap());
        ok &= nr < nt && nr + q as u64 <= nt + 1;
        ok &= r.verdicts["star_r_lt_star_t"] == Verdict::Verified;
        ok &= r.verdicts["star_r_le_star_t_minus_q_plus_1"] == Verdict::Verified;
        detail.push(format!("q={q}: {nr} < {nt}, {nr} <= {}", nt + 1 - q as u64));
    }
    report(3, ok, detail.join("; "), start);
}

#[test]
fn criterion_04_star_count_345() {
    let start = Instant::now();
    let got = star_count(RingModel::semigroup_ring(&sgp(&[3, 4, 5]), &field(2)));
    let other_q: Vec<usize> = [3, 4].iter().map(|&q| star_count(RingModel::semigroup_ring(&sgp(&[3, 4, 5]), &field(q)))).collect();
    let n3: Vec<usize> = [2, 3].iter().map(|&q| star_count(RingModel::semigroup_ring(&sgp(&[3, 5, 7]), &field(q)))).collect();
    report(
        4,
        got == 4,
        format!("⟨3,4,5⟩ q=2: {got}, expected 4; ⟨3,4,5⟩ q=3,4: {other_q:?}; ⟨3,5,7⟩ q=2,3: {n3:?}"),
        start,
    );
}

#[test]
fn criterion_05_lower_bound_certificate() {
    let start = Instant::now();
    let c = lower_bound_certificate(5, &field(2), &Budget::default()).unwrap();
    report(
        5,
        c.valid() && c.certified_exponent >= 7 && c.formula_bound == "128",
        format!(
            "n=5 q=2: {} pairwise non-absorbing representatives, certified >= 2^{} = {}",
            c.representatives.len(),
            c.certified_exponent,
            c.certified_bound
        ),
        start,
    );
}

#[test]
fn criterion_06_subspace_lab() {
    let start = Instant::now();
    let a = SubspaceLab::new(4, &field(2), &Budget::default()).unwrap();
    let b = SubspaceLab::new(4, &field(3), &Budget::default()).unwrap();
    let got = [(a.x_count(), a.class_count()), (b.x_count(), b.class_count())];
    let single = a.checks().three_dim_single_orbit == Some(true) && b.checks().three_dim_single_orbit == Some(true);
    report(
        6,
        got == [(6, 4), (12, 6)] && single && a.checks().all() && b.checks().all(),
        format!("(|X|, classes) at q=2,3: {got:?}; W(θ1,θ2) single orbit: {single}"),
        start,
    );
}

#[test]
fn criterion_07_stari_family() {
    let start = Instant::now();
    let mut ok = true;
    let mut detail = Vec::new();
    for q in [2, 3] {
        let r = RingModel::semigroup_ring(&sgp(&[4, 5, 7]), &field(q));
        let t = StarEngine::new(r.build_t().unwrap(), &Budget::default()).unwrap();
        let fam = build_stari_family(&r, &t, &Budget::default()).unwrap();
        let c = &fam.checks;
        ok &= fam.ops.len() == q as usize + 1
            && c.pairwise_distinct
            && c.none_close_r_colon_m
            && c.r_colon_m_vt_is_t_colon_mt
            && c.axioms
            && c.closes_own
            && c.not_closing_others;
        detail.push(format!(
            "q={q}: {} operations, distinct {}, none close (R:M_R) {}, (R:M_R)^v_T = (T:M_T) {}",
            fam.ops.len(),
            c.pairwise_distinct,
            c.none_close_r_colon_m,
            c.r_colon_m_vt_is_t_colon_mt
        ));
    }
    report(7, ok, detail.join("; "), start);
}

#[test]
fn criterion_08_psi() {
    let start = Instant::now();
    let e = kunz::enumerate_both(&sgp(&[4, 5, 7]), &field(2), &RunContext::default()).unwrap();
    let images = kunz::psi_images(&e.r, &e.r_stars, &e.t).unwrap();
    let r = kunz::psi_report(&images, e.r_stars.len(), &e.t_stars);
    report(
        8,
        r.all_verified(),
        format!(
            "q=2: {} images of {} operations, |Star(R)| = {} <= |Star(T)| + 2 = {}",
            r.results["psi_image"],
            images.len(),
            e.r_stars.len(),
            e.t_stars.len() + 2
        ),
        start,
    );
}

#[test]
fn criterion_09_property_suites() {
    let start = Instant::now();
    let mut violations = Vec::new();
    for n in [4, 5] {
        for q in [2, 3] {
            let s = NumericalSemigroup::kunz_family(n).unwrap();
            let r = kunz::lemmas(&s, &field(q), &RunContext::default()).unwrap();
            for (k, v) in &r.verdicts {
                let required = n == 4 || !k.starts_with("stars");
                if required && *v != Verdict::Verified {
                    violations.push(format!("n={n} q={q} {k}: {}", v.as_str()));
                }
            }
            if n == 4 && r.verdicts.get("stars.closed_family_trichotomy") != Some(&Verdict::Verified) {
                violations.push(format!("n=4 q={q}: trichotomy not checked"));
            }
        }
    }
    let small: Vec<String> = NumericalSemigroup::all_up_to_frobenius(6)
        .into_iter()
        .filter(|s| s.is_pseudo_symmetric() && s.genus() <= 3)
        .map(|s| s.to_string())
        .collect();
    if small != ["⟨3,4,5⟩", "⟨3,5,7⟩"] {
        violations.push(format!("pseudo-symmetric with <= 3 gaps: {small:?}"));
    }
    report(9, violations.is_empty(), format!("{} violations {violations:?}", violations.len()), start);
}

fn cli(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_starlab")).args(args).env_remove("STARLAB_CACHE_DIR").output().unwrap();
    (out.status.code().unwrap_or(-1), out.stdout)
}

#[test]
fn criterion_10_determinism() {
    let start = Instant::now();
    let commands: [&[&str]; 13] = [
        &["ring", "enum-stars", "--gens", "4,5,7", "--q", "2"],
        &["ring", "enum-stars", "--gens", "4,5,7", "--q", "3"],
        &["ring", "enum-stars", "--gens", "4,5,7", "--q", "4"],
        &["ring", "enum-stars", "--gens", "4,5,6,7", "--q", "2"],
        &["ring", "enum-stars", "--gens", "4,5,6,7", "--q", "3"],
        &["kunz", "counterexample", "--gens", "4,5,7", "--q", "2"],
        &["kunz", "counterexample", "--gens", "4,5,7", "--q", "3"],
        &["kunz", "counterexample", "--gens", "4,5,7", "--q", "4"],
        &["ring", "enum-stars", "--gens", "3,4,5", "--q", "2"],
        &["kunz", "lower-bound", "--n", "5", "--q", "2"],
        &["kunz", "subspace-orbits", "--n", "4", "--q", "2"],
        &["kunz", "subspace-orbits", "--n", "4", "--q", "3"],
        &["kunz", "formula-check", "--gens", "4,5,7", "--q", "2"],
    ];
    let mut mismatches = Vec::new();
    for cmd in commands {
        let runs: Vec<(i32, Vec<u8>)> = ["1", "2", "8", "1"]
            .iter()
            .map(|j| {
                let mut args = cmd.to_vec();
                args.extend(["--jobs", j]);
                cli(&args)
            })
            .collect();
        if runs[0].1.is_empty() || runs.iter().any(|r| r != &runs[0]) {
            mismatches.push(cmd.join(" "));
        }
    }
    report(
        10,
        mismatches.is_empty(),
        format!("{} commands x jobs 1,2,8,1; differing: {mismatches:?}", commands.len()),
        start,
    );
}
