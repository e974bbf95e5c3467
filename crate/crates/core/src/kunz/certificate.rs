use serde::Serialize;

use super::lab::SubspaceLab;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::fq::{subspace_count, Elem, Field};
use crate::numsgp::NumericalSemigroup;
use crate::ring::{enumerate_ideals, RingIdeal, RingModel};

/// A family `Y` of nondivisorial `T`-stable ideals of which no member lies in a unit
/// multiple of another. Every subset of `Y` then generates a different star operation,
/// so `|Star(R)| >= 2^|Y|`.
#[derive(Clone, Debug, Serialize)]
pub struct LowerBoundCertificate {
    pub n: usize,
    pub q: usize,
    pub semigroup: Vec<u32>,
    /// Each representative as its basis of `I / C`, written as series.
    pub representatives: Vec<String>,
    pub representative_rows: Vec<Vec<Vec<Elem>>>,
    pub units_checked: usize,
    /// `(a, b)` such that `u Y_a ⊆ Y_b` for some unit `u`; must be empty.
    pub absorbing_pairs: Vec<(usize, usize)>,
    pub all_t_stable: bool,
    pub all_nondivisorial: bool,
    pub certified_exponent: usize,
    pub formula_exponent: usize,
    /// `2^certified_exponent` in decimal.
    pub certified_bound: String,
    /// `2^formula_exponent` in decimal.
    pub formula_bound: String,
    /// `q^{n-3}`, the weaker closed-form exponent.
    pub weak_exponent: usize,
    /// `T`-stable members of `F_0`, when the lattice fits in the budget.
    pub t_stable_count: Option<usize>,
    pub subspace_count: String,
}

impl LowerBoundCertificate {
    pub fn valid(&self) -> bool {
        self.absorbing_pairs.is_empty()
            && self.all_t_stable
            && self.all_nondivisorial
            && self.certified_exponent >= self.formula_exponent
            && self.formula_exponent >= self.weak_exponent
            && self.representatives.len() == self.certified_exponent
    }

    pub fn bijection_holds(&self) -> Option<bool> {
        self.t_stable_count.map(|c| c.to_string() == self.subspace_count)
    }
}

/// `2^k` in decimal.
fn pow2_decimal(k: usize) -> String {
    let mut digits = vec![1u8];
    for _ in 0..k {
        let mut carry = 0;
        for d in digits.iter_mut() {
            let v = *d * 2 + carry;
            *d = v % 10;
            carry = v / 10;
        }
        if carry > 0 {
            digits.push(carry);
        }
    }
    digits.iter().rev().map(|d| char::from(b'0' + d)).collect()
}

pub fn lower_bound_certificate(n: u32, field: &Field, budget: &Budget) -> Result<LowerBoundCertificate> {
    let s = NumericalSemigroup::kunz_family(n)?;
    if s.genus() < 4 {
        return Err(Error::Gate(format!("{s} has only {} gaps; at least 4 required", s.genus())));
    }
    let n = n as usize;
    let q = field.order();
    let lab = SubspaceLab::new(n, field, budget)?;
    let r = RingModel::semigroup_ring(&s, field);
    let d = r.dim();
    let lift = |row: &[Elem]| {
        let mut v = row.to_vec();
        v.resize(d, 0);
        v
    };
    let tail: Vec<Vec<Elem>> = (n..d)
        .map(|k| {
            let mut v = vec![0; d];
            v[k] = 1;
            v
        })
        .collect();
    let mut ideals: Vec<RingIdeal> = Vec::new();
    for &rep in &lab.reps {
        let w = &lab.x[rep];
        let mut gens: Vec<Vec<Elem>> = w.rows().map(lift).collect();
        gens.extend(tail.iter().cloned());
        ideals.push(r.generate(&gens)?);
    }
    let t = r.t_ideal();
    let all_t_stable = ideals.iter().all(|i| &r.product(i, &t) == i && r.is_subset(&t, i));
    let all_nondivisorial = ideals.iter().all(|i| !r.is_divisorial(i) && !i.values().contains(&(n as u32 - 1)));
    let units = r.unit_reps(budget)?;
    let f = r.field();
    let mut absorbing_pairs = Vec::new();
    for (a, ia) in ideals.iter().enumerate() {
        budget.check_time()?;
        for (b, ib) in ideals.iter().enumerate() {
            if a != b && units.iter().any(|u| ib.space().contains(f, r.mul_unit(u, ia).expect("unit").space())) {
                absorbing_pairs.push((a, b));
            }
        }
    }
    let t_stable_count = match enumerate_ideals(&r, budget) {
        Ok(lat) => Some(lat.ideals().iter().filter(|i| &r.product(i, &t) == *i).count()),
        Err(e) if e.is_budget() => None,
        Err(e) => return Err(e),
    };
    let certified_exponent = ideals.len();
    Ok(LowerBoundCertificate {
        n,
        q,
        semigroup: s.generators().to_vec(),
        representatives: ideals.iter().map(|i| r.format_ideal(i)).collect(),
        representative_rows: ideals.iter().map(|i| i.space().rows().map(|x| x.to_vec()).collect()).collect(),
        units_checked: units.len(),
        absorbing_pairs,
        all_t_stable,
        all_nondivisorial,
        certified_exponent,
        formula_exponent: lab.reps_formula(),
        certified_bound: pow2_decimal(certified_exponent),
        formula_bound: pow2_decimal(lab.reps_formula()),
        weak_exponent: q.pow(n as u32 - 3),
        t_stable_count,
        subspace_count: subspace_count(n as u32 - 1, q as u64).to_string(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decimal_powers() {
        assert_eq!(pow2_decimal(0), "1");
        assert_eq!(pow2_decimal(7), "128");
        assert_eq!(pow2_decimal(70), "1180591620717411303424");
    }

    #[test]
    fn n5_q2() {
        let c = lower_bound_certificate(5, &Field::with_order(2).unwrap(), &Budget::default()).unwrap();
        assert!(c.valid(), "{c:?}");
        assert_eq!(c.formula_exponent, 7);
        assert!(c.certified_exponent >= 7);
        assert_eq!(c.bijection_holds(), Some(true));
    }

    #[test]
    fn n4_q2() {
        let c = lower_bound_certificate(4, &Field::with_order(2).unwrap(), &Budget::default()).unwrap();
        assert!(c.valid());
        assert_eq!(c.certified_exponent, 4);
        assert_eq!(c.formula_exponent, 3);
        assert_eq!(c.t_stable_count, Some(16));
    }

    #[test]
    fn small_family_is_gated() {
        assert!(matches!(lower_bound_certificate(3, &Field::with_order(2).unwrap(), &Budget::default()), Err(Error::Gate(_))));
    }
}
